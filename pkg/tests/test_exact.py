import random

import pytest

from dagreal.core import Budget, DegreePair as P, ResourceLimit, Verdict, normalize, type_table
from dagreal.exact import (
    SearchState,
    TooLarge,
    brute_force_oracle,
    multiset_permutations,
    pruned_candidates,
    solve_chain,
    solve_exact,
)
from dagreal.io import random_instance
from dagreal.reduction import verify

from helpers import FIG2, all_multisets, fig3, random_balanced, seq_of


def test_fig2_realizable_with_18_arcs():
    out = solve_exact(normalize(FIG2))
    assert out.verdict is Verdict.REALIZABLE
    assert len(out.witness.arcs) == 18
    assert verify(normalize(FIG2), out.witness)


def test_parallel_arc_needed_is_unrealizable():
    assert solve_exact(seq_of([(0, 2), (2, 0)])).verdict is Verdict.UNREALIZABLE


def test_fig3_k2_realizable_and_oracle_agrees():
    s = normalize(fig3(2))
    assert solve_exact(s).verdict is Verdict.REALIZABLE
    assert brute_force_oracle(s, limit=10) is Verdict.REALIZABLE


def test_oracle_examples():
    assert brute_force_oracle(seq_of([(0, 1), (1, 0)])) is Verdict.REALIZABLE
    assert brute_force_oracle(seq_of([(1, 1)])) is Verdict.UNREALIZABLE
    assert brute_force_oracle(seq_of([(0, 1), (0, 1), (2, 0)])) is Verdict.REALIZABLE
    with pytest.raises(TooLarge):
        brute_force_oracle(normalize(FIG2))


def test_multiset_permutations_count():
    perms = list(multiset_permutations([P(0, 1), P(0, 1), P(1, 0)]))
    assert len(perms) == len(set(perms)) == 3


def test_chain_examples():
    out = solve_chain(seq_of([(2, 0), (0, 2), (1, 1)]))
    assert out.verdict is Verdict.REALIZABLE
    assert out.ordering == (P(0, 2), P(1, 1), P(2, 0))
    assert solve_chain(seq_of([(0, 1), (1, 2), (2, 1), (1, 0)])).verdict is Verdict.NOT_A_CHAIN
    assert solve_chain(seq_of([(0, 1), (1, 0)])).verdict is Verdict.REALIZABLE


def test_chain_agrees_with_exact():
    for pairs in all_multisets(5, 2):
        s = seq_of(pairs)
        out = solve_chain(s)
        if out.verdict is not Verdict.NOT_A_CHAIN:
            assert out.verdict is solve_exact(s).verdict, pairs


def test_pruned_candidates_examples():
    s = seq_of([(0, 2), (1, 1)])
    t = type_table(s)
    assert [t.pairs[i] for i in pruned_candidates(SearchState((1, 1), (1, 1)), t)] == [P(0, 2)]
    s = seq_of([(0, 1), (1, 2)])
    t = type_table(s)
    assert {t.pairs[i] for i in pruned_candidates(SearchState((1, 1), (1, 1)), t)} == {P(0, 1), P(1, 2)}
    t = type_table(seq_of([(1, 1), (1, 1)]))
    assert pruned_candidates(SearchState((2,), (1,)), t) == [0]


def test_pruning_does_not_change_decisions():
    for pairs in all_multisets(5, 2):
        s = seq_of(pairs)
        assert solve_exact(s).verdict is solve_exact(s, prune=False).verdict, pairs


def test_witnesses_verify():
    rng = random.Random(7)
    for _ in range(200):
        n, d = rng.randint(1, 10), rng.randint(1, 3)
        pairs = random_instance(n, d, rng.randrange(10**9), shuffle_degrees=rng.random() < 0.5)
        s = seq_of(pairs)
        out = solve_exact(s)
        if out.realizable:
            assert verify(s, out.witness)
            assert out.witness.n == len(pairs)


def test_budget_exhaustion_raises():
    s = seq_of(random_instance(30, 3, 1))
    with pytest.raises(ResourceLimit):
        solve_exact(s, budget=10)
    with pytest.raises(ResourceLimit):
        solve_chain(seq_of([(0, 1)] * 15 + [(1, 0)] * 15), Budget(10))


def test_threads_give_same_answer():
    for seed in range(3):
        s = seq_of(random_instance(9, 3, seed, shuffle_degrees=seed == 2))
        one = solve_exact(s)
        two = solve_exact(s, threads=2)
        assert one.verdict is two.verdict
        # first success in canonical branch order, so the same ordering
        assert one.ordering == two.ordering
