"""Realizing degree sequences by directed acyclic graphs."""

from .core import (
    Budget,
    DegreePair,
    DegreeSequence,
    InvalidSequence,
    Outcome,
    Realization,
    ResourceLimit,
    Verdict,
    necessary_checks,
    normalize,
    opposed_le,
    type_table,
)
from .exact import brute_force_oracle, solve_chain, solve_exact
from .fpt import FptConfig, detect_supertypes, solve_fpt, solve_high_potential, solve_low_potential
from .ilp import FillingSystem, solve_filling
from .potential import (
    PrefixState,
    check_ordering,
    min_potential,
    potential_ge,
    recurrence_step,
    step,
    well_connect,
)
from .reduction import (
    ThreePartitionInstance,
    extract_partition,
    reduce,
    verify,
    witness_from_partition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
