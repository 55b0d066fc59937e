"""Exact search and verification for set families with bounded matching number."""

from .family import (
    MAX_N, SetFamily, all_upsets, dumps_family, elements_of, full_shift, is_shifted,
    is_upward_closed, level_profile, loads_family, mask_of, read_family, shadow, shift,
    upward_closure, write_family,
)
from .gallery import ConstructionSpec, build, parse_spec, size_of, threshold_family, verify_construction
from .invariants import covering_number, has_D_property, matching_number
from .partition import Partition, tuple_stats
from .report import Check, Report
from .solver import Problem, SearchSpace, SolveResult, brute_force_oracle, solve_exact

__version__ = "0.1.0"

__all__ = [
    "MAX_N", "SetFamily", "all_upsets", "dumps_family", "elements_of", "full_shift", "is_shifted",
    "is_upward_closed", "level_profile", "loads_family", "mask_of", "read_family", "shadow", "shift",
    "upward_closure", "write_family", "ConstructionSpec", "build", "parse_spec", "size_of",
    "threshold_family", "verify_construction", "covering_number", "has_D_property",
    "matching_number", "Partition", "tuple_stats", "Check", "Report", "Problem", "SearchSpace",
    "SolveResult", "brute_force_oracle", "solve_exact",
]
