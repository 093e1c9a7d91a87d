"""Schubert-variety fiber bundle combinatorics in the symmetric group."""

from .bp import (
    BPReport, CompleteBP, bp_positions, complete_bp, complete_bp_with_order,
    has_complete_structure_by_pattern, is_bp_by_descent, is_bp_by_pattern,
    sigma_from_positions,
)
from .enumeration import (
    PUBLISHED_COUNTS, count_avoiders_pruned, count_avoiders_scan, series,
    sweep_theorem_main, sweep_theorem_main2,
)
from .parabolic import ParabolicDecomposition, parabolic_decompose
from .patterns import SplitPattern, contains_pattern, contains_split_at, parse_pattern
from .perm_core import Permutation, compose, identity, inverse

__version__ = "0.1.0"
