"""Factor even permutations into at most three elements of prime order p,
and compute exact p-widths of small alternating groups."""

from .engine import (ClassifiedCycles, Factorization, certificate_from_json, classify,
                     count_free_letters, decompose, verify_certificate)
from .perm import (CycleDecomposition, Permutation, PermError, compose, cycle_type,
                   format_cycles, from_cycles, is_op_element, parse_cycles, to_cycles)

__version__ = "0.1.0"

__all__ = [
    "ClassifiedCycles", "CycleDecomposition", "Factorization", "PermError", "Permutation",
    "certificate_from_json", "classify", "compose", "count_free_letters", "cycle_type",
    "decompose", "format_cycles", "from_cycles", "is_op_element", "parse_cycles",
    "to_cycles", "verify_certificate",
]
