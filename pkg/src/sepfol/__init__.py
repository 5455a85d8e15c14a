"""Reasoning tools for the separated fragment of first-order logic."""
__version__ = "0.1.0"

from .analysis import FragmentLabel, are_separated, classify
from .bounds import (
    OVERFLOW, Bounds, compute_bounds, inner_skolemize, multi_block_constraints, range_restrict,
    range_restrict_open, skolemize_range_restricted, twoup,
)
from .decide import FingerprintTable, Sat, Unknown, Unsat, decide_sf, fingerprint_table
from .oracle import oracle_decide, oracle_equivalent
from .reductions import (
    ClauseSet, eliminate_equality_bounded, eliminate_equality_monadic, eliminate_unary_functions,
    recover_unary_functions, to_bsr_clauses,
)
from .semantics import Structure, enumerate_structures, evaluate
from .serialize import parse_structure, print_report, print_structure
from .syntax import Signature, extract_signature, formula_len, free_vars, rename_apart, substitute
from .tptp import Problem, parse_formula, parse_tptp, print_tptp
from .transform import (
    gen_blowup, matrix_to_nf, miniscope, to_nnf, to_prenex, transpose_all, transpose_block,
)

__all__ = [
    "Bounds", "ClauseSet", "FingerprintTable", "FragmentLabel", "OVERFLOW", "Problem", "Sat",
    "Signature", "Structure", "Unknown", "Unsat", "are_separated", "classify", "compute_bounds",
    "decide_sf", "eliminate_equality_bounded", "eliminate_equality_monadic",
    "eliminate_unary_functions", "enumerate_structures", "evaluate", "extract_signature",
    "fingerprint_table", "formula_len", "free_vars", "gen_blowup", "inner_skolemize",
    "matrix_to_nf", "miniscope", "multi_block_constraints", "oracle_decide", "oracle_equivalent",
    "parse_formula", "parse_structure", "parse_tptp", "print_report", "print_structure",
    "print_tptp", "range_restrict", "range_restrict_open", "recover_unary_functions",
    "rename_apart", "skolemize_range_restricted", "substitute", "to_bsr_clauses", "to_nnf",
    "to_prenex", "transpose_all", "transpose_block", "twoup",
]
