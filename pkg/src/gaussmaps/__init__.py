"""Exact Gaussian-map coranks on complete-intersection canonical curves, and the
parameter-count arithmetic that consumes them."""

from .curves import CICurve, CIType, ci_types, make_ci_curve
from .exactlin import kernel_basis, matmul_mod, rank, relative_rank, rref
from .gaussmap import (
    CorankReport,
    FormulaInapplicableError,
    InstabilityError,
    corank_formula,
    corank_pair,
    corank_wedge,
)
from .gradedring import Form, GradedRing, hilbert_ci, ideal_piece
from .ledger import (
    LedgerEntry,
    classification_report,
    fano_bound,
    k3_hilbert_dim,
    mukai_bound,
    n_rg,
    zak_verdict,
)
from .verify import VerifyReport, run_checks

__all__ = [
    "CICurve", "CIType", "ci_types", "make_ci_curve",
    "kernel_basis", "matmul_mod", "rank", "relative_rank", "rref",
    "CorankReport", "FormulaInapplicableError", "InstabilityError",
    "corank_formula", "corank_pair", "corank_wedge",
    "Form", "GradedRing", "hilbert_ci", "ideal_piece",
    "LedgerEntry", "classification_report", "fano_bound", "k3_hilbert_dim",
    "mukai_bound", "n_rg", "zak_verdict",
    "VerifyReport", "run_checks",
]
