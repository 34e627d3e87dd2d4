"""Exact-arithmetic Calabi-Yau analysis of Hecke-type Nichols algebras."""

from .braiding import (
    Braiding,
    diagonal_braiding,
    dual_braiding_operator,
    operator_on_V2,
    rigidity_check,
    validate_braid_equation,
    verify_label,
)
from .cy import CYResult, cy_result
from .errors import AnalysisError
from .frt import action_matrices, homological_matrix, quantum_label
from .nichols import (
    GradedProfile,
    as_regularity_check,
    build_quadratic,
    default_cap,
    graded_profile,
    hilbert_identity,
    koszul_check,
)
from .oracle import (
    build_dual_tables,
    frobenius_form,
    nakayama_bruteforce,
    nakayama_formula_deg1,
)
from .report import (
    AnalysisReport,
    InputSpec,
    analyze,
    builtin,
    emit_report,
    parse_input,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisError",
    "AnalysisReport",
    "Braiding",
    "CYResult",
    "GradedProfile",
    "InputSpec",
    "action_matrices",
    "analyze",
    "as_regularity_check",
    "build_dual_tables",
    "build_quadratic",
    "builtin",
    "cy_result",
    "default_cap",
    "diagonal_braiding",
    "dual_braiding_operator",
    "emit_report",
    "frobenius_form",
    "graded_profile",
    "hilbert_identity",
    "homological_matrix",
    "koszul_check",
    "nakayama_bruteforce",
    "nakayama_formula_deg1",
    "operator_on_V2",
    "parse_input",
    "quantum_label",
    "rigidity_check",
    "validate_braid_equation",
    "verify_label",
    "__version__",
]
