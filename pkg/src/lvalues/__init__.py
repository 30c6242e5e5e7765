from src.lvalues.audit import integrality_prediction, theorem_conditions_audit
from src.lvalues.birch import birch_sum_identity_check, lla_value
from src.lvalues.corrections import correction_factor, corrections
from src.lvalues.report import CurveContext, curve_context, ll_value

__all__ = [
    "CurveContext",
    "birch_sum_identity_check",
    "correction_factor",
    "corrections",
    "curve_context",
    "integrality_prediction",
    "ll_value",
    "lla_value",
    "theorem_conditions_audit",
]
