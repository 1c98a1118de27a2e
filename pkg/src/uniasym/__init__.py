"""Uniform large-lambda asymptotics of F(a + eps*lam, m; c + lam; x), eps > 1, 0 < x < 1."""

from .coeff import (
    CoalescenceCoefficients,
    CoefficientSet,
    bell_table,
    coalescence_D,
    d_coeff,
    explicit_C,
    explicit_D,
    wojdylo_C,
)
from .errors import BranchCutError, DomainError, NonConvergenceError, RegimeError, UniasymError
from .expansion import ExpansionResult, Method, eval_appendix, eval_F1, eval_oracle, eval_theorem1, eval_theorem2
from .higher_m import eval_F2_ibp, eval_Fm, recurrence_AB
from .oracle import PrecisionConfig, reference_F, reference_value
from .phase import Params, Regime, classify, compute_logG, geometry
from .scalar import WORKING, LogScaled, erfc, erfcx, extended, lgamma, pochhammer
from .taylor import TaylorSeries

__version__ = "0.1.0"

__all__ = [
    "BranchCutError", "CoalescenceCoefficients", "CoefficientSet", "DomainError", "ExpansionResult",
    "LogScaled", "Method", "NonConvergenceError", "Params", "PrecisionConfig", "Regime", "RegimeError",
    "TaylorSeries", "UniasymError", "WORKING", "bell_table", "classify", "coalescence_D", "compute_logG",
    "d_coeff", "erfc", "erfcx", "eval_F1", "eval_F2_ibp", "eval_Fm", "eval_appendix", "eval_oracle",
    "eval_theorem1", "eval_theorem2", "explicit_C", "explicit_D", "extended", "geometry", "lgamma",
    "pochhammer", "recurrence_AB", "reference_F", "reference_value", "wojdylo_C",
]
