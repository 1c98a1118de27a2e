"""Assembly of F(a + eps*lam, 1; c + lam; x) from its uniform expansion.

Off coalescence (pole alpha = 1/x away from the saddle eps):

    F ~ G/(2x) { e^{-lam psi(alpha)} f(alpha) erfc(+-sqrt(lam) p)
                 + e^{-lam psi(eps)}/pi sum_k d_2k Gamma(k+1/2)/lam^(k+1/2) }

with the upper sign for eps*x < 1.  At coalescence the erfc term degenerates
and the coefficients are replaced by their limits.  Every value is built in
log space: G and the exponentials overflow binary64 long before the expansion
stops being useful.

The common factor G e^{-lam psi(eps)} is pulled out; since
psi(alpha) = psi(eps) - p^2, the upper-sign pole term becomes
f(alpha) erfcx(y) with y = sqrt(lam) p, and the lower-sign one
f(alpha) (2 e^{y^2} - erfcx(y)).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .coeff import DEFAULT_K, K_MAX, coalescence_D, d_coeff, explicit_D
from .errors import DomainError, RegimeError
from .phase import (
    DEFAULT_COALESCENCE_THRESHOLD,
    Params,
    Regime,
    classify,
    compute_logG,
    f_value,
    geometry,
    psi,
)
from .scalar import WORKING, Context, LogScaled, Real, pochhammer


class Method(enum.Enum):
    THEOREM1 = "theorem1"
    THEOREM2 = "theorem2"
    APPENDIX = "appendix"
    ORACLE = "oracle"
    RECURRENCE = "recurrence"
    IBP = "ibp"


@dataclass(frozen=True)
class ExpansionResult:
    """An evaluated function value.

    ``last_term_magnitude`` is the size of the final retained series term
    relative to |value|; it is an error proxy, not a bound.
    """

    value: LogScaled
    regime: Regime
    method: Method
    terms_used: int
    last_term_magnitude: Real
    extras: dict = field(default_factory=dict, compare=False)

    def to_real(self, ctx: Context | None = None):
        return self.value.to_real(ctx)

    def __float__(self):
        return float(self.value)


def _check_K(K: int, kmax: int = K_MAX) -> None:
    if not 0 <= K <= kmax:
        raise DomainError(f"truncation index K must be in 0..{kmax}, got {K}")


def _watson_terms(coeffs, lam, ctx: Context) -> list:
    """coeffs[k] Gamma(k+1/2) / (pi lam^(k+1/2)) = coeffs[k] (1/2)_k / (sqrt(pi) lam^(k+1/2))."""
    half = ctx.real(Fraction(1, 2))
    base = 1 / (ctx.sqrt(ctx.pi) * ctx.sqrt(lam))
    out = []
    for k, c in enumerate(coeffs):
        out.append(c * pochhammer(half, k, ctx) * base / lam**k)
    return out


def uniform_bracket(amp_pole, coeffs, y, regime: Regime, lam, ctx: Context):
    """Bracket of the two-sign expansion in units of G e^{-lam psi(eps)} times its prefactor.

    Returns (bracket, series_terms).
    """
    terms = _watson_terms(coeffs, lam, ctx)
    series = sum(terms[1:], terms[0])
    ex = ctx.erfcx(y)
    if regime is Regime.UPPER:
        bracket = LogScaled.from_real(amp_pole * ex + series, ctx)
    else:
        # erfc(-y) = 2 - erfc(y); the 2 e^{y^2} part may overflow binary64
        dominant = LogScaled.from_real(2 * amp_pole, ctx).scale_exp(y * y)
        bracket = dominant + LogScaled.from_real(series - amp_pole * ex, ctx)
    return bracket, terms


def _relative(term, bracket: LogScaled, ctx: Context):
    if term == 0 or bracket.is_zero():
        return ctx.real(0)
    return ctx.exp(ctx.ln(abs(term)) - bracket.log_magnitude)


def _common_log(params: Params, ctx: Context):
    """ln G - lam psi(eps)."""
    eps = ctx.real(params.eps)
    return compute_logG(params, ctx).log_magnitude - ctx.real(params.lam) * psi(eps, eps, ctx)


def eval_theorem1(params: Params, K: int = DEFAULT_K, ctx: Context = WORKING,
                  threshold=DEFAULT_COALESCENCE_THRESHOLD) -> ExpansionResult:
    """Two-sign uniform expansion truncated after the d_2K term."""
    _check_K(K)
    if params.delta == 0:
        raise RegimeError("theorem-1 expansion is singular at exact coalescence (eps*x = 1)")
    regime = Regime.UPPER if params.delta > 0 else Regime.LOWER
    geom = geometry(params, threshold, ctx)
    coeffs = d_coeff(params, K, ctx, threshold)
    lam = ctx.real(params.lam)
    y = ctx.sqrt(lam) * geom.p
    bracket, terms = uniform_bracket(coeffs.d_minus1, coeffs.d, y, regime, lam, ctx)
    x = ctx.real(params.x)
    log_pref = _common_log(params, ctx) - ctx.ln(2 * x)
    return ExpansionResult(
        value=bracket.scale_exp(log_pref),
        regime=classify(params, threshold),
        method=Method.THEOREM1,
        terms_used=K + 1,
        last_term_magnitude=_relative(terms[-1], bracket, ctx),
        extras={"coefficient_digits": coeffs.digits},
    )


def eval_theorem2(params: Params, K: int = DEFAULT_K, ctx: Context = WORKING,
                  source: str = "generic",
                  threshold=DEFAULT_COALESCENCE_THRESHOLD) -> ExpansionResult:
    """Expansion at coalescence, evaluated as if eps*x = 1 exactly.

    ``source="explicit"`` takes Script-D_0, D_2, D_4 from the closed forms
    (so K <= 2); ``"generic"`` uses the series route for any K <= K_MAX.
    """
    _check_K(K, 2 if source == "explicit" else K_MAX)
    if classify(params, threshold) is not Regime.COALESCENT:
        raise RegimeError(
            f"theorem-2 expansion needs |1/x - eps| <= {float(threshold):g}, "
            f"got {float(params.delta):g}"
        )
    if source == "explicit":
        D = explicit_D(params, ctx)[: K + 1]
    elif source == "generic":
        D = coalescence_D(params, K, ctx).D
    else:
        raise DomainError(f"unknown coefficient source {source!r}")
    eps = ctx.real(params.eps)
    lam = ctx.real(params.lam)
    psi2_abs = 1 / (eps * (eps - 1))
    half = ctx.real(Fraction(1, 2))
    scale = 2 / ctx.sqrt(2 * ctx.pi * psi2_abs)
    terms = [scale * D[k] * pochhammer(half, k, ctx) / (ctx.sqrt(lam) * lam**k) for k in range(K + 1)]
    bracket = LogScaled.from_real(1 - sum(terms[1:], terms[0]), ctx)
    x0 = 1 / eps
    log_pref = _common_log(params, ctx) - ctx.ln(2 * x0) + ctx.ln(f_value(eps, params, ctx))
    return ExpansionResult(
        value=bracket.scale_exp(log_pref),
        regime=Regime.COALESCENT,
        method=Method.THEOREM2,
        terms_used=K + 1,
        last_term_magnitude=_relative(terms[-1], bracket, ctx),
        extras={"source": source},
    )


def eval_appendix(params: Params, K: int = DEFAULT_K, ctx: Context = WORKING,
                  threshold=DEFAULT_COALESCENCE_THRESHOLD) -> ExpansionResult:
    """Regrouped form: modified Erfc on the pole term, C_2k on the saddle term.

    Erfc(+-y) = erfc(+-y) -+ e^{-y^2}/(sqrt(pi) y) sum_k (1/2)_k (-y^2)^-k,
    both sums truncated at the same K as the C_2k sum.
    """
    _check_K(K)
    if params.delta == 0:
        raise RegimeError("regrouped expansion is singular at exact coalescence (eps*x = 1)")
    regime = Regime.UPPER if params.delta > 0 else Regime.LOWER
    geom = geometry(params, threshold, ctx)
    coeffs = d_coeff(params, K, ctx, threshold)
    lam = ctx.real(params.lam)
    eps = ctx.real(params.eps)
    x = ctx.real(params.x)
    y = ctx.sqrt(lam) * geom.p
    half = ctx.real(Fraction(1, 2))
    sqrt_pi = ctx.sqrt(ctx.pi)

    # e^{y^2} times the subtracted asymptotic tail of erfc
    tail_terms = [pochhammer(half, k, ctx) / (-(y * y)) ** k / (sqrt_pi * y) for k in range(K + 1)]
    tail = sum(tail_terms[1:], tail_terms[0])
    amp_pole = coeffs.d_minus1 / (2 * x)
    ex = ctx.erfcx(y)

    psi2_abs = 1 / (eps * (eps - 1))
    saddle_amp = f_value(eps, params, ctx) / (x * ctx.real(params.delta) * ctx.sqrt(2 * ctx.pi * psi2_abs))
    saddle_terms = [saddle_amp * coeffs.C[k] * pochhammer(half, k, ctx) / (ctx.sqrt(lam) * lam**k)
                    for k in range(K + 1)]
    saddle = sum(saddle_terms[1:], saddle_terms[0])

    if regime is Regime.UPPER:
        bracket = LogScaled.from_real(amp_pole * (ex - tail) + saddle, ctx)
    else:
        dominant = LogScaled.from_real(2 * amp_pole, ctx).scale_exp(y * y)
        bracket = dominant + LogScaled.from_real(amp_pole * (tail - ex) + saddle, ctx)
    last = max(abs(amp_pole * tail_terms[-1]), abs(saddle_terms[-1]))
    return ExpansionResult(
        value=bracket.scale_exp(_common_log(params, ctx)),
        regime=classify(params, threshold),
        method=Method.APPENDIX,
        terms_used=K + 1,
        last_term_magnitude=_relative(last, bracket, ctx),
    )


def eval_F1(params: Params, K: int = DEFAULT_K, method: str | Method = "auto",
            ctx: Context = WORKING, threshold=DEFAULT_COALESCENCE_THRESHOLD) -> ExpansionResult:
    """Evaluate F(a + eps*lam, 1; c + lam; x), choosing the expansion by regime.

    ``method="auto"`` uses the coalescence expansion when |1/x - eps| is within
    ``threshold`` and the two-sign expansion otherwise.  Forcing a method
    validates that it applies.
    """
    if params.m != 1:
        raise DomainError(f"eval_F1 needs m = 1, got m = {params.m}; use eval_Fm")
    method = Method(method) if method != "auto" else "auto"
    regime = classify(params, threshold)
    if method == "auto":
        method = Method.THEOREM2 if regime is Regime.COALESCENT else Method.THEOREM1
    if method is Method.THEOREM1:
        return eval_theorem1(params, K, ctx, threshold)
    if method is Method.THEOREM2:
        return eval_theorem2(params, K, ctx, threshold=threshold)
    if method is Method.APPENDIX:
        return eval_appendix(params, K, ctx, threshold)
    if method is Method.ORACLE:
        return eval_oracle(params, ctx, threshold)
    raise DomainError(f"method {method.value!r} does not apply to m = 1")


def eval_oracle(params: Params, ctx: Context = WORKING,
                threshold=DEFAULT_COALESCENCE_THRESHOLD, cfg=None) -> ExpansionResult:
    """Series reference value wrapped as an :class:`ExpansionResult`."""
    from .oracle import reference_value

    ref = reference_value(params, cfg)
    lv = LogScaled.from_real(ref.value)
    return ExpansionResult(
        value=LogScaled(ctx.real(lv.log_magnitude), lv.sign),
        regime=classify(params, threshold),
        method=Method.ORACLE,
        terms_used=ref.terms,
        last_term_magnitude=ctx.real(ref.relative_bound),
        extras={"tail_bound": ref.tail_bound},
    )
