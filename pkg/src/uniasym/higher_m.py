"""F(a + eps*lam, m; c + lam; x) for integer m >= 2.

The primary route is the contiguous relation in the second numerator
parameter,

    F_{m+1} = A_m F_m + B_m F_{m-1},   F_0 = 1,

    A_m = -lam/(m(1-x)) {1 - eps x + (c - 2m + (m - a) x)/lam},
    B_m =  lam/(m(1-x)) {1 + (c - m)/lam},

seeded with the m = 1 expansion.  Each step subtracts quantities of size
O(lam), so the recurrence always runs in extended precision.

For m = 2 an independent route integrates by parts once: the amplitude f is
replaced by g = f' - lam psi' f (the derivative of e^{-lam psi} f with the
exponential stripped) and the same two-sign machinery is applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .coeff import DEFAULT_K, cancellation_digits, combine_coefficients
from .errors import DomainError, RegimeError
from .expansion import ExpansionResult, Method, _common_log, _relative, eval_F1, uniform_bracket
from .phase import (
    DEFAULT_COALESCENCE_THRESHOLD,
    Params,
    Regime,
    classify,
    f_logderiv,
    f_series,
    f_value,
    geometry,
    psi_deriv,
    psi_series,
)
from .scalar import WORKING, Context, ExtendedContext, LogScaled, default_digits, extended
from .taylor import TaylorSeries


@dataclass(frozen=True)
class RecurrenceCoeffs:
    A: object
    B: object
    m: int


def recurrence_AB(m: int, params: Params, ctx: Context = WORKING) -> RecurrenceCoeffs:
    if m < 1:
        raise DomainError(f"recurrence index m must be >= 1, got {m}")
    a, c, eps, lam, x = (ctx.real(v) for v in (params.a, params.c, params.eps, params.lam, params.x))
    scale = lam / (m * (1 - x))
    A = -scale * (1 - eps * x + (c - 2 * m + (m - a) * x) / lam)
    B = scale * (1 + (c - m) / lam)
    return RecurrenceCoeffs(A, B, m)


def recurrence_context(params: Params, ctx: Context) -> ExtendedContext:
    guard = math.ceil(math.log10(float(params.lam))) * params.m if params.lam > 1 else params.m
    base = max(default_digits(), ctx.digits)
    return extended(base + max(guard, 0))


def linear_form(m: int, params: Params, ctx: Context) -> tuple:
    """(P_m, Q_m) with F_m = P_m F_1 + Q_m, from iterating the recurrence."""
    P_prev, Q_prev = ctx.real(0), ctx.real(1)  # F_0 = 1
    P_cur, Q_cur = ctx.real(1), ctx.real(0)    # F_1
    for j in range(1, m):
        rc = recurrence_AB(j, params, ctx)
        P_prev, P_cur = P_cur, rc.A * P_cur + rc.B * P_prev
        Q_prev, Q_cur = Q_cur, rc.A * Q_cur + rc.B * Q_prev
    return P_cur, Q_cur


def eval_Fm(params: Params, K: int = DEFAULT_K, ctx: Context = WORKING, method: str = "auto",
            threshold=DEFAULT_COALESCENCE_THRESHOLD) -> ExpansionResult:
    """Evaluate for m = params.m by the recurrence seeded with the m = 1 expansion."""
    if params.m == 1:
        return eval_F1(params, K, method, ctx, threshold)
    wctx = recurrence_context(params, ctx)
    first = eval_F1(params.with_(m=1), K, method, wctx, threshold)
    F1 = first.value.to_real(wctx)
    F_prev, F_cur = wctx.real(1), F1
    for j in range(1, params.m):
        rc = recurrence_AB(j, params, wctx)
        F_prev, F_cur = F_cur, rc.A * F_cur + rc.B * F_prev
    P, _ = linear_form(params.m, params, wctx)
    value = LogScaled.from_real(F_cur, wctx)
    proxy = abs(P * F1) * first.last_term_magnitude / abs(F_cur) if F_cur != 0 else wctx.real(0)
    return ExpansionResult(
        value=LogScaled(ctx.real(value.log_magnitude), value.sign),
        regime=first.regime,
        method=Method.RECURRENCE,
        terms_used=first.terms_used,
        last_term_magnitude=ctx.real(proxy),
        extras={"seed_method": first.method.value, "digits": wctx.digits},
    )


def ibp_amplitude_series(params: Params, degree: int, ctx: Context) -> TaylorSeries:
    """Series of g = f' - lam psi' f about the saddle."""
    eps = ctx.real(params.eps)
    lam = ctx.real(params.lam)
    fs = f_series(eps, degree + 1, params, ctx)
    dpsi = psi_series(eps, degree + 1, params.eps, ctx).deriv()
    return fs.deriv() - dpsi * fs.truncate(degree) * lam


def ibp_amplitude(t, params: Params, ctx: Context):
    """g(t) = f(t) [f'/f(t) - lam psi'(t)]."""
    t = ctx.real(t)
    lam = ctx.real(params.lam)
    return f_value(t, params, ctx) * (f_logderiv(t, params, ctx) - lam * psi_deriv(1, t, params.eps, ctx))


def eval_F2_ibp(params: Params, K: int = DEFAULT_K, ctx: Context = WORKING,
                threshold=DEFAULT_COALESCENCE_THRESHOLD) -> ExpansionResult:
    """m = 2 through one integration by parts (cross-check for :func:`eval_Fm`)."""
    if params.delta == 0:
        raise RegimeError("integration-by-parts expansion is not available at coalescence")
    p2 = params.with_(m=2)
    regime = Regime.UPPER if params.delta > 0 else Regime.LOWER
    loss = cancellation_digits(p2, K) + math.log10(float(params.lam))
    w = extended(max(default_digits(), ctx.digits) + math.ceil(loss) + 10)

    eps = w.real(params.eps)
    alpha = w.real(params.alpha)
    g = ibp_amplitude_series(p2, 2 * K, w)
    t = TaylorSeries.variable(eps, 2 * K, w.real(1))
    ghat = g / (t - alpha)
    amp_p = ibp_amplitude(alpha, p2, w)
    _, _, B, _ = combine_coefficients(g[0], amp_p, ghat.coeffs, p2, K, w)

    geom = geometry(p2, threshold, w)
    lam = w.real(params.lam)
    y = w.sqrt(lam) * geom.p
    bracket, terms = uniform_bracket(amp_p, B, y, regime, lam, w)
    x = w.real(params.x)
    value = -bracket.scale_exp(_common_log(p2, w) - w.ln(2 * x * x))
    return ExpansionResult(
        value=LogScaled(ctx.real(value.log_magnitude), value.sign),
        regime=classify(params, threshold),
        method=Method.IBP,
        terms_used=K + 1,
        last_term_magnitude=ctx.real(_relative(terms[-1], bracket, w)),
        extras={"B": tuple(B)},
    )
