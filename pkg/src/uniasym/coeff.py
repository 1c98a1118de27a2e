"""Coefficients of the uniform expansion.

Away from coalescence each coefficient is the difference of a saddle part and
a pole part,

    d_2k = f(eps) C_2k / (kappa (alpha - eps))  -/+  (-1)^k f(alpha) / p^(2k+1),

where the normalised saddle coefficients C_2k come from partial ordinary Bell
polynomials of the phase series (Wojdylo's formula).  Both parts grow like
p^-(2k+1) as the pole approaches the saddle while their difference stays
bounded, so coefficient evaluation escalates to extended precision whenever
that cancellation would eat into the working digits.

At exact coalescence the limit is taken analytically through the delta-series
of the pole part (:func:`coalescence_D`).  :func:`explicit_C` and
:func:`explicit_D` evaluate the printed closed forms for the first few
coefficients and exist to cross-check the generic routes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import RegimeError
from .phase import (
    DEFAULT_COALESCENCE_THRESHOLD,
    Params,
    Regime,
    f_series,
    f_value,
    fhat_series,
    geometry,
    psi_series,
    ratios,
)
from .scalar import WORKING, Context, ExtendedContext, default_digits, extended, pochhammer
from .taylor import TaylorSeries, ts_pow

K_MAX = 6
DEFAULT_K = 5
ESCALATION_DELTA = Fraction(1, 10)
# digits the working path may lose to cancellation before escalating
WORKING_LOSS_BUDGET = 3


@dataclass(frozen=True)
class BellTable:
    """Partial ordinary Bell polynomials B[k][j], 0 <= j <= k <= K."""

    entries: tuple
    alpha_hat: tuple

    def __getitem__(self, k):
        return self.entries[k]

    @property
    def K(self) -> int:
        return len(self.entries) - 1


def bell_table(alpha_hat: Sequence, K: int) -> BellTable:
    """Fill B[k][j] = sum_{r=1}^{k-j+1} ahat_r B[k-r][j-1], B[k][0] = [k == 0].

    ``alpha_hat`` lists ahat_1, ahat_2, ... (so ``alpha_hat[0]`` is ahat_1).
    """
    if len(alpha_hat) < K:
        raise ValueError(f"need at least {K} phase coefficients, got {len(alpha_hat)}")
    seq = list(alpha_hat)
    zero = seq[0] * 0 if seq else 0
    one = zero + 1
    B = [[zero] * (K + 1) for _ in range(K + 1)]
    B[0][0] = one
    for k in range(1, K + 1):
        for j in range(1, k + 1):
            acc = zero
            for r in range(1, k - j + 2):
                acc = acc + seq[r - 1] * B[k - r][j - 1]
            B[k][j] = acc
    return BellTable(tuple(tuple(row) for row in B), tuple(seq))


def wojdylo_from_series(alpha_hat: Sequence, beta_hat: Sequence, K: int) -> list:
    """Normalised coefficients C_0..C_2K from phase and amplitude series.

    alpha_hat[r] multiplies (t - t_s)^(r+2) in psi(t) - psi(t_s);
    beta_hat[r] multiplies (t - t_s)^r in the amplitude.

        C_2k = a0^-k sum_{s=0}^{2k} (b_{2k-s}/b_0)
                   sum_{j=0}^{s} (-1)^j (k + 1/2)_j / (j! a0^j) B[s][j]
    """
    a0 = alpha_hat[0]
    bell = bell_table(list(alpha_hat[1 : 2 * K + 1]), 2 * K)
    b0 = beta_hat[0]
    half = a0 * 0 + Fraction(1, 2) if isinstance(a0, Fraction) else a0 * 0 + 0.5
    out = []
    for k in range(K + 1):
        total = a0 * 0
        for s in range(2 * k + 1):
            inner = a0 * 0
            fact = 1
            for j in range(s + 1):
                if j > 0:
                    fact *= j
                term = pochhammer(half + k, j) / (fact * a0**j) * bell[s][j]
                inner = inner + (term if j % 2 == 0 else -term)
            total = total + beta_hat[2 * k - s] / b0 * inner
        out.append(total / a0**k)
    return out


def _phase_hat(params: Params, K: int, ctx: Context) -> list:
    """ahat_r = psi^(r+2)(eps)/(r+2)! for r = 0..2K."""
    ps = psi_series(ctx.real(params.eps), 2 * K + 2, params.eps, ctx)
    return list(ps.coeffs[2:])


def _require_off_coalescence(params: Params, who: str) -> None:
    if params.delta == 0:
        raise RegimeError(f"{who} is singular at coalescence (eps*x = 1); use coalescence_D")


def wojdylo_C(params: Params, K: int = DEFAULT_K, ctx: Context = WORKING) -> list:
    """C_0..C_2K for the amplitude f(t)/(t - alpha) at the saddle."""
    _require_off_coalescence(params, "wojdylo_C")
    beta = fhat_series(ctx.real(params.eps), 2 * K, params, ctx)
    return wojdylo_from_series(_phase_hat(params, K, ctx), beta.coeffs, K)


def explicit_C_from_ratios(psi2, Psi: dict, Fhat: Sequence) -> tuple:
    """Closed forms for C_2 and C_4.

    ``Psi[k] = psi^(k)/psi''`` for k = 3..6 and ``Fhat[k-1]`` is the k-th
    logarithmic-style ratio fhat^(k)/fhat for k = 1..4.
    """
    P3, P4, P5, P6 = Psi[3], Psi[4], Psi[5], Psi[6]
    F1, F2, F3, F4 = Fhat[0], Fhat[1], Fhat[2], Fhat[3]
    c2 = (F2 - P3 * F1 + P3**2 * 5 / 12 - P4 / 4) / psi2
    c4 = (
        F4 / 6
        - P3 * F3 * 5 / 9
        + (P3**2 * 7 / 3 - P4) * F2 * 5 / 12
        - (P3**3 - P3 * P4 + P5 * 6 / 35) * F1 * 35 / 36
        + (P3**4 * 11 / 24 - (P3**2 - P4 / 6) * P4 * 3 / 4 + P3 * P5 / 5 - P6 / 35) * 35 / 36
    ) / psi2**2
    return c2, c4


def _psi_ratios(params: Params, kmax: int, ctx: Context):
    ps = psi_series(ctx.real(params.eps), kmax, params.eps, ctx)
    psi2 = ps.derivative(2)
    return psi2, {k: ps.derivative(k) / psi2 for k in range(3, kmax + 1)}


def explicit_C(params: Params, ctx: Context = WORKING) -> tuple:
    """(C_2, C_4) from the explicit formulas; cross-check for :func:`wojdylo_C`."""
    _require_off_coalescence(params, "explicit_C")
    psi2, Psi = _psi_ratios(params, 6, ctx)
    Fhat = ratios(fhat_series(ctx.real(params.eps), 4, params, ctx), 4)
    return explicit_C_from_ratios(psi2, Psi, Fhat)


def cancellation_digits(params: Params, K: int) -> float:
    """Estimated decimal digits lost forming d_2K as saddle part minus pole part."""
    if params.delta == 0:
        return math.inf
    geom = geometry(params, ctx=WORKING)
    eps, alpha = float(params.eps), float(params.alpha)
    p = float(geom.p)
    if p <= 0.0:
        p = float(geom.kappa) * abs(float(params.delta))
    pole = abs(f_value(alpha, params)) / p ** (2 * K + 1)
    scale = abs(f_value(eps, params)) / float(geom.kappa)
    return max(0.0, math.log10(pole / scale))


def coefficient_context(params: Params, K: int, target: Context = WORKING) -> Context:
    """Context in which to form the d_2k so that ``target`` digits survive."""
    loss = cancellation_digits(params, K)
    if isinstance(target, ExtendedContext):
        if loss <= 0:
            return target
        return extended(target.digits + math.ceil(loss) + 5)
    if abs(params.delta) >= ESCALATION_DELTA and loss <= WORKING_LOSS_BUDGET:
        return target
    return extended(max(default_digits(), target.digits + math.ceil(loss) + 10))


@dataclass(frozen=True)
class CoefficientSet:
    """The d_2k and their constituents for one instance."""

    K: int
    C: tuple
    b: tuple
    d: tuple
    d_minus1: object  # amplitude at the pole, f(alpha)
    saddle_scale: object  # f(eps) / (kappa (alpha - eps)), i.e. c_0
    regime: Regime
    digits: int  # precision the constituents were formed at


def pole_coefficients(amp_pole, p, sign: int, K: int) -> list:
    """b_2k = sign * (-1)^k amp_pole / p^(2k+1)."""
    out = []
    power = p
    for k in range(K + 1):
        term = amp_pole / power
        out.append(sign * term if k % 2 == 0 else -sign * term)
        power = power * p * p
    return out


def b_coeff(params: Params, K: int = DEFAULT_K, ctx: Context = WORKING,
            threshold=DEFAULT_COALESCENCE_THRESHOLD) -> list:
    _require_off_coalescence(params, "b_coeff")
    geom = geometry(params, threshold, ctx)
    sign = 1 if params.delta > 0 else -1
    return pole_coefficients(f_value(geom.alpha, params, ctx), geom.p, sign, K)


def combine_coefficients(amp_saddle, amp_pole, beta_hat: Sequence, params: Params,
                         K: int, ctx: Context) -> tuple:
    """(C, b, d, saddle_scale) for a generic amplitude g with g(eps), g(alpha) given."""
    geom = geometry(params, ctx=ctx)
    sign = 1 if params.delta > 0 else -1
    C = wojdylo_from_series(_phase_hat(params, K, ctx), beta_hat, K)
    b = pole_coefficients(amp_pole, geom.p, sign, K)
    scale = amp_saddle / (geom.kappa * geom.delta)
    d = [scale * C[k] - b[k] for k in range(K + 1)]
    return C, b, d, scale


def d_coeff(params: Params, K: int = DEFAULT_K, ctx: Context = WORKING,
            threshold=DEFAULT_COALESCENCE_THRESHOLD, work_ctx: Context | None = None) -> CoefficientSet:
    """d_0..d_2K off coalescence, formed at raised precision when needed.

    Results are rounded into ``ctx``; ``work_ctx`` overrides the automatic
    choice of working precision.
    """
    _require_off_coalescence(params, "d_coeff")
    regime = Regime.UPPER if params.delta > 0 else Regime.LOWER
    wctx = work_ctx or coefficient_context(params, K, ctx)
    eps = wctx.real(params.eps)
    beta = fhat_series(eps, 2 * K, params, wctx)
    amp_s = f_value(eps, params, wctx)
    amp_p = f_value(wctx.real(params.alpha), params, wctx)
    C, b, d, scale = combine_coefficients(amp_s, amp_p, beta.coeffs, params, K, wctx)
    conv = ctx.real
    return CoefficientSet(
        K=K,
        C=tuple(conv(v) for v in C),
        b=tuple(conv(v) for v in b),
        d=tuple(conv(v) for v in d),
        d_minus1=conv(amp_p),
        saddle_scale=conv(scale),
        regime=regime,
        digits=wctx.digits,
    )


@dataclass(frozen=True)
class CoalescenceCoefficients:
    K: int
    D: tuple
    d_at_coalescence: tuple


def coalescence_D_from_series(amp: TaylorSeries, phase: TaylorSeries, K: int, ctx: Context) -> list:
    """Script-D_0..D_2K from the amplitude and phase series about the saddle.

    The pole part behaves like (kappa delta)^-(2k+1) times
    {amp(eps+delta)/amp(eps)} / {1 + sum_r (2 psi^(r)/(r! psi'')) delta^(r-2)}^(k+1/2);
    its delta^(2k+1) coefficient, scaled by (2/psi'')^k, is Script-D_2k.
    """
    psi2 = phase.derivative(2)
    # phase coefficient r is psi^(r)/r!, so 2 psi^(r)/(r! psi'') = coeff[r]/coeff[2]
    bracket = TaylorSeries(phase.center, [phase[r] / phase[2] for r in range(2, phase.degree + 1)])
    num = amp / amp[0]
    out = []
    for k in range(K + 1):
        series = num * ts_pow(bracket, -(ctx.real(k) + ctx.real(Fraction(1, 2))), ctx)
        out.append((2 / psi2) ** k * series[2 * k + 1])
    return out


def coalescence_D(params: Params, K: int = DEFAULT_K, ctx: Context = WORKING,
                  work_ctx: Context | None = None) -> CoalescenceCoefficients:
    """Coalescence coefficients; depend on (eps, a, c) only, not on x.

    The series powers lose a few digits at binary64, so the default working
    context for ``ctx=WORKING`` is the extended one.
    """
    if work_ctx is None:
        work_ctx = extended(ctx.digits + 10) if isinstance(ctx, ExtendedContext) else extended()
    w = work_ctx
    eps = w.real(params.eps)
    degree = 2 * K + 1
    amp = f_series(eps, degree, params, w)
    phase = psi_series(eps, degree + 2, params.eps, w)
    D = coalescence_D_from_series(amp, phase, K, w)
    kappa = w.sqrt(1 / (2 * eps * (eps - 1)))
    scale = amp[0] / kappa
    return CoalescenceCoefficients(
        K, tuple(ctx.real(v) for v in D), tuple(ctx.real(-scale * v) for v in D)
    )


def explicit_D_from_ratios(psi2, Psi: dict, F: Sequence) -> tuple:
    """Closed forms for Script-D_0, D_2, D_4.

    ``Psi[k] = psi^(k)/psi''`` (k = 3..7), ``F[k-1] = f^(k)/f`` (k = 1..5).
    """
    P3, P4, P5, P6, P7 = Psi[3], Psi[4], Psi[5], Psi[6], Psi[7]
    F1, F2, F3, F4, F5 = F[0], F[1], F[2], F[3], F[4]
    D0 = F1 - P3 / 6
    D2 = (
        F3 / 3
        - F2 * P3 / 2
        + F1 * (P3**2 * 5 / 3 - P4) / 4
        - (P3**3 * 35 / 54 - P3 * P4 * 5 / 6 + P5 / 5) / 4
    ) / psi2
    D4 = (
        F5 / 30
        - F4 * P3 * 5 / 36
        + F3 * (P3**2 * 7 / 3 - P4) * 5 / 36
        + F2 * (-P3**3 * 35 / 6 + P3 * P4 * 35 / 6 - P5) / 12
        + F1 * (P3**4 * 385 / 24 - P3**2 * P4 * 105 / 4 + 7 * P3 * P5 + P4**2 * 35 / 8 - P6) / 36
        - (
            P3**5 * 1001 / 108
            - P3**3 * P4 * 385 / 18
            + P3 * (P4**2 + P3 * P5 * 4 / 5) * 35 / 4
            - (P4 * P5 + P3 * P6 * 2 / 3) * 7 / 3
            + P7 * 4 / 21
        ) / 48
    ) / psi2**2
    return D0, D2, D4


def explicit_D(params: Params, ctx: Context = WORKING) -> tuple:
    psi2, Psi = _psi_ratios(params, 7, ctx)
    F = ratios(f_series(ctx.real(params.eps), 5, params, ctx), 5)
    return explicit_D_from_ratios(psi2, Psi, F)
