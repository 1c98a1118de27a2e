"""Problem instance and the saddle/pole geometry of the phase function.

The target is F(a + eps*lam, m; c + lam; x) with eps > 1, 0 < x < 1.  Its
loop-integral representation has phase

    psi(t) = (eps - 1) ln(t - 1) - eps ln(t),

amplitude f(t) = t^(a-1) (t - 1)^(c-a-1), a saddle at t = eps and a simple
pole at t = alpha = 1/x.  Everything here is real: the conformal map of the
steepest-descent path is never built, only its real closed-form consequences
are used downstream.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BranchCutError, DomainError
from .scalar import WORKING, Context, LogScaled, Real, to_fraction
from .taylor import TaylorSeries, ts_pow

DEFAULT_COALESCENCE_THRESHOLD = Fraction(1, 10**8)


class Regime(enum.Enum):
    UPPER = "upper"          # alpha > eps, eps*x < 1
    LOWER = "lower"          # alpha < eps, eps*x > 1
    COALESCENT = "coalescent"

    @property
    def sign(self) -> int:
        """+1 for the upper sign of the two-sign expansion, -1 for the lower."""
        if self is Regime.UPPER:
            return 1
        if self is Regime.LOWER:
            return -1
        return 0


@dataclass(frozen=True)
class Params:
    """One instance (a, c, eps, lam, x, m), stored as exact rationals.

    Accepts ints, floats, decimal strings or Fractions.  A float is taken at
    its exact binary value; pass a string to mean the decimal.
    """

    a: Fraction
    c: Fraction
    eps: Fraction
    lam: Fraction
    x: Fraction
    m: int = 1

    def __post_init__(self):
        for name in ("a", "c", "eps", "lam", "x"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        if isinstance(self.m, bool) or int(self.m) != self.m:
            raise DomainError(f"m must be a positive integer, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))
        self.validate()

    def validate(self) -> None:
        a, c, eps, lam, x, m = self.a, self.c, self.eps, self.lam, self.x, self.m
        if not eps > 1:
            raise DomainError(f"eps > 1 required, got eps={float(eps)}")
        if not 0 < x < 1:
            raise DomainError(f"0 < x < 1 required, got x={float(x)}")
        if not lam > 0:
            raise DomainError(f"lambda > 0 required, got lambda={float(lam)}")
        if m < 1:
            raise DomainError(f"m >= 1 required, got m={m}")
        if not 1 + a - c + (eps - 1) * lam > 0:
            raise DomainError("1 + a - c + (eps-1)*lambda > 0 required (gamma argument)")
        if not c + lam > 0:
            raise DomainError("c + lambda > 0 required (gamma argument)")
        if not a + eps * lam > 0:
            raise DomainError("a + eps*lambda > 0 required (gamma argument)")

    @property
    def alpha(self) -> Fraction:
        return 1 / self.x

    @property
    def delta(self) -> Fraction:
        """Exact signed distance alpha - eps from pole to saddle."""
        return 1 / self.x - self.eps

    def with_(self, **changes) -> Params:
        fields = dict(a=self.a, c=self.c, eps=self.eps, lam=self.lam, x=self.x, m=self.m)
        fields.update(changes)
        return Params(**fields)

    def as_dict(self) -> dict:
        return {
            "a": _fmt(self.a),
            "c": _fmt(self.c),
            "eps": _fmt(self.eps),
            "lambda": _fmt(self.lam),
            "x": _fmt(self.x),
            "m": self.m,
        }


def _fmt(q: Fraction) -> str:
    """Shortest exact decimal for q when one exists, else num/den."""
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{q.numerator}/{q.denominator}"
    places = max(twos, fives)
    if places == 0:
        return str(q.numerator)
    scaled = q * 10**places
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def psi(t, eps, ctx: Context = WORKING) -> Real:
    """psi(t) = (eps-1) ln(t-1) - eps ln t on the real branch t > 1."""
    t, eps = ctx.real(t), ctx.real(eps)
    if not t > 1:
        raise BranchCutError(f"psi is real only for t > 1 (branch cut along (-inf, 1]), got t={t}")
    return (eps - 1) * ctx.ln(t - 1) - eps * ctx.ln(t)


def psi_deriv(k: int, t, eps, ctx: Context = WORKING) -> Real:
    """k-th derivative of psi: (-1)^(k-1) (k-1)! [(eps-1)/(t-1)^k - eps/t^k]."""
    if k < 1:
        raise DomainError(f"psi_deriv needs k >= 1, got {k}")
    t, eps = ctx.real(t), ctx.real(eps)
    if not t > 1:
        raise BranchCutError(f"psi is real only for t > 1, got t={t}")
    fact = 1
    for i in range(2, k):
        fact *= i
    sign = 1 if k % 2 == 1 else -1
    return sign * fact * ((eps - 1) / (t - 1) ** k - eps / t**k)


def psi_series(center, degree: int, eps, ctx: Context = WORKING) -> TaylorSeries:
    """Taylor series of psi about ``center`` from the closed-form derivatives."""
    center = ctx.real(center)
    coeffs = [psi(center, eps, ctx)]
    for k in range(1, degree + 1):
        # psi^(k)/k! = (-1)^(k-1)/k [...]
        sign = 1 if k % 2 == 1 else -1
        e = ctx.real(eps)
        coeffs.append(sign * ((e - 1) / (center - 1) ** k - e / center**k) / k)
    return TaylorSeries(center, coeffs)


def f_value(t, params: Params, ctx: Context = WORKING) -> Real:
    """f(t) = t^(a-1) (t-1)^(c-a-1)."""
    t = ctx.real(t)
    if not t > 1:
        raise BranchCutError(f"f is real only for t > 1, got t={t}")
    a, c = ctx.real(params.a), ctx.real(params.c)
    return ctx.exp((a - 1) * ctx.ln(t) + (c - a - 1) * ctx.ln(t - 1))


def f_logderiv(t, params: Params, ctx: Context = WORKING) -> Real:
    """f'(t)/f(t) = (a-1)/t + (c-a-1)/(t-1)."""
    t = ctx.real(t)
    a, c = ctx.real(params.a), ctx.real(params.c)
    return (a - 1) / t + (c - a - 1) / (t - 1)


def f_series(center, degree: int, params: Params, ctx: Context = WORKING) -> TaylorSeries:
    """Taylor series of f about ``center`` (> 1)."""
    center = ctx.real(center)
    if not center > 1:
        raise BranchCutError(f"f has a branch cut along (-inf, 1]; centre {center} is on it")
    a, c = ctx.real(params.a), ctx.real(params.c)
    t = TaylorSeries.variable(center, degree, ctx.real(1))
    return ts_pow(t, a - 1, ctx) * ts_pow(t - 1, c - a - 1, ctx)


def fhat_series(center, degree: int, params: Params, ctx: Context = WORKING) -> TaylorSeries:
    """Taylor series of f(t)/(t - alpha) about ``center``."""
    alpha = ctx.real(params.alpha)
    center_r = ctx.real(center)
    if center_r == alpha:
        raise DomainError("f/(t - alpha) has its pole at the expansion centre")
    t = TaylorSeries.variable(center_r, degree, ctx.real(1))
    return f_series(center_r, degree, params, ctx) / (t - alpha)


def ratios(series: TaylorSeries, kmax: int) -> list:
    """[g^(k)(c)/g(c) for k = 1..kmax] read off a Taylor series."""
    g0 = series.coeffs[0]
    return [series.derivative(k) / g0 for k in range(1, kmax + 1)]


@dataclass(frozen=True)
class PhaseGeometry:
    t_s: Real
    alpha: Real
    delta: Real
    psi_saddle: Real
    psi_pole: Real
    p: Real
    kappa: Real
    regime: Regime
    delta_exact: Fraction = field(repr=False, default=Fraction(0))

    @property
    def psi2(self) -> Real:
        """psi''(eps) = -1/(eps (eps - 1))."""
        return -2 * self.kappa * self.kappa


def classify(params: Params, threshold=DEFAULT_COALESCENCE_THRESHOLD) -> Regime:
    delta = params.delta
    threshold = to_fraction(threshold)
    if delta > threshold:
        return Regime.UPPER
    if delta < -threshold:
        return Regime.LOWER
    return Regime.COALESCENT


def saddle_pole_gap(params: Params, ctx: Context = WORKING) -> Real:
    """p^2 = psi(eps) - psi(alpha), written with log1p to limit cancellation."""
    eps = ctx.real(params.eps)
    delta = ctx.real(params.delta)
    if params.delta == 0:
        return ctx.real(0)
    # psi(eps) - psi(alpha) = eps*log1p(delta/eps) - (eps-1)*log1p(delta/(eps-1))
    gap = eps * ctx.log1p(delta / eps) - (eps - 1) * ctx.log1p(delta / (eps - 1))
    return gap if gap > 0 else gap * 0


def geometry(params: Params, threshold=DEFAULT_COALESCENCE_THRESHOLD,
             ctx: Context = WORKING) -> PhaseGeometry:
    eps = ctx.real(params.eps)
    alpha = ctx.real(params.alpha)
    psi_s = psi(eps, eps, ctx)
    psi_a = psi(alpha, eps, ctx)
    p2 = saddle_pole_gap(params, ctx)
    kappa = ctx.sqrt(1 / (2 * eps * (eps - 1)))
    return PhaseGeometry(
        t_s=eps,
        alpha=alpha,
        delta=ctx.real(params.delta),
        psi_saddle=psi_s,
        psi_pole=psi_a,
        p=ctx.sqrt(p2),
        kappa=kappa,
        regime=classify(params, threshold),
        delta_exact=params.delta,
    )


def compute_logG(params: Params, ctx: Context = WORKING) -> LogScaled:
    """G = Gamma(c+lam) Gamma(1+a-c+(eps-1)lam) / Gamma(a+eps*lam), in log form."""
    a, c, eps, lam = (ctx.real(v) for v in (params.a, params.c, params.eps, params.lam))
    log_g = ctx.lgamma(c + lam) + ctx.lgamma(1 + a - c + (eps - 1) * lam) - ctx.lgamma(a + eps * lam)
    return LogScaled(log_g, 1)


def stirling_logG(params: Params, ctx: Context = WORKING) -> Real:
    """Log of the large-lam form (2 pi lam)^(1/2) eps^(1/2-a-eps lam) (eps-1)^(1/2+a-c+(eps-1) lam)."""
    a, c, eps, lam = (ctx.real(v) for v in (params.a, params.c, params.eps, params.lam))
    half = ctx.real(Fraction(1, 2))
    return (half * ctx.ln(2 * ctx.pi * lam)
            + (half - a - eps * lam) * ctx.ln(eps)
            + (half + a - c + (eps - 1) * lam) * ctx.ln(eps - 1))
