"""Truncated Taylor series about a real point.

A :class:`TaylorSeries` of degree ``n`` holds ``g(c), g'(c), g''(c)/2!, ...,
g^(n)(c)/n!`` for some function ``g`` and centre ``c``.  Coefficients beyond
the degree are unknown, not zero, so every binary operation truncates to the
smaller degree of its operands.

The coefficient type is whatever the caller supplies (float, mpmath.mpf or
Fraction); the routines only use ``+ - * /`` on coefficients, except the
constant term of :func:`ts_pow` and :func:`ts_log`, which use the owning
context.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BranchCutError, UniasymError
from .scalar import Context, context_of


class SeriesError(UniasymError, ValueError):
    """Incompatible series operands (centre mismatch, zero divisor)."""


@dataclass(frozen=True)
class TaylorSeries:
    center: object
    coeffs: tuple

    def __init__(self, center, coeffs: Sequence):
        if len(coeffs) == 0:
            raise SeriesError("a Taylor series needs at least one coefficient")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def constant(cls, center, value, degree: int) -> TaylorSeries:
        zero = value * 0
        return cls(center, [value] + [zero] * degree)

    @classmethod
    def variable(cls, center, degree: int, one=1) -> TaylorSeries:
        """The identity function t about ``center``."""
        zero = center * 0
        coeffs = [center, one + zero] + [zero] * (degree - 1)
        return cls(center, coeffs[: degree + 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, r):
        return self.coeffs[r]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, degree: int) -> TaylorSeries:
        if degree > self.degree:
            raise SeriesError(f"cannot extend a degree-{self.degree} series to {degree}")
        return TaylorSeries(self.center, self.coeffs[: degree + 1])

    def derivative(self, r: int) -> object:
        """g^(r)(center) = r! * coeffs[r]."""
        fact = 1
        for i in range(2, r + 1):
            fact *= i
        return self.coeffs[r] * fact

    def deriv(self) -> TaylorSeries:
        """Series of g' (degree drops by one)."""
        if self.degree == 0:
            raise SeriesError("derivative of a degree-0 series is unknown")
        return TaylorSeries(self.center, [self.coeffs[r] * r for r in range(1, len(self.coeffs))])

    def shift_down(self, k: int) -> TaylorSeries:
        """Drop the first ``k`` coefficients: (g - sum_{r<k} g_r h^r) / h^k."""
        return TaylorSeries(self.center, self.coeffs[k:])

    def _coerce(self, other) -> TaylorSeries:
        if isinstance(other, TaylorSeries):
            _check_center(self, other)
            return other
        return TaylorSeries.constant(self.center, other, self.degree)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.degree, other.degree) + 1
        return TaylorSeries(self.center, [self.coeffs[i] + other.coeffs[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return TaylorSeries(self.center, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, TaylorSeries):
            return ts_mul(self, other)
        return TaylorSeries(self.center, [c * other for c in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TaylorSeries):
            return ts_div(self, other)
        return TaylorSeries(self.center, [c / other for c in self.coeffs])

    def __rtruediv__(self, other):
        return ts_div(self._coerce(other), self)

    def __pow__(self, s):
        return ts_pow(self, s)


def _check_center(u: TaylorSeries, v: TaylorSeries) -> None:
    if u.center != v.center:
        raise SeriesError(f"centre mismatch: {u.center} vs {v.center}")


def ts_mul(u: TaylorSeries, v: TaylorSeries) -> TaylorSeries:
    """Cauchy product truncated to the smaller degree."""
    _check_center(u, v)
    n = min(u.degree, v.degree) + 1
    a, b = u.coeffs, v.coeffs
    out = []
    for k in range(n):
        acc = a[0] * b[k]
        for j in range(1, k + 1):
            acc = acc + a[j] * b[k - j]
        out.append(acc)
    return TaylorSeries(u.center, out)


def ts_div(u: TaylorSeries, v: TaylorSeries) -> TaylorSeries:
    """Series quotient u / v; requires v[0] != 0."""
    _check_center(u, v)
    if v.coeffs[0] == 0:
        raise SeriesError("division by a series with zero constant term")
    n = min(u.degree, v.degree) + 1
    a, b = u.coeffs, v.coeffs
    out = []
    for k in range(n):
        acc = a[k]
        for j in range(1, k + 1):
            acc = acc - b[j] * out[k - j]
        out.append(acc / b[0])
    return TaylorSeries(u.center, out)


def _leading_power(u0, s, ctx: Context | None):
    if isinstance(u0, Fraction) and isinstance(s, int):
        return u0 ** s
    if ctx is None:
        ctx = context_of(u0)
    return ctx.exp(ctx.real(s) * ctx.ln(ctx.real(u0)))


def ts_pow(u: TaylorSeries, s, ctx: Context | None = None) -> TaylorSeries:
    """u**s for real s, by the J.C.P. Miller recurrence.

    w_n = (1/(n u_0)) * sum_{k=1..n} ((s+1) k - n) u_k w_{n-k}
    """
    u0 = u.coeffs[0]
    if not u0 > 0:
        raise BranchCutError(f"real power of a series needs a positive constant term, got {u0}")
    if ctx is None and not isinstance(u0, Fraction):
        ctx = context_of(u0)
    if ctx is not None:
        s = ctx.real(s)
    a = u.coeffs
    w = [_leading_power(u0, s, ctx)]
    for n in range(1, len(a)):
        acc = a[0] * 0
        for k in range(1, n + 1):
            acc = acc + ((s + 1) * k - n) * a[k] * w[n - k]
        w.append(acc / (n * u0))
    return TaylorSeries(u.center, w)


def ts_log(u: TaylorSeries, ctx: Context | None = None) -> TaylorSeries:
    """ln(u) for a series with positive constant term."""
    u0 = u.coeffs[0]
    if not u0 > 0:
        raise BranchCutError(f"real logarithm of a series needs a positive constant term, got {u0}")
    ctx = ctx or context_of(u0)
    a = u.coeffs
    out = [ctx.ln(ctx.real(u0))]
    for n in range(1, len(a)):
        acc = a[n]
        for k in range(1, n):
            acc = acc - (k * out[k] * a[n - k]) / n
        out.append(acc / u0)
    return TaylorSeries(u.center, out)


def ts_exp(u: TaylorSeries, ctx: Context | None = None) -> TaylorSeries:
    """exp(u); w' = u' w gives n w_n = sum_{k=1..n} k u_k w_{n-k}."""
    ctx = ctx or context_of(u.coeffs[0])
    a = u.coeffs
    w = [ctx.exp(ctx.real(a[0]))]
    for n in range(1, len(a)):
        acc = a[0] * 0
        for k in range(1, n + 1):
            acc = acc + k * a[k] * w[n - k]
        w.append(acc / n)
    return TaylorSeries(u.center, w)
