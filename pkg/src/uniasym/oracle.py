"""Reference values of 2F1 by direct summation with a certified tail bound.

The Gauss series is summed term by term in extended precision.  Summation
stops only once the remaining tail is provably below the target: beyond index
N every term ratio is bounded by

    r = |x| * max(|(A+N)/(C+N)|, 1) * max(|(B+N)/(1+N)|, 1),

because each factor is a Mobius function of n, monotone for n past its pole
and tending to 1.  With r < 1 the tail after the last included term t_N is at
most |t_N| r / (1 - r).

No transformation formulas are used, so the oracle shares nothing with the
asymptotic machinery it is used to judge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, NonConvergenceError
from .phase import Params
from .scalar import ExtendedContext, default_digits, extended, to_fraction

GUARD_DIGITS = 10


@dataclass(frozen=True)
class PrecisionConfig:
    digits: int = 0
    max_terms: int = 1_000_000
    target_rel_error: Fraction | None = None

    def __post_init__(self):
        if self.digits == 0:
            object.__setattr__(self, "digits", default_digits())
        if self.digits < 20:
            raise DomainError(f"oracle precision must be at least 20 digits, got {self.digits}")
        if self.max_terms <= 0:
            raise DomainError("max_terms must be positive")
        if self.target_rel_error is None:
            object.__setattr__(self, "target_rel_error", Fraction(1, 10**self.digits))
        if not self.target_rel_error > 0:
            raise DomainError("target_rel_error must be positive")

    @property
    def context(self) -> ExtendedContext:
        return extended(self.digits + GUARD_DIGITS)


@dataclass(frozen=True)
class SeriesValue:
    value: object
    tail_bound: object  # absolute bound on the omitted tail
    terms: int

    @property
    def relative_bound(self):
        return abs(self.tail_bound / self.value) if self.value != 0 else self.tail_bound


def _ratio_bound(A, B, C, x, n):
    """Upper bound on |t_{k+1}/t_k| for all k >= n (valid once n is past the poles)."""
    f1 = abs((A + n) / (C + n))
    f2 = abs((B + n) / (1 + n))
    return abs(x) * max(f1, 1) * max(f2, 1)


def gauss_series(A, B, C, x, cfg: PrecisionConfig | None = None) -> SeriesValue:
    """Sum F(A, B; C; x) = sum (A)_n (B)_n / ((C)_n n!) x^n for |x| < 1."""
    cfg = cfg or PrecisionConfig()
    ctx = cfg.context
    qA, qB, qC, qx = (to_fraction(v) for v in (A, B, C, x))
    if not abs(qx) < 1:
        raise DomainError(f"series summation needs |x| < 1, got x={float(qx)}")
    if qC <= 0 and qC.denominator == 1:
        raise DomainError(f"C must not be a non-positive integer, got C={qC}")
    A, B, C, x = (ctx.real(v) for v in (qA, qB, qC, qx))
    target = ctx.real(cfg.target_rel_error)
    # index past which every factor of the ratio is positive and monotone
    n_safe = max(0, math.floor(max(-qA, -qB, -qC, Fraction(-1))) + 1)

    if _ratio_bound(A, B, C, x, max(cfg.max_terms, n_safe)) >= 1:
        raise NonConvergenceError(
            f"term ratio cannot be certified below 1 within {cfg.max_terms} terms "
            f"(x={float(qx)} too close to 1 for this parameter size)",
            terms=0,
        )

    term = ctx.real(1)
    total = term
    n = 0
    while True:
        term = term * (A + n) * (B + n) * x / ((C + n) * (n + 1))
        n += 1
        total = total + term
        if term == 0:
            return SeriesValue(total, term, n + 1)
        if n >= n_safe:
            r = _ratio_bound(A, B, C, x, n)
            if r < 1:
                bound = abs(term) * r / (1 - r)
                if bound <= target * abs(total):
                    return SeriesValue(total, bound, n + 1)
                # optimistic count of further terms (ratio at its limit |x|); give up
                # early only if even that exceeds the budget
                needed = math.log(float(target * abs(total) / bound)) / math.log(float(abs(x)))
                if n + needed > cfg.max_terms:
                    raise NonConvergenceError(
                        f"series needs about {int(n + needed)} terms, more than max_terms={cfg.max_terms}",
                        partial_sum=total, tail_bound=bound, terms=n + 1,
                    )
        if n >= cfg.max_terms:
            raise NonConvergenceError(
                f"no certified tail bound within max_terms={cfg.max_terms}",
                partial_sum=total, tail_bound=None, terms=n + 1,
            )


def reference_value(params: Params, cfg: PrecisionConfig | None = None) -> SeriesValue:
    """F(a + eps*lam, m; c + lam; x) with its tail bound."""
    p = params
    return gauss_series(p.a + p.eps * p.lam, p.m, p.c + p.lam, p.x, cfg)


def reference_F(params: Params, cfg: PrecisionConfig | None = None):
    return reference_value(params, cfg).value
