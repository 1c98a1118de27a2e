"""Real scalars at two precisions, and the special functions built on them.

Every numeric routine in the package is written against a :class:`Context`
instead of a concrete number type.  Two kinds of context exist:

* ``WORKING`` wraps Python floats (binary64) with :mod:`math` and
  :func:`scipy.special.erfcx`;
* ``extended(digits)`` wraps a private :class:`mpmath.MPContext` running at
  the requested number of decimal digits.

Values produced by a context are plain ``float`` or ``mpmath.mpf`` objects, so
ordinary operators (``+ - * / **`` and comparisons) work on them directly.
Only transcendental functions and conversions go through the context.

Inputs are normally held as :class:`fractions.Fraction` so that a decimal such
as ``0.3`` means exactly 3/10 whatever the precision it is later rounded to.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import mpmath
import scipy.special
from mpmath.ctx_mp_python import _mpf as _MpfBase

from .errors import DomainError

Real = Union[float, mpmath.mpf]


def is_mpf(value) -> bool:
    """True for an mpmath real from any context (private contexts make their own class)."""
    return isinstance(value, _MpfBase)


DEFAULT_EXTENDED_DIGITS = 60
PRECISION_ENV = "UNIASYM_PRECISION"


def to_fraction(value) -> Fraction:
    """Exact rational form of ``value``; strings are read as decimals."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"non-finite input {value!r}")
        return Fraction(value)
    if is_mpf(value):
        man, exp = value.man_exp
        return Fraction(int(man)) * Fraction(2) ** int(exp)
    raise TypeError(f"cannot interpret {type(value).__name__} as a real number")


class Context:
    """Arithmetic context: conversions and special functions at one precision."""

    name: str
    digits: int

    def real(self, value) -> Real:
        raise NotImplementedError

    def to_float(self, value) -> float:
        return float(value)

    def to_string(self, value) -> str:
        raise NotImplementedError

    @property
    def pi(self) -> Real:
        raise NotImplementedError

    def ln(self, x): raise NotImplementedError
    def log1p(self, x): raise NotImplementedError
    def exp(self, x): raise NotImplementedError
    def sqrt(self, x): raise NotImplementedError
    def lgamma(self, x): raise NotImplementedError
    def erfc(self, x): raise NotImplementedError
    def erfcx(self, x): raise NotImplementedError

    def __repr__(self):
        return f"<{self.name} context, {self.digits} digits>"


class WorkingContext(Context):
    name = "working"
    digits = 15

    def real(self, value) -> float:
        if isinstance(value, str):
            return float(Fraction(value))
        return float(value)

    def to_string(self, value) -> str:
        return repr(float(value))

    @property
    def pi(self) -> float:
        return math.pi

    def ln(self, x):
        return math.log(x)

    def log1p(self, x):
        return math.log1p(x)

    def exp(self, x):
        return math.exp(x)

    def sqrt(self, x):
        return math.sqrt(x)

    def lgamma(self, x):
        return math.lgamma(x)

    def erfc(self, x):
        return math.erfc(x)

    def erfcx(self, x):
        return float(scipy.special.erfcx(x))


class ExtendedContext(Context):
    name = "extended"

    def __init__(self, digits: int):
        if digits < 15:
            raise DomainError(f"extended precision needs at least 15 digits, got {digits}")
        self.digits = int(digits)
        self.mp = mpmath.MPContext()
        self.mp.dps = self.digits
        self.mp._uniasym_owner = self

    def real(self, value):
        if isinstance(value, Fraction):
            return self.mp.mpf(value.numerator) / value.denominator
        if is_mpf(value) and value.context is self.mp:
            return value
        return self.mp.mpf(value)

    def to_string(self, value) -> str:
        return self.mp.nstr(self.real(value), self.digits, strip_zeros=False)

    @property
    def pi(self):
        return +self.mp.pi

    def ln(self, x):
        return self.mp.log(x)

    def log1p(self, x):
        return self.mp.log1p(x)

    def exp(self, x):
        return self.mp.exp(x)

    def sqrt(self, x):
        return self.mp.sqrt(x)

    def lgamma(self, x):
        return self.mp.loggamma(x)

    def erfc(self, x):
        return self.mp.erfc(x)

    def erfcx(self, x):
        # mpmath's erfc keeps full relative accuracy in the far tail and the
        # exponent range is unbounded, so the product form is safe.
        with self.mp.extradps(10):
            x = self.mp.mpf(x)
            r = self.mp.exp(x * x) * self.mp.erfc(x)
        return +r


WORKING = WorkingContext()


def default_digits() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_EXTENDED_DIGITS
    try:
        digits = int(raw)
    except ValueError:
        raise DomainError(f"{PRECISION_ENV} must be a positive integer, got {raw!r}") from None
    if digits <= 0:
        raise DomainError(f"{PRECISION_ENV} must be a positive integer, got {raw!r}")
    return digits


@lru_cache(maxsize=None)
def _extended(digits: int) -> ExtendedContext:
    return ExtendedContext(digits)


def extended(digits: int | None = None) -> ExtendedContext:
    """Extended context at ``digits`` (default: ``$UNIASYM_PRECISION`` or 60)."""
    return _extended(default_digits() if digits is None else int(digits))


def context_of(value) -> Context:
    """The context that owns ``value`` (floats and ints belong to WORKING)."""
    if is_mpf(value):
        owner = getattr(value.context, "_uniasym_owner", None)
        if owner is not None:
            return owner
        return extended(value.context.dps)
    return WORKING


def lgamma(x, ctx: Context = WORKING):
    """ln Gamma(x) for x > 0."""
    x = ctx.real(x)
    if not x > 0:
        raise DomainError(f"lgamma requires a positive argument, got {x}")
    return ctx.lgamma(x)


def erfc(x, ctx: Context = WORKING):
    return ctx.erfc(ctx.real(x))


def erfcx(x, ctx: Context = WORKING):
    """Scaled complementary error function exp(x^2) erfc(x)."""
    return ctx.erfcx(ctx.real(x))


def pochhammer(a, n: int, ctx: Context | None = None):
    """Rising factorial a(a+1)...(a+n-1); 1 when n == 0.

    With ``ctx=None`` the product is formed in whatever arithmetic ``a``
    carries, so Fractions give exact results.
    """
    if n < 0:
        raise DomainError(f"pochhammer needs n >= 0, got {n}")
    if ctx is not None:
        a = ctx.real(a)
    result = a * 0 + 1
    for i in range(n):
        result = result * (a + i)
    return result


@dataclass(frozen=True)
class LogScaled:
    """A real number stored as ``sign * exp(log_magnitude)``.

    ``sign`` is +1, -1 or 0; for 0 the magnitude is ignored.
    """

    log_magnitude: Real
    sign: int

    @classmethod
    def from_real(cls, value, ctx: Context | None = None) -> LogScaled:
        ctx = ctx or context_of(value)
        value = ctx.real(value)
        if value == 0:
            return cls(ctx.real(0), 0)
        return cls(ctx.ln(abs(value)), 1 if value > 0 else -1)

    @classmethod
    def from_log(cls, log_magnitude, sign: int = 1) -> LogScaled:
        return cls(log_magnitude, sign)

    @property
    def ctx(self) -> Context:
        return context_of(self.log_magnitude)

    def is_zero(self) -> bool:
        return self.sign == 0

    def to_real(self, ctx: Context | None = None):
        ctx = ctx or self.ctx
        if self.sign == 0:
            return ctx.real(0)
        return self.sign * ctx.exp(ctx.real(self.log_magnitude))

    def __float__(self):
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(float(self.log_magnitude))
        except OverflowError:
            return self.sign * math.inf

    def __neg__(self):
        return LogScaled(self.log_magnitude, -self.sign)

    def __mul__(self, other):
        if not isinstance(other, LogScaled):
            other = LogScaled.from_real(other, self.ctx)
        if self.sign == 0 or other.sign == 0:
            return LogScaled(self.log_magnitude * 0, 0)
        return LogScaled(self.log_magnitude + other.log_magnitude, self.sign * other.sign)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, LogScaled):
            other = LogScaled.from_real(other, self.ctx)
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero LogScaled")
        if self.sign == 0:
            return self
        return LogScaled(self.log_magnitude - other.log_magnitude, self.sign * other.sign)

    def scale_exp(self, y) -> LogScaled:
        """Multiply by exp(y)."""
        return LogScaled(self.log_magnitude + y, self.sign)

    def __add__(self, other):
        if not isinstance(other, LogScaled):
            other = LogScaled.from_real(other, self.ctx)
        if other.sign == 0:
            return self
        if self.sign == 0:
            return other
        big, small = (self, other) if self.log_magnitude >= other.log_magnitude else (other, self)
        ctx = big.ctx
        ratio = ctx.exp(small.log_magnitude - big.log_magnitude)
        factor = 1 + big.sign * small.sign * ratio
        if factor == 0:
            return LogScaled(big.log_magnitude * 0, 0)
        return LogScaled(big.log_magnitude + ctx.ln(abs(factor)), big.sign if factor > 0 else -big.sign)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, LogScaled):
            other = LogScaled.from_real(other, self.ctx)
        return self + (-other)

    def abs_log10(self):
        return self.log_magnitude / self.ctx.ln(self.ctx.real(10))

    def mantissa_exponent(self, digits: int | None = None) -> tuple[Real, int]:
        """Decimal mantissa in [1, 10) (signed) and integer exponent."""
        if self.sign == 0:
            return self.ctx.real(0), 0
        ctx = self.ctx
        e10 = self.abs_log10()
        exponent = int(math.floor(float(e10)))
        mant = ctx.exp((e10 - exponent) * ctx.ln(ctx.real(10)))
        # a mantissa within roundoff of 10 (or below 1) belongs to the next decade
        snap = 10 - ctx.real(10) ** (5 - ctx.digits)
        if mant < 1:
            mant = mant * 10
            exponent -= 1
        if mant >= snap:
            mant = mant / 10
            exponent += 1
        return self.sign * mant, exponent

    def to_decimal_string(self, digits: int = 17) -> str:
        if self.sign == 0:
            return "0"
        mant, exponent = self.mantissa_exponent()
        mant_f = ctx_round(mant, digits)
        if mant_f.lstrip("-").startswith("10"):  # rounding carried into a new decade
            mant_f = ctx_round(mant / 10, digits)
            exponent += 1
        return f"{mant_f}e{exponent:+d}"

    def relative_difference(self, other: LogScaled) -> Real:
        """|self - other| / |other|, computed without leaving log space."""
        if other.sign == 0:
            raise ZeroDivisionError("relative difference against zero")
        diff = self - other
        if diff.sign == 0:
            return diff.log_magnitude * 0
        return self.ctx.exp(diff.log_magnitude - other.log_magnitude)


def ctx_round(value, digits: int) -> str:
    """``value`` rendered with ``digits`` significant digits, no exponent."""
    ctx = context_of(value)
    if isinstance(ctx, ExtendedContext):
        return ctx.mp.nstr(value, digits, strip_zeros=False, min_fixed=-1, max_fixed=2)
    return f"{float(value):.{digits - 1}f}"
