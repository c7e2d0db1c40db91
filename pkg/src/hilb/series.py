"""Exact rational arithmetic, truncated power series, and Laurent series in eps.

Rationals are stdlib Fractions: arbitrary precision, always reduced,
denominator positive. TruncSeries carries an explicit truncation order;
binary operations truncate to the smaller order of the two operands and
never silently extend it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class SeriesError(ValueError):
    """Raised on malformed series input or insufficient truncation order."""


class TruncSeries:
    """Power series in one formal variable, truncated at a fixed order.

    coeffs[k] is the coefficient of var**k, and len(coeffs) == order + 1.
    Coefficients are Fractions by default, but any commutative ring
    element supporting +, -, * (and, for exp, multiplication by
    Fraction) works.
    """

    __slots__ = ("var", "order", "coeffs")

    def __init__(self, var: str, order: int, coeffs: Sequence):
        if order < 0:
            raise SeriesError("order must be >= 0")
        coeffs = list(coeffs)
        if len(coeffs) != order + 1:
            raise SeriesError(
                f"series of order {order} needs {order + 1} coefficients, got {len(coeffs)}"
            )
        self.var = var
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def constant(cls, var: str, order: int, value) -> "TruncSeries":
        value = Fraction(value) if isinstance(value, int) else value
        return cls(var, order, [value] + [ZERO] * order)

    @classmethod
    def gen(cls, var: str, order: int) -> "TruncSeries":
        """The series var itself (requires order >= 1)."""
        if order < 1:
            raise SeriesError("order must be >= 1 to represent the variable")
        return cls(var, order, [ZERO, ONE] + [ZERO] * (order - 1))

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise SeriesError("cannot extend truncation order")
        return TruncSeries(self.var, order, self.coeffs[: order + 1])

    def _common(self, other: "TruncSeries") -> int:
        if not isinstance(other, TruncSeries):
            raise TypeError(f"expected TruncSeries, got {type(other).__name__}")
        if self.var != other.var:
            raise SeriesError(f"variable mismatch: {self.var!r} vs {other.var!r}")
        return min(self.order, other.order)

    def __add__(self, other):
        n = self._common(other)
        return TruncSeries(
            self.var, n, [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)]
        )

    def __sub__(self, other):
        n = self._common(other)
        return TruncSeries(
            self.var, n, [self.coeffs[k] - other.coeffs[k] for k in range(n + 1)]
        )

    def __neg__(self):
        return TruncSeries(self.var, self.order, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            n = self._common(other)
            out = []
            for k in range(n + 1):
                acc = self.coeffs[0] * other.coeffs[k]
                for i in range(1, k + 1):
                    acc = acc + self.coeffs[i] * other.coeffs[k - i]
                out.append(acc)
            return TruncSeries(self.var, n, out)
        # scalar
        return TruncSeries(self.var, self.order, [c * other for c in self.coeffs])

    def __rmul__(self, other):
        return TruncSeries(self.var, self.order, [other * c for c in self.coeffs])

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise SeriesError("only nonnegative integer powers")
        result = TruncSeries.constant(self.var, self.order, ONE)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        return (
            isinstance(other, TruncSeries)
            and self.var == other.var
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.var, self.order, tuple(self.coeffs)))

    def __repr__(self):
        return f"TruncSeries({self.var!r}, {self.order}, {self.coeffs})"


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product truncated at min(order_a, order_b)."""
    return a * b


def series_exp(a: TruncSeries, one=ONE) -> TruncSeries:
    """exp(a) for a series with zero constant term.

    Uses the recurrence n*b_n = sum_{k=1..n} k*a_k*b_{n-k} from
    (exp a)' = a' exp a. `one` is the multiplicative identity of the
    coefficient ring.
    """
    if a.coeffs[0]:
        raise SeriesError("series_exp requires zero constant term")
    out = [one]
    for n in range(1, a.order + 1):
        acc = None
        for k in range(1, n + 1):
            term = (a.coeffs[k] * out[n - k]) * k
            acc = term if acc is None else acc + term
        out.append(acc * Fraction(1, n))
    return TruncSeries(a.var, a.order, out)


def exp_eps(rate, order: int, var: str = "eps") -> TruncSeries:
    """The series exp(rate * eps) truncated at the given order."""
    rate = Fraction(rate)
    coeffs = [ONE]
    for k in range(1, order + 1):
        coeffs.append(coeffs[-1] * rate / k)
    return TruncSeries(var, order, coeffs)


class EpsLaurent:
    """Laurent series in eps with finite precision.

    Represents eps**shift * (c[0] + c[1] eps + ...) + O(eps**abs_prec)
    with abs_prec == shift + len(coeffs). Leading coefficient is
    nonzero; an all-zero value is stored with empty coeffs and shift
    equal to its absolute precision.
    """

    __slots__ = ("shift", "coeffs")

    def __init__(self, shift: int, coeffs: Sequence[Fraction]):
        coeffs = list(coeffs)
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
            shift += 1
        self.shift = shift
        self.coeffs = coeffs

    @property
    def abs_prec(self) -> int:
        return self.shift + len(self.coeffs)

    @classmethod
    def from_rat(cls, value, rel_prec: int) -> "EpsLaurent":
        value = Fraction(value)
        return cls(0, [value] + [ZERO] * (rel_prec - 1))

    @classmethod
    def from_series(cls, s: TruncSeries) -> "EpsLaurent":
        return cls(0, s.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, power: int) -> Fraction:
        """Coefficient of eps**power; power must be below abs_prec."""
        if power >= self.abs_prec:
            raise SeriesError("coefficient beyond known precision")
        if power < self.shift:
            return ZERO
        return self.coeffs[power - self.shift]

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = EpsLaurent.from_rat(other, max(1, self.abs_prec))
        ap = min(self.abs_prec, other.abs_prec)
        lo = min(self.shift, other.shift)
        if ap <= lo:
            return EpsLaurent(ap, [])
        out = [ZERO] * (ap - lo)
        for src in (self, other):
            for i, c in enumerate(src.coeffs):
                p = src.shift + i
                if p < ap:
                    out[p - lo] += c
        return EpsLaurent(lo, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return EpsLaurent(self.shift, [-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + EpsLaurent.from_rat(-Fraction(other), max(1, self.abs_prec))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return EpsLaurent(self.abs_prec, [])
            return EpsLaurent(self.shift, [c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return EpsLaurent(self.shift + other.shift, [])
        rel = min(len(self.coeffs), len(other.coeffs))
        out = [ZERO] * rel
        for i, a in enumerate(self.coeffs):
            if i >= rel:
                break
            for j in range(rel - i):
                out[i + j] += a * other.coeffs[j]
        return EpsLaurent(self.shift + other.shift, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self) -> "EpsLaurent":
        if not self.coeffs:
            raise SeriesError("cannot invert a series that is zero to its precision")
        u = self.coeffs
        rel = len(u)
        inv0 = ONE / u[0]
        v = [inv0]
        for n in range(1, rel):
            acc = ZERO
            for k in range(1, n + 1):
                acc += u[k] * v[n - k]
            v.append(-inv0 * acc)
        return EpsLaurent(-self.shift, v)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (ONE / Fraction(other))
        return self * other.inverse()

    def limit(self) -> Fraction:
        """Value at eps -> 0. Errors on a pole or undecidable precision."""
        if not self.coeffs:
            if self.shift >= 1:
                return ZERO
            raise SeriesError("truncation order too small to decide the limit")
        if self.shift < 0:
            raise SeriesError("pole at eps=0")
        if self.shift > 0:
            return ZERO
        return self.coeffs[0]

    def __eq__(self, other):
        return (
            isinstance(other, EpsLaurent)
            and self.shift == other.shift
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"EpsLaurent(shift={self.shift}, coeffs={self.coeffs})"


def eps_limit(num: TruncSeries, den: TruncSeries) -> Fraction:
    """Limit of num/den as the series variable goes to 0.

    Cancels the common leading power; errors when num/den has a pole at
    0 or the truncation orders cannot decide the value.
    """
    num._common(den)
    d = EpsLaurent.from_series(den)
    if not d.coeffs:
        raise SeriesError("denominator is zero to its truncation order")
    n = EpsLaurent.from_series(num)
    return (n / d).limit()
