"""Outward-rounded real enclosures for certified inequality verdicts.

Some of the inequalities this package checks contain irrational ingredients:
fractional powers q^(3n/8), the Euler-Mascheroni constant, log log n.  Those
are evaluated as intervals [lower, upper] with outward rounding (mpmath's
interval arithmetic), and a verdict "lhs >= rhs" or "lhs < rhs" is emitted
only when the two enclosures are disjoint.  Callers escalate the working
precision until a verdict is possible, or raise Undecided.

Purely rational comparisons never come through here; they are decided with
exact Fraction arithmetic at the call site.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import iv, mpf

DEFAULT_PRECISION = 64
PRECISION_LADDER = (64, 128, 256)


class Undecided(Exception):
    """Enclosures still overlap at the top of the precision ladder."""


def _to_ivmpf(value, prec):
    iv.prec = prec
    if isinstance(value, Fraction):
        return iv.mpf(value.numerator) / iv.mpf(value.denominator)
    if isinstance(value, int):
        return iv.mpf(value)
    if isinstance(value, RealEnclosure):
        return value._iv
    raise TypeError(f"cannot build an enclosure from {type(value).__name__}")


class RealEnclosure:
    """An interval certain to contain one real number.

    Arithmetic combines intervals at the larger of the two precisions,
    with mpmath performing the outward rounding.
    """

    __slots__ = ("_iv", "precision_bits")

    def __init__(self, value, precision_bits=DEFAULT_PRECISION):
        self.precision_bits = precision_bits
        self._iv = _to_ivmpf(value, precision_bits)

    @classmethod
    def _wrap(cls, interval, prec):
        out = cls.__new__(cls)
        out._iv = interval
        out.precision_bits = prec
        return out

    @property
    def lower(self) -> mpf:
        return self._iv.a

    @property
    def upper(self) -> mpf:
        return self._iv.b

    def __repr__(self):
        return f"RealEnclosure([{self.lower}, {self.upper}], prec={self.precision_bits})"

    def __float__(self):
        return float(self._iv.mid)

    def _binop(self, other, fn):
        prec = self.precision_bits
        if isinstance(other, RealEnclosure):
            prec = max(prec, other.precision_bits)
        iv.prec = prec
        return RealEnclosure._wrap(fn(self._iv, _to_ivmpf(other, prec)), prec)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binop(other, lambda a, b: b / a)

    def exp(self) -> "RealEnclosure":
        iv.prec = self.precision_bits
        return RealEnclosure._wrap(iv.exp(self._iv), self.precision_bits)

    def log(self) -> "RealEnclosure":
        iv.prec = self.precision_bits
        return RealEnclosure._wrap(iv.log(self._iv), self.precision_bits)

    def pow_fraction(self, exponent: Fraction) -> "RealEnclosure":
        """self ** exponent for positive self, as exp(exponent * log self)."""
        iv.prec = self.precision_bits
        e = _to_ivmpf(Fraction(exponent), self.precision_bits)
        return RealEnclosure._wrap(iv.exp(e * iv.log(self._iv)), self.precision_bits)

    def certainly_lt(self, other) -> bool:
        o = other if isinstance(other, RealEnclosure) else RealEnclosure(other, self.precision_bits)
        return self.upper < o.lower

    def certainly_gt(self, other) -> bool:
        o = other if isinstance(other, RealEnclosure) else RealEnclosure(other, self.precision_bits)
        return self.lower > o.upper

    def contains(self, value) -> bool:
        v = _to_ivmpf(Fraction(value) if not isinstance(value, int) else value, self.precision_bits)
        return self._iv.a <= v.a and v.b <= self._iv.b


def euler_gamma(precision_bits=DEFAULT_PRECISION) -> RealEnclosure:
    iv.prec = precision_bits
    return RealEnclosure._wrap(+iv.euler, precision_bits)


def two_power(x: RealEnclosure) -> RealEnclosure:
    """2 ** x as an enclosure."""
    iv.prec = x.precision_bits
    return RealEnclosure._wrap(iv.exp(x._iv * iv.log(iv.mpf(2))), x.precision_bits)


def decide_ge(build, precisions=PRECISION_LADDER) -> bool:
    """Decide lhs >= rhs where build(prec) -> (lhs, rhs) enclosures.

    Returns True when lhs is certainly greater, False when certainly smaller,
    escalating precision until the enclosures separate.  Exact ties are not
    representable here; they must be resolved rationally by the caller.
    """
    for prec in precisions:
        lhs, rhs = build(prec)
        if lhs.certainly_gt(rhs):
            return True
        if lhs.certainly_lt(rhs):
            return False
    raise Undecided(
        f"enclosures still overlap at {precisions[-1]} bits: {lhs} vs {rhs}"
    )
