"""Rational functions num/den over Q(i)[vars], plus valuations along lines.

Reduction to lowest terms goes through :meth:`Poly.gcd`; equality is
cross-multiplication so it never depends on a particular normal form.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UndefinedInputError
from .gauss import GaussianRational
from .poly import Poly


class RatFunc:
    """A reduced fraction of polynomials; denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if den is None:
            den = Poly.const(1, num.vars)
        elif not isinstance(den, Poly):
            den = Poly.const(den, num.vars)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            den = Poly.const(1, den.vars)
        elif reduce:
            g = num.gcd(den)
            if not g.is_constant:
                num = num.exact_div(g)
                den = den.exact_div(g)
        if not den.is_constant:
            _, lc = den.leading_term()
            inv = lc.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        else:
            c = den.constant_value().inverse()
            num = num.scale(c)
            den = Poly.const(1, den.vars)
        self.num = num
        self.den = den

    @classmethod
    def of(cls, value):
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, Poly):
            return cls(value)
        if isinstance(value, (int, Fraction, GaussianRational)):
            return cls(Poly.const(value))
        raise TypeError(f"cannot interpret {type(value).__name__} as RatFunc")

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_polynomial(self):
        return self.den.is_constant

    def __add__(self, other):
        other = RatFunc.of(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-RatFunc.of(other))

    def __rsub__(self, other):
        return RatFunc.of(other) + (-self)

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __mul__(self, other):
        other = RatFunc.of(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFunc.of(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.of(other) / self

    def __eq__(self, other):
        try:
            other = RatFunc.of(other)
        except TypeError:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self, var):
        n = self.num.derivative(var) * self.den - self.num * self.den.derivative(var)
        return RatFunc(n, self.den * self.den)

    def eval_exact(self, point):
        d = self.den.eval_exact(point)
        if d.is_zero:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.eval_exact(point) / d

    def __str__(self):
        if self.is_polynomial:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def poly_valuation(f, ell):
    """Multiplicity of the irreducible linear form ell in the polynomial f."""
    if f.is_zero:
        raise UndefinedInputError("valuation of the zero polynomial is +infinity")
    if ell.total_degree() != 1:
        raise UndefinedInputError("valuation divisor must be linear")
    k = 0
    while True:
        q = f.exact_div(ell)
        if q is None:
            return k
        f = q
        k += 1


def linear_valuation(r, ell):
    """Order of r along {ell = 0}: numerator minus denominator multiplicity.

    Negative values are pole orders.  Works on unreduced fractions too since
    shared multiplicities cancel in the difference.
    """
    r = RatFunc.of(r)
    if r.is_zero:
        raise UndefinedInputError("valuation of zero is +infinity")
    return poly_valuation(r.num, ell) - poly_valuation(r.den, ell)
