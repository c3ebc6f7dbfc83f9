"""Foliations and pre-foliations of the plane.

A foliation is a coprime pair (A, B) of polynomials in (x, y) representing
the 1-form omega = A dx + B dy.  A pre-foliation attaches a reduced curve
polynomial (a product of lines throughout this package) and optionally the
line at infinity.  Points at infinity are reached through two auxiliary
charts:

  chart 1:  (u, v) = (1/x, y/x)   covers  [1 : v : u],  misses the line x = 0
  chart 2:  (s, t) = (x/y, 1/y)   covers  [s : 1 : t],  misses the line y = 0

Chart images reuse the variable names (x, y); the geometric meaning is
carried by which chart function produced them.  Chart 1 alone misses the
single projective point [0:1:0] (the vertical direction), which *can* be a
radial singular point; chart 2 exists to cover it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    InvariantViolation,
    NonReducedError,
    RadialPencilError,
    UndefinedInputError,
)
from .gauss import GaussianRational, ZERO, ONE
from .poly import Poly
from . import analytic

# Sentinel for the line at infinity in candidate/curve line lists.
LINE_AT_INFINITY = "Linf"

_XY = ("x", "y")


def _as_xy(poly):
    extra = poly.used_vars() - {"x", "y"}
    if extra:
        raise ValueError(f"foliation data must live in (x, y); found {sorted(extra)}")
    return poly.with_vars(_XY) if poly.vars != _XY else poly


class AffineFoliation:
    """omega = A dx + B dy with gcd(A, B) = 1."""

    __slots__ = ("A", "B")

    def __init__(self, A, B):
        A, B = _as_xy(A), _as_xy(B)
        if A.is_zero and B.is_zero:
            raise UndefinedInputError("(A, B) must not both vanish")
        if not A.gcd(B).is_constant:
            raise NonReducedError("A and B share a nonconstant factor")
        self.A = A
        self.B = B

    @classmethod
    def parse(cls, a_text, b_text):
        return cls(Poly.parse(a_text, _XY), Poly.parse(b_text, _XY))

    def form_degree(self):
        return max(self.A.total_degree(), self.B.total_degree())

    def __repr__(self):
        return f"AffineFoliation(A={self.A!r}, B={self.B!r})"


@dataclass(frozen=True)
class SingularPoint:
    """A common zero of (A, B), possibly at infinity.

    kind is 'affine' (coords = (x0, y0)), 'direction' (coords = slope m,
    standing for the infinite point [1 : m : 0]) or 'vertical-direction'
    (the point [0 : 1 : 0]).  nu is the tangency order with a generic line
    through the point; None when the point is only known numerically or the
    foliation is the radial pencil centred there.
    """

    kind: str
    coords: object
    nu: int | None = None
    exact: bool = True

    def radial_order(self):
        return None if self.nu is None else self.nu - 1


class SingularScan(list):
    """List of SingularPoint with a per-chart completeness flag."""

    def __init__(self, points, complete):
        super().__init__(points)
        self.complete = complete


# -- degree ---------------------------------------------------------------


def dual_slope_poly(F):
    """A(x, px - q) + p * B(x, px - q): the slope polynomial of Leg F."""
    vars = ("x", "p", "q")
    x = Poly.var("x", vars)
    p = Poly.var("p", vars)
    q = Poly.var("q", vars)
    line = p * x - q
    return F.A.substitute({"y": line}) + p * F.B.substitute({"y": line})


def foliation_degree(F):
    """Degree of the foliation, read off as deg_x of the dual slope polynomial."""
    return max(dual_slope_poly(F).degree_in("x"), 0)


# -- singular points -------------------------------------------------------


def _recognize_rational(value, prec, max_den=10**4):
    """Round an mpf to a nearby small rational, or None."""
    from mpmath import mp, mpf

    with mp.workprec(prec):
        f = Fraction(mpf(value)).limit_denominator(max_den)
        if abs(value - mpf(f.numerator) / mpf(f.denominator)) < mpf(2) ** (-prec // 2):
            return f
    return None


def _recognize_gaussian(z, prec):
    re = _recognize_rational(z.re, prec)
    im = _recognize_rational(z.im, prec)
    if re is None or im is None:
        return None
    return GaussianRational(re, im)


def _univariate_root_values(poly, var, prec):
    """Roots of a univariate polynomial as (BigComplex, exact-or-None) pairs."""
    deg = poly.degree_in(var)
    if deg <= 0:
        return []
    coeffs_map = poly.coeffs_in(var)
    coeffs = []
    for k in range(deg, -1, -1):
        c = coeffs_map.get(k)
        coeffs.append(c.constant_value() if c is not None else ZERO)
    roots = analytic.complex_roots(coeffs, prec)
    out = []
    for r in roots:
        cand = _recognize_gaussian(r, prec)
        if cand is not None:
            residue = poly.eval_exact({var: cand})
            if not residue.is_zero:
                cand = None
        out.append((r, cand))
    return out


def singular_points(F, prec=analytic.DEFAULT_PRECISION):
    """All common zeros of (A, B) in the affine chart.

    Exact Q(i) points are found by resultant elimination plus root
    recognition and verified by exact substitution; leftovers are reported
    numerically.  The scan's .complete flag is False when any pairing could
    not be decided with a clear margin.
    """
    from mpmath import mp, mpf

    A, B = F.A, F.B
    if A.is_zero or B.is_zero:
        # gcd(A, B) = 1 with one side zero means the other is constant.
        return SingularScan([], True)
    res_y = A.resultant(B, "y")
    res_x = A.resultant(B, "x")
    if res_y.is_zero or res_x.is_zero:
        raise NonReducedError("A and B share a curve of zeros")

    x_candidates = _univariate_root_values(res_y, "x", prec)
    y_candidates = _univariate_root_values(res_x, "y", prec)
    points = []
    complete = True
    seen_exact = set()
    with mp.workprec(prec):
        zero_tol = mpf(10) ** -30
        gap_tol = mpf(10) ** -10
        for xv, xe in x_candidates:
            for yv, ye in y_candidates:
                if xe is not None and ye is not None:
                    if (xe, ye) in seen_exact:
                        continue
                    if A.eval_exact({"x": xe, "y": ye}).is_zero and B.eval_exact(
                        {"x": xe, "y": ye}
                    ).is_zero:
                        seen_exact.add((xe, ye))
                        nu = _tangency_order_or_none(F, (xe, ye))
                        points.append(
                            SingularPoint("affine", (xe, ye), nu=nu, exact=True)
                        )
                    continue
                pt = {"x": xv.value, "y": yv.value}
                va = abs(A.eval_numeric(pt))
                vb = abs(B.eval_numeric(pt))
                if va < zero_tol and vb < zero_tol:
                    if any(
                        abs(prev.coords[0] - xv.value) < gap_tol
                        and abs(prev.coords[1] - yv.value) < gap_tol
                        for prev in points
                        if prev.kind == "affine" and not prev.exact
                    ):
                        continue
                    points.append(
                        SingularPoint(
                            "affine",
                            (xv, yv),
                            nu=None,
                            exact=False,
                        )
                    )
                elif min(va, vb) < gap_tol:
                    complete = False
    return SingularScan(points, complete)


# -- invariant lines and convexity ------------------------------------------


def _line_data(line):
    """Coefficients (a, b, c) of a linear polynomial a*x + b*y + c."""
    line = _as_xy(line)
    if line.total_degree() != 1:
        raise UndefinedInputError(f"not a line: {line}")
    a = line.terms.get((1, 0), ZERO)
    b = line.terms.get((0, 1), ZERO)
    c = line.terms.get((0, 0), ZERO)
    return a, b, c


def is_invariant_line(F, line):
    """True iff the line is invariant by the foliation.

    Pass LINE_AT_INFINITY to test the line at infinity (checked in chart 1,
    where it becomes {x = 0}).
    """
    if isinstance(line, str) and line == LINE_AT_INFINITY:
        return is_invariant_line(to_infinity_chart(F), Poly.var("x", _XY))
    a, b, c = _line_data(line)
    x = Poly.var("x", _XY)
    y = Poly.var("y", _XY)
    if not b.is_zero:
        # parametrize x = t, y = -(a t + c)/b; tangent (1, -a/b); clear b
        ysub = (x.scale(a) + Poly.const(c, _XY)).scale(-(b.inverse()))
        restricted = F.A.substitute({"y": ysub}) * b - F.B.substitute({"y": ysub}) * a
    else:
        xval = -(c / a)
        restricted = F.B.substitute({"x": Poly.const(xval, _XY)})
    return restricted.is_zero


def inflection_polynomial(F):
    """Polynomial cutting the inflection locus union the linear leaves.

    E = A * X(B) - B * X(A) for the tangent field X = B d/dx - A d/dy;
    identically zero iff every leaf is a line.
    """
    A, B = F.A, F.B

    def X(g):
        return B * g.derivative("x") - A * g.derivative("y")

    return A * X(B) - B * X(A)


def _divide_out_max_power(poly, divisor):
    k = 0
    while True:
        q = poly.exact_div(divisor)
        if q is None:
            return poly, k
        poly = q
        k += 1


def line_image_in_chart1(line):
    """Image of an affine line (or L-infinity) in chart 1; None if invisible."""
    if isinstance(line, str) and line == LINE_AT_INFINITY:
        return Poly.var("x", _XY)
    a, b, c = _line_data(line)
    # a*X + b*Y + c*Z = 0 with [X:Y:Z] = [1 : v : u], (u, v) named (x, y)
    img = Poly(
        _XY, {(1, 0): c, (0, 1): b, (0, 0): a}
    )
    if img.is_constant:
        return None
    return img


def is_convex(F, candidate_lines):
    """True iff the inflection divisor is exhausted by the candidate lines.

    The candidates must all be invariant lines of F (LINE_AT_INFINITY
    allowed).  The test divides the inflection polynomial by maximal powers
    of each affine candidate and requires a constant quotient, then repeats
    in chart 1 so components along the line at infinity are seen too.
    """
    for line in candidate_lines:
        if not is_invariant_line(F, line):
            name = line if isinstance(line, str) else str(line)
            raise InvariantViolation(f"declared line is not invariant: {name}")

    E = inflection_polynomial(F)
    if E.is_zero:
        return True
    for line in candidate_lines:
        if isinstance(line, str):
            continue
        E, _ = _divide_out_max_power(E, line)
    if not E.is_constant:
        return False

    E1 = inflection_polynomial(to_infinity_chart(F))
    if E1.is_zero:
        return True
    for line in candidate_lines:
        img = line_image_in_chart1(line)
        if img is not None:
            E1, _ = _divide_out_max_power(E1, img)
    return E1.is_constant


# -- tangency orders and radial singularities ---------------------------------


def _tangency_order_or_none(F, s):
    try:
        return tangency_order(F, s)
    except RadialPencilError:
        return None


def tangency_order(F, s):
    """Tangency order nu of the foliation with a generic line through s.

    s must be an exact affine singular point.  nu = mult_s(T_s) - 1 where
    T_s = A (x - s1) + B (y - s2); the multiplicity is the lowest total
    degree after shifting s to the origin.
    """
    s1, s2 = (GaussianRational(Fraction(v)) if not isinstance(v, GaussianRational) else v for v in s)
    if not (
        F.A.eval_exact({"x": s1, "y": s2}).is_zero
        and F.B.eval_exact({"x": s1, "y": s2}).is_zero
    ):
        raise InvariantViolation(f"({s1}, {s2}) is not a singular point")
    x = Poly.var("x", _XY)
    y = Poly.var("y", _XY)
    T = F.A * (x - Poly.const(s1, _XY)) + F.B * (y - Poly.const(s2, _XY))
    if T.is_zero:
        raise RadialPencilError("foliation is the radial pencil centred at s")
    shifted = T.substitute(
        {"x": x + Poly.const(s1, _XY), "y": y + Poly.const(s2, _XY)}
    )
    mult = min(sum(e) for e in shifted.terms)
    return mult - 1


def radial_singularities(F, prec=analytic.DEFAULT_PRECISION):
    """Singular points with nu >= 2 in all charts, with their orders nu - 1.

    Returns a list of (SingularPoint, order) pairs.  Infinite points are
    found in chart 1; the vertical direction [0:1:0] (missed by chart 1) is
    checked in chart 2.
    """
    out = []
    for pt in singular_points(F, prec=prec):
        if pt.exact and pt.nu is not None and pt.nu >= 2:
            out.append((pt, pt.nu - 1))

    F1 = to_infinity_chart(F)
    for pt in singular_points(F1, prec=prec):
        if not pt.exact or pt.coords[0] != GaussianRational(0):
            continue  # only points on {u = 0} are new
        if pt.nu is not None and pt.nu >= 2:
            slope = pt.coords[1]
            out.append(
                (SingularPoint("direction", slope, nu=pt.nu, exact=True), pt.nu - 1)
            )

    F2 = to_second_infinity_chart(F)
    origin = (GaussianRational(0), GaussianRational(0))
    if F2.A.eval_exact({"x": origin[0], "y": origin[1]}).is_zero and F2.B.eval_exact(
        {"x": origin[0], "y": origin[1]}
    ).is_zero:
        nu = _tangency_order_or_none(F2, origin)
        if nu is not None and nu >= 2:
            out.append((SingularPoint("vertical-direction", None, nu=nu), nu - 1))
    return out


# -- chart changes ----------------------------------------------------------


def _chart_substitute(poly, mode):
    """u^m * P(1/u, v/u) (mode 1) or t^m * P(s/t, 1/t) (mode 2), m = total deg."""
    m = max(poly.total_degree(), 0)
    terms = {}
    for (a, b), c in poly.terms.items():
        if mode == 1:
            e = (m - a - b, b)  # u^(m-a-b) v^b
        else:
            e = (a, m - a - b)  # s^a t^(m-a-b)
        terms[e] = terms.get(e, ZERO) + c
    return Poly(_XY, terms)


def to_infinity_chart(F):
    """The foliation in chart 1, (u, v) = (1/x, y/x), common factors cleared."""
    m = F.form_degree()
    A_h = _chart_substitute(F.A.with_vars(_XY), 1)
    B_h = _chart_substitute(F.B.with_vars(_XY), 1)
    v = Poly.var("y", _XY)
    u = Poly.var("x", _XY)
    A_new = -A_h - v * B_h
    B_new = u * B_h
    return _cleared(A_new, B_new)


def to_second_infinity_chart(F):
    """The foliation in chart 2, (s, t) = (x/y, 1/y), common factors cleared."""
    A_h = _chart_substitute(F.A.with_vars(_XY), 2)
    B_h = _chart_substitute(F.B.with_vars(_XY), 2)
    s = Poly.var("x", _XY)
    t = Poly.var("y", _XY)
    A_new = t * A_h
    B_new = -s * A_h - B_h
    return _cleared(A_new, B_new)


def _cleared(A, B):
    g = A.gcd(B)
    if not g.is_constant:
        A = A.exact_div(g)
        B = B.exact_div(g)
    return AffineFoliation(A, B)


# -- pre-foliations -----------------------------------------------------------


@dataclass
class PreFoliation:
    """A reduced curve (product of lines here) together with a foliation.

    curve is the affine curve polynomial (constant 1 when the curve is empty
    or is just the line at infinity); include_infinity records whether the
    line at infinity belongs to the curve.  curve_lines keeps the individual
    affine line factors for provenance.
    """

    curve: Poly
    foliation: AffineFoliation
    include_infinity: bool = False
    curve_lines: list = field(default_factory=list)

    def __post_init__(self):
        self.curve = _as_xy(self.curve)
        if self.curve.is_zero:
            raise UndefinedInputError("curve polynomial must be nonzero")
        if self.curve.squarefree_part() != self.curve.monic():
            raise NonReducedError("curve polynomial is not squarefree")

    @classmethod
    def from_lines(cls, lines, foliation):
        """Build from a list of line polynomials, LINE_AT_INFINITY allowed."""
        affine = []
        include_inf = False
        for line in lines:
            if isinstance(line, str) and line == LINE_AT_INFINITY:
                if include_inf:
                    raise NonReducedError("line at infinity listed twice")
                include_inf = True
            else:
                affine.append(_as_xy(line))
        curve = Poly.const(1, _XY)
        for line in affine:
            curve = curve * line
        return cls(curve, foliation, include_inf, affine)

    @property
    def codegree(self):
        k = self.curve.total_degree()
        if k < 0:
            k = 0
        return k + (1 if self.include_infinity else 0)

    @property
    def degree(self):
        return self.codegree + foliation_degree(self.foliation)

    def validate_invariance(self):
        """Check every declared curve line is invariant; raise naming the line."""
        for line in self.curve_lines:
            if not is_invariant_line(self.foliation, line):
                raise InvariantViolation(f"declared curve line is not invariant: {line}")
        if self.include_infinity and not is_invariant_line(
            self.foliation, LINE_AT_INFINITY
        ):
            raise InvariantViolation("declared curve line is not invariant: Linf")

    def is_homogeneous(self):
        """Invariant under (x, y) -> lambda (x, y): homogeneous A, B of equal
        degree with x A + y B proportional-free... operationally: both A and B
        homogeneous of the same total degree and all curve lines through O."""
        A, B = self.foliation.A, self.foliation.B
        if not (A.is_homogeneous() and B.is_homogeneous()):
            return False
        da, db = A.total_degree(), B.total_degree()
        if da >= 0 and db >= 0 and da != db:
            return False
        for line in self.curve_lines:
            if not line.terms.get((0, 0), ZERO).is_zero:
                return False
        return True
