"""Arbitrary-precision complex numerics and truncated bivariate series jets.

Built on mpmath.  Precision is always carried explicitly (bits); every
public operation runs under ``mp.workprec`` of the relevant precision, so
the ambient mpmath state never leaks in.  Jets are truncated Taylor
expansions in the offsets (u, v) = (p - p0, q - q0) around a base point;
the truncation order is tracked through every operation and derivatives
lose one order.

Within one parallel region all tasks share a single precision; the
precision is fixed before any fan-out (mpmath's context is process-global).
"""

from __future__ import annotations

from functools import lru_cache

import mpmath
from mpmath import mp, mpf, mpc

from .errors import DiscriminantProximityError, PrecisionError, UndefinedInputError

DEFAULT_PRECISION = 256
DEFAULT_ORDER = 6


def working_precision(bits):
    """Context manager pinning the mpmath working precision in bits."""
    return mp.workprec(bits)


def _raw(value, prec):
    """Coerce scalars (BigComplex, GaussianRational, int, ...) to raw mpc."""
    if isinstance(value, BigComplex):
        return value.value
    if isinstance(value, (mpc, mpf)):
        return mpc(value)
    if isinstance(value, (int, float, complex)):
        return mpc(value)
    # GaussianRational and Fraction: exact quotient at the working precision
    if hasattr(value, "re") and hasattr(value, "im"):
        with mp.workprec(prec):
            re = mpf(value.re.numerator) / mpf(value.re.denominator)
            im = mpf(value.im.numerator) / mpf(value.im.denominator)
            return mpc(re, im)
    if hasattr(value, "numerator"):
        with mp.workprec(prec):
            return mpc(mpf(value.numerator) / mpf(value.denominator))
    raise TypeError(f"cannot coerce {type(value).__name__} to a complex number")


class BigComplex:
    """A complex number at an explicit binary precision."""

    __slots__ = ("value", "prec")

    def __init__(self, value=0, prec=DEFAULT_PRECISION):
        self.prec = prec
        self.value = _raw(value, prec)

    @property
    def re(self):
        return self.value.real

    @property
    def im(self):
        return self.value.imag

    def _binary(self, other, op):
        if isinstance(other, BigComplex):
            prec = min(self.prec, other.prec)
            rhs = other.value
        else:
            prec = self.prec
            rhs = _raw(other, prec)
        with mp.workprec(prec):
            return BigComplex(op(self.value, rhs), prec)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: b / a)

    def __neg__(self):
        return BigComplex(-self.value, self.prec)

    def __abs__(self):
        with mp.workprec(self.prec):
            return abs(self.value)

    def __eq__(self, other):
        if isinstance(other, BigComplex):
            return self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        with mp.workprec(self.prec):
            return f"BigComplex({mpmath.nstr(self.value, 12)}, prec={self.prec})"


# -- monomial bookkeeping for jets --------------------------------------------


@lru_cache(maxsize=None)
def _monomials(order):
    """(a, b) exponent pairs with a+b <= order, graded, a descending."""
    return tuple((a, t - a) for t in range(order + 1) for a in range(t, -1, -1))


@lru_cache(maxsize=None)
def _index(order):
    return {ab: k for k, ab in enumerate(_monomials(order))}


@lru_cache(maxsize=None)
def _mult_pairs(out_order, order_a, order_b):
    """Contraction triples (i, j, k): monomial i of a times j of b lands at k."""
    idx = _index(out_order)
    mons_a = _monomials(order_a)
    mons_b = _monomials(order_b)
    pairs = []
    for i, (a1, b1) in enumerate(mons_a):
        for j, (a2, b2) in enumerate(mons_b):
            if a1 + a2 + b1 + b2 <= out_order:
                pairs.append((i, j, idx[(a1 + a2, b1 + b2)]))
    return tuple(pairs)


class SeriesJet:
    """Truncated Taylor expansion around a base point of the (p, q) plane."""

    __slots__ = ("base", "order", "prec", "_c")

    def __init__(self, base, order, prec, coeffs):
        self.base = base
        self.order = order
        self.prec = prec
        if isinstance(coeffs, dict):
            flat = [mpc(0)] * len(_monomials(order))
            idx = _index(order)
            for ab, c in coeffs.items():
                flat[idx[ab]] = _raw(c, prec)
            self._c = flat
        else:
            self._c = list(coeffs)

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, value, base, order, prec):
        flat = [mpc(0)] * len(_monomials(order))
        flat[0] = _raw(value, prec)
        return cls(base, order, prec, flat)

    @classmethod
    def offset(cls, which, base, order, prec):
        """The coordinate offset u (which='p') or v (which='q') as a jet."""
        if order < 1:
            raise ValueError("offset jet needs order >= 1")
        flat = [mpc(0)] * len(_monomials(order))
        idx = _index(order)
        flat[idx[(1, 0) if which == "p" else (0, 1)]] = mpc(1)
        return cls(base, order, prec, flat)

    # -- accessors -----------------------------------------------------------

    @property
    def coefficients(self):
        """Coefficient map (a, b) -> BigComplex, per the public contract."""
        return {
            ab: BigComplex(c, self.prec)
            for ab, c in zip(_monomials(self.order), self._c)
        }

    def coefficient(self, a, b):
        return BigComplex(self._c[_index(self.order)[(a, b)]], self.prec)

    def constant_term(self):
        return BigComplex(self._c[0], self.prec)

    def max_abs(self):
        with mp.workprec(self.prec):
            return max(abs(c) for c in self._c)

    def homogeneous_slice(self, t):
        """Indices and coefficients of total degree t."""
        return [
            (k, ab) for k, ab in enumerate(_monomials(self.order)) if sum(ab) == t
        ]

    # -- arithmetic ---------------------------------------------------------

    def _common(self, other):
        if not isinstance(other, SeriesJet):
            other = SeriesJet.constant(other, self.base, self.order, self.prec)
        if self.prec != other.prec:
            raise ValueError("jets have different precisions")
        order = min(self.order, other.order)
        return self.truncated(order), other.truncated(order), order

    def truncated(self, order):
        if order == self.order:
            return self
        if order > self.order:
            raise ValueError("cannot extend a jet beyond its valid order")
        n = len(_monomials(order))
        keep = _index(self.order)
        idx = [keep[ab] for ab in _monomials(order)]
        return SeriesJet(self.base, order, self.prec, [self._c[k] for k in idx])

    def __add__(self, other):
        a, b, order = self._common(other)
        with mp.workprec(self.prec):
            return SeriesJet(
                self.base, order, self.prec, [x + y for x, y in zip(a._c, b._c)]
            )

    __radd__ = __add__

    def __sub__(self, other):
        a, b, order = self._common(other)
        with mp.workprec(self.prec):
            return SeriesJet(
                self.base, order, self.prec, [x - y for x, y in zip(a._c, b._c)]
            )

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return SeriesJet(self.base, self.order, self.prec, [-c for c in self._c])

    def scaled(self, value):
        s = _raw(value, self.prec)
        with mp.workprec(self.prec):
            return SeriesJet(self.base, self.order, self.prec, [c * s for c in self._c])

    def __mul__(self, other):
        a, b, order = self._common(other)
        pairs = _mult_pairs(order, order, order)
        out = [mpc(0)] * len(_monomials(order))
        ac, bc = a._c, b._c
        with mp.workprec(self.prec):
            for i, j, k in pairs:
                ci = ac[i]
                if ci:
                    cj = bc[j]
                    if cj:
                        out[k] = out[k] + ci * cj
        return SeriesJet(self.base, order, self.prec, out)

    __rmul__ = __mul__

    def derivative(self, which):
        """d/dp or d/dq (i.e. d/du, d/dv); the order drops by one."""
        if self.order < 1:
            raise ValueError("cannot differentiate an order-0 jet")
        order = self.order - 1
        idx_src = _index(self.order)
        out = []
        for a, b in _monomials(order):
            if which == "p":
                src = idx_src[(a + 1, b)]
                factor = a + 1
            else:
                src = idx_src[(a, b + 1)]
                factor = b + 1
            out.append(self._c[src] * factor)
        return SeriesJet(self.base, order, self.prec, out)

    def inverse(self):
        return series_inverse(self)

    def __truediv__(self, other):
        if not isinstance(other, SeriesJet):
            with mp.workprec(self.prec):
                return self.scaled(1 / _raw(other, self.prec))
        a, b, _ = self._common(other)
        return a * b.inverse()


def series_inverse(s):
    """Multiplicative inverse of a jet with nonzero constant term."""
    c0 = s._c[0]
    if not c0:
        raise ZeroDivisionError("series has zero constant term")
    order, prec = s.order, s.prec
    mons = _monomials(order)
    idx = _index(order)
    with mp.workprec(prec):
        inv0 = 1 / c0
        out = [mpc(0)] * len(mons)
        out[0] = inv0
        for k, (a, b) in enumerate(mons):
            if a == b == 0:
                continue
            acc = mpc(0)
            # sum over s[(c,d)] * out[(a-c, b-d)] with (c,d) != (0,0)
            for m, (c, d) in enumerate(mons):
                if 0 < c + d and c <= a and d <= b:
                    sc = s._c[m]
                    if sc:
                        acc += sc * out[idx[(a - c, b - d)]]
            out[k] = -inv0 * acc
    return SeriesJet(s.base, order, prec, out)


class SlopeJet:
    """A branch slope x_i(p, q) of an implicit web as a jet, plus its root."""

    __slots__ = ("jet", "root_value")

    def __init__(self, jet, root_value):
        self.jet = jet
        self.root_value = root_value

    @property
    def base(self):
        return self.jet.base

    def __repr__(self):
        return f"SlopeJet(root={self.root_value!r}, order={self.jet.order})"


# -- polynomial -> jet ---------------------------------------------------------


def poly_jet(poly, base, order, prec, var_pair=("p", "q")):
    """Expand an exact polynomial around base = (p0, q0) as a SeriesJet.

    Variables outside var_pair must not occur in poly.
    """
    pn, qn = var_pair
    extra = poly.used_vars() - {pn, qn}
    if extra:
        raise ValueError(f"polynomial still depends on {sorted(extra)}")
    with mp.workprec(prec):
        one = SeriesJet.constant(1, base, order, prec)
        pj = SeriesJet.offset("p", base, order, prec) + SeriesJet.constant(
            _raw(base[0], prec), base, order, prec
        )
        qj = SeriesJet.offset("q", base, order, prec) + SeriesJet.constant(
            _raw(base[1], prec), base, order, prec
        )
        powers = {pn: {0: one}, qn: {0: one}}
        bases = {pn: pj, qn: qj}

        def power(v, k):
            cache = powers[v]
            while k not in cache:
                top = max(cache)
                cache[top + 1] = cache[top] * bases[v]
            return cache[k]

        result = SeriesJet.constant(0, base, order, prec)
        for exps, c in poly.terms.items():
            term = SeriesJet.constant(_raw(c, prec), base, order, prec)
            for v, k in zip(poly.vars, exps):
                if k:
                    term = term * power(v, k)
            result = result + term
    return result


# -- root extraction and branch lifting ---------------------------------------


def complex_roots(coeffs, precision=DEFAULT_PRECISION, max_steps=200):
    """All complex roots (with multiplicity) of a polynomial.

    coeffs are descending-degree (leading first), any scalar type accepted;
    the leading coefficient must be nonzero.  Roots come back as BigComplex
    at the requested precision, sorted by (real, imaginary) part.
    """
    if len(coeffs) < 2:
        raise UndefinedInputError("need a polynomial of positive degree")
    with mp.workprec(precision):
        raw = [_raw(c, precision) for c in coeffs]
        if not raw[0]:
            raise UndefinedInputError("leading coefficient is zero")
        if len(raw) == 2:
            roots = [-raw[1] / raw[0]]
        else:
            try:
                roots = mpmath.polyroots(
                    raw, maxsteps=max_steps, extraprec=precision // 2
                )
            except mpmath.libmp.libhyper.NoConvergenceError as exc:
                raise PrecisionError(
                    f"root finding did not converge at {precision} bits: {exc}"
                ) from exc
        roots = sorted((mpc(r) for r in roots), key=lambda z: (z.real, z.imag))
    return [BigComplex(r, precision) for r in roots]


def _web_coeff_jets(web_poly, base, order, prec, slope_var="x", var_pair=("p", "q")):
    """Jets of the slope-variable coefficients a_k(p, q), as {k: SeriesJet}."""
    return {
        k: poly_jet(c, base, order, prec, var_pair)
        for k, c in web_poly.coeffs_in(slope_var).items()
    }


def _horner(coeff_jets, x, base, order, prec):
    """Evaluate sum a_k * x^k for jet (or scalar-jet) x."""
    deg = max(coeff_jets)
    acc = coeff_jets.get(deg)
    if acc is None:
        acc = SeriesJet.constant(0, base, order, prec)
    for k in range(deg - 1, -1, -1):
        acc = acc * x
        if k in coeff_jets:
            acc = acc + coeff_jets[k]
    return acc


def newton_lift_branch(
    web,
    base,
    x0,
    order=DEFAULT_ORDER,
    prec=DEFAULT_PRECISION,
    residual_tol=None,
    derivative_floor=1e-6,
):
    """Lift one slope root of an implicit web to a jet around a generic base.

    Solves F(p, q, x(p, q)) = 0 order by order: once the jet is correct
    through total degree k, the degree-(k+1) residual slice is linear in the
    unknown slice with constant factor dF/dx at the root, so each slice is a
    scalar division.  Raises DiscriminantProximityError when dF/dx at the
    root is below derivative_floor, PrecisionError when the final residual
    exceeds residual_tol (default 2^(-prec/2)).
    """
    from .legendre import ImplicitWeb

    web_poly = web.poly if isinstance(web, ImplicitWeb) else web
    if residual_tol is None:
        residual_tol = mpf(2) ** (-(prec // 2))
    with mp.workprec(prec):
        x0 = _raw(x0, prec)
        coeff_polys = web_poly.coeffs_in("x")
        deg = max(coeff_polys)
        point = {"p": _raw(base[0], prec), "q": _raw(base[1], prec)}
        scalar_coeffs = {k: c.eval_numeric(point) for k, c in coeff_polys.items()}

        def f_scalar(z):
            acc = mpc(0)
            for k in range(deg, -1, -1):
                acc = acc * z + scalar_coeffs.get(k, mpc(0))
            return acc

        def fprime_scalar(z):
            acc = mpc(0)
            for k in range(deg, 0, -1):
                acc = acc * z + k * scalar_coeffs.get(k, mpc(0))
            return acc

        # polish the root before expanding
        for _ in range(64):
            fv = f_scalar(x0)
            if abs(fv) < mpf(2) ** (-prec + 8):
                break
            dv = fprime_scalar(x0)
            if abs(dv) < derivative_floor:
                raise DiscriminantProximityError(
                    "dF/dx nearly vanishes at the root; base too close to the discriminant"
                )
            x0 = x0 - fv / dv
        d0 = fprime_scalar(x0)
        if abs(d0) < derivative_floor:
            raise DiscriminantProximityError(
                "dF/dx nearly vanishes at the root; base too close to the discriminant"
            )
        if abs(f_scalar(x0)) > residual_tol:
            raise PrecisionError("root refinement stalled above the residual tolerance")

        coeff_jets = _web_coeff_jets(web_poly, base, order, prec)
        idx = _index(order)
        mons = _monomials(order)
        xc = [mpc(0)] * len(mons)
        xc[0] = x0
        inv_d0 = 1 / d0
        for t in range(1, order + 1):
            xjet = SeriesJet(base, order, prec, list(xc))
            residual = _horner(coeff_jets, xjet, base, order, prec)
            for k, (a, b) in enumerate(mons):
                if a + b == t:
                    xc[k] = xc[k] - residual._c[k] * inv_d0
        xjet = SeriesJet(base, order, prec, xc)
        residual = _horner(coeff_jets, xjet, base, order, prec)
        if residual.max_abs() > residual_tol:
            raise PrecisionError(
                f"branch lift residual {mpmath.nstr(residual.max_abs(), 6)} "
                f"exceeds tolerance at {prec} bits"
            )
    return SlopeJet(xjet, BigComplex(x0, prec))
