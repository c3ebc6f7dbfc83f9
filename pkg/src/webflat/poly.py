"""Multivariate polynomials over the Gaussian rationals.

A :class:`Poly` is a sparse term map ``exponent tuple -> GaussianRational``
together with an ordered variable tuple.  Everything is immutable after
construction and exact.  Ring arithmetic, substitution, derivatives and exact
trial division are implemented natively; gcd, resultants and squarefree parts
are delegated to sympy's QQ_I polynomial domain behind the same interface
(the heavy classical algorithms are not re-derived here).

Canonical variable order is x, y, p, q first, then anything else
alphabetically.  The canonical term order is graded lexicographic on the
exponent tuples, largest first; "monic" normalisation divides by the leading
coefficient in that order.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UndefinedInputError
from .gauss import GaussianRational, ZERO, ONE

_VAR_RANK = {"x": 0, "y": 1, "p": 2, "q": 3}


def _var_key(name):
    return (_VAR_RANK.get(name, 4), name)


def _coerce_scalar(c):
    if isinstance(c, GaussianRational):
        return c
    if isinstance(c, (int, Fraction)):
        return GaussianRational(c)
    raise TypeError(f"cannot use {type(c).__name__} as a polynomial coefficient")


class Poly:
    """Sparse multivariate polynomial over Q(i)."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms):
        self.vars = tuple(vars)
        clean = {}
        for exps, c in terms.items():
            c = _coerce_scalar(c)
            if not c.is_zero:
                clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, vars=()):
        return cls(vars, {})

    @classmethod
    def const(cls, c, vars=()):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): _coerce_scalar(c)})

    @classmethod
    def var(cls, name, vars=None):
        if vars is None:
            vars = (name,)
        vars = tuple(vars)
        exps = tuple(1 if v == name else 0 for v in vars)
        if name not in vars:
            raise ValueError(f"variable {name!r} not among {vars}")
        return cls(vars, {exps: ONE})

    @classmethod
    def parse(cls, text, vars=None):
        from .grammar import parse_poly

        return parse_poly(text, vars=vars)

    # -- structure --------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        """The value of a constant polynomial (zero if empty)."""
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        if not self.terms:
            return ZERO
        return next(iter(self.terms.values()))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var):
        if var not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def used_vars(self):
        used = set()
        for e in self.terms:
            for v, k in zip(self.vars, e):
                if k:
                    used.add(v)
        return used

    def sorted_terms(self):
        """Terms in the canonical (graded lex, descending) order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_terms()[0]

    def monic(self):
        """Divide by the leading coefficient in the canonical term order."""
        if not self.terms:
            return self
        _, lc = self.leading_term()
        inv = lc.inverse()
        return Poly(self.vars, {e: c * inv for e, c in self.terms.items()})

    def coeffs_in(self, var):
        """Map deg -> coefficient Poly (same variable tuple, var removed)."""
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            reduced = e[:i] + (0,) + e[i + 1 :]
            out.setdefault(k, {})[reduced] = out.setdefault(k, {}).get(reduced, ZERO) + c
        return {k: Poly(self.vars, t) for k, t in out.items()}

    def leading_coeff_in(self, var):
        d = self.degree_in(var)
        if d <= 0 and var not in self.used_vars():
            return self
        return self.coeffs_in(var)[d]

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    # -- variable management ----------------------------------------------

    def with_vars(self, vars):
        """Re-express over a superset of variables (canonically ordered)."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        missing = set(self.used_vars()) - set(vars)
        if missing:
            raise ValueError(f"cannot drop used variables {missing}")
        pos = {v: i for i, v in enumerate(vars)}
        terms = {}
        for e, c in self.terms.items():
            new = [0] * len(vars)
            for v, k in zip(self.vars, e):
                if k:
                    new[pos[v]] = k
            terms[tuple(new)] = terms.get(tuple(new), ZERO) + c
        return Poly(vars, terms)

    def _unioned(self, other):
        if self.vars == other.vars:
            return self, other
        union = tuple(sorted(set(self.vars) | set(other.vars), key=_var_key))
        return self.with_vars(union), other.with_vars(union)

    def canonical(self):
        """Prune unused variables and order the rest canonically."""
        used = sorted(self.used_vars(), key=_var_key)
        pos = [self.vars.index(v) for v in used]
        terms = {tuple(e[i] for i in pos): c for e, c in self.terms.items()}
        return Poly(tuple(used), terms)

    # -- ring arithmetic ----------------------------------------------------

    @staticmethod
    def _coerce(value, like):
        if isinstance(value, Poly):
            return value
        if isinstance(value, (int, Fraction, GaussianRational)):
            return Poly.const(value, like.vars)
        return None

    def __add__(self, other):
        other = self._coerce(other, self)
        if other is None:
            return NotImplemented
        a, b = self._unioned(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms.get(e, ZERO) + c
        return Poly(a.vars, terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other, self)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other, self)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other, self)
        if other is None:
            return NotImplemented
        a, b = self._unioned(other)
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                prod = c1 * c2
                if e in terms:
                    terms[e] = terms[e] + prod
                else:
                    terms[e] = prod
        return Poly(a.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        c = _coerce_scalar(c)
        return Poly(self.vars, {e: v * c for e, v in self.terms.items()})

    def __eq__(self, other):
        other = self._coerce(other, self)
        if other is None:
            return NotImplemented
        a, b = self._unioned(other)
        return a.terms == b.terms

    def __hash__(self):
        c = self.canonical()
        return hash((c.vars, frozenset(c.terms.items())))

    def __bool__(self):
        return not self.is_zero

    # -- calculus and evaluation ---------------------------------------------

    def derivative(self, var):
        if var not in self.vars:
            return Poly.zero(self.vars)
        i = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1 :]
                terms[ne] = terms.get(ne, ZERO) + c * k
        return Poly(self.vars, terms)

    def substitute(self, mapping):
        """Substitute polynomials/scalars for variables; others stay symbolic."""
        mapping = {
            v: (r if isinstance(r, Poly) else Poly.const(r, self.vars))
            for v, r in mapping.items()
        }
        base_vars = set(self.vars) - set(mapping)
        for r in mapping.values():
            base_vars |= r.used_vars()
        out_vars = tuple(sorted(base_vars, key=_var_key))
        result = Poly.zero(out_vars)
        powers = {v: {0: Poly.const(1, out_vars)} for v in self.vars}

        def power(v, k):
            cache = powers[v]
            if k not in cache:
                if v in mapping:
                    base = mapping[v]
                else:
                    base = Poly.var(v, out_vars) if v in out_vars else Poly.const(0, out_vars)
                cache[k] = power(v, k - 1) * base
            return cache[k]

        for e, c in self.terms.items():
            term = Poly.const(c, out_vars)
            for v, k in zip(self.vars, e):
                if k:
                    term = term * power(v, k)
            result = result + term
        return result

    def eval_exact(self, point):
        """Evaluate at a full Q(i) point given as {var: scalar}."""
        value = ZERO
        for e, c in self.terms.items():
            term = c
            for v, k in zip(self.vars, e):
                if k:
                    term = term * (_coerce_scalar(point[v]) ** k)
            value = value + term
        return value

    def eval_numeric(self, point):
        """Evaluate at {var: mpmath number}; honours the ambient precision."""
        value = 0
        for e, c in self.terms.items():
            term = _to_mpc(c)
            for v, k in zip(self.vars, e):
                if k:
                    term = term * point[v] ** k
            value = value + term
        return value

    # -- division, gcd, resultants -------------------------------------------

    def exact_div(self, divisor):
        """Exact quotient self/divisor, or None when not divisible."""
        divisor = self._coerce(divisor, self)
        if divisor is None or divisor.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero:
            return Poly.zero(self.vars)
        if divisor.is_constant:
            return self.scale(divisor.constant_value().inverse())
        a, b = self._unioned(divisor)
        main = next(v for v in a.vars if b.degree_in(v) > 0)
        db = b.degree_in(main)
        bc = b.coeffs_in(main)
        blead = bc[db]
        i = a.vars.index(main)

        remainder = a
        quotient = Poly.zero(a.vars)
        while not remainder.is_zero:
            da = remainder.degree_in(main)
            if da < db:
                return None
            rlead = remainder.coeffs_in(main)[da]
            q = rlead.exact_div(blead)
            if q is None:
                return None
            shift = {(0,) * i + (da - db,) + (0,) * (len(a.vars) - i - 1): ONE}
            qterm = q * Poly(a.vars, shift)
            quotient = quotient + qterm
            remainder = remainder - qterm * b
        return quotient

    def divides(self, other):
        return other.exact_div(self) is not None

    def gcd(self, other):
        """A gcd, monic in the canonical term order (gcd(0,0) = 0)."""
        other = self._coerce(other, self)
        if self.is_zero and other.is_zero:
            return Poly.zero(self.vars)
        if self.is_zero:
            return other.monic()
        if other.is_zero:
            return self.monic()
        a, b = self._unioned(other)
        if not a.vars:
            return Poly.const(1)
        sa, sb, gens = _sympy_pair(a, b)
        return _from_sympy(sa.gcd(sb), a.vars).monic()

    def resultant(self, other, var):
        """Sylvester resultant eliminating var (f's coefficients in top rows)."""
        other = self._coerce(other, self)
        if self.is_zero and other.is_zero:
            raise UndefinedInputError("resultant of two zero polynomials")
        a, b = self._unioned(other)
        if var not in a.vars:
            a = a.with_vars(tuple(sorted(set(a.vars) | {var}, key=_var_key)))
            b = b.with_vars(a.vars)
        m, n = a.degree_in(var), b.degree_in(var)
        if m <= 0 and n <= 0:
            # Degenerate: constants in var; Res is an empty determinant = 1,
            # unless one side is zero.
            if a.is_zero or b.is_zero:
                return Poly.zero(a.vars)
            return Poly.const(1, a.vars)
        sa, sb, gens = _sympy_pair(a, b, main=var)
        import sympy

        r = sympy.resultant(sa, sb, sympy.Symbol(var))
        rp = sympy.Poly(r, *[sympy.Symbol(v) for v in a.vars], domain="QQ_I")
        return _from_sympy(rp, a.vars)

    def squarefree_part(self):
        """The product of the distinct irreducible factors, monic."""
        if self.is_zero:
            return self
        if self.is_constant:
            return Poly.const(1, self.vars)
        # gcd(f, all partials) collects each factor to multiplicity - 1.
        g = None
        for v in sorted(self.used_vars(), key=_var_key):
            d = self.derivative(v)
            g = d if g is None else g.gcd(d)
        g = self.gcd(g)
        if g.is_constant:
            return self.monic()
        q = self.exact_div(g)
        return q.monic()

    # -- display ---------------------------------------------------------

    def __str__(self):
        from .grammar import poly_text

        return poly_text(self)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def _to_mpc(c):
    from mpmath import mpf, mpc

    return mpc(
        mpf(c.re.numerator) / mpf(c.re.denominator),
        mpf(c.im.numerator) / mpf(c.im.denominator),
    )


# -- sympy bridge (gcd / resultant / squarefree only) -------------------------


def _sympy_pair(a, b, main=None):
    import sympy

    order = list(a.vars)
    if main is not None:
        order.remove(main)
        order = [main] + order
    gens = [sympy.Symbol(v) for v in order]
    return _to_sympy(a, order, gens), _to_sympy(b, order, gens), gens


def _to_sympy(poly, order, gens):
    import sympy
    from sympy.polys.domains import QQ_I, QQ

    pos = [poly.vars.index(v) for v in order]
    rep = {}
    for e, c in poly.terms.items():
        key = tuple(e[i] for i in pos)
        rep[key] = QQ_I.new(
            QQ(c.re.numerator, c.re.denominator), QQ(c.im.numerator, c.im.denominator)
        )
    return sympy.Poly.from_dict(rep, *gens, domain=QQ_I)


def _from_sympy(spoly, vars):
    import sympy

    gens = [str(g) for g in spoly.gens]
    pos = {g: vars.index(g) for g in gens}
    terms = {}
    for monom, coeff in spoly.rep.to_dict().items():
        e = [0] * len(vars)
        for g, k in zip(gens, monom):
            e[pos[g]] = k
        c = GaussianRational(
            Fraction(int(coeff.x.numerator), int(coeff.x.denominator)),
            Fraction(int(coeff.y.numerator), int(coeff.y.denominator)),
        )
        terms[tuple(e)] = c
    return Poly(vars, terms)
