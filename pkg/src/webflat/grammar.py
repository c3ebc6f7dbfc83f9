"""The shared polynomial text grammar.

Used by the CLI, job files and all reports.  Variables are ``x y p q``,
``i`` is the imaginary unit, literals are integers or rationals like
``3/4``, operators are ``+ - * ^`` with parentheses.  Example::

    (1/2+3*i)*x^2*y - y

Printing is the exact inverse: every string emitted by :func:`poly_text`
or :func:`scalar_text` re-parses to an equal value.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .gauss import GaussianRational, ZERO, ONE
from .poly import Poly

VARIABLES = ("x", "y", "p", "q")


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    n = len(text)
    i = 0
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            start, scol = i, col
            while i < n and text[i].isdigit():
                i += 1
                col += 1
            numerator = int(text[start:i])
            # optional /denominator immediately following
            j = i
            while j < n and text[j] == " ":
                j += 1
            if j < n and text[j] == "/":
                k = j + 1
                while k < n and text[k] == " ":
                    k += 1
                if k < n and text[k].isdigit():
                    start_d = k
                    while k < n and text[k].isdigit():
                        k += 1
                    den = int(text[start_d:k])
                    if den == 0:
                        raise ParseError("zero denominator in rational literal", line, scol)
                    col += k - i
                    i = k
                    tokens.append(_Token("num", Fraction(numerator, den), line, scol))
                    continue
                raise ParseError("expected digits after '/'", line, col)
            tokens.append(_Token("num", Fraction(numerator), line, scol))
            continue
        if ch.isalpha():
            start, scol = i, col
            while i < n and text[i].isalnum():
                i += 1
                col += 1
            name = text[start:i]
            if name == "i":
                tokens.append(_Token("i", None, line, scol))
            elif name in VARIABLES:
                tokens.append(_Token("var", name, line, scol))
            else:
                raise ParseError(f"unknown symbol {name!r}", line, scol)
            continue
        if ch in "+-*^()":
            tokens.append(_Token(ch, None, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", None, line, col))
    return tokens


class _Parser:
    def __init__(self, tokens, vars):
        self.tokens = tokens
        self.pos = 0
        self.vars = vars

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok.kind != kind:
            raise ParseError(f"expected {kind!r}", tok.line, tok.col)
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError("trailing input", tok.line, tok.col)
        return value

    def expr(self):
        tok = self.peek()
        negate = False
        if tok.kind in "+-":
            self.take()
            negate = tok.kind == "-"
        value = self.term()
        if negate:
            value = -value
        while self.peek().kind in "+-":
            op = self.take().kind
            rhs = self.term()
            value = value - rhs if op == "-" else value + rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek().kind == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        tok = self.peek()
        if tok.kind == "-":
            self.take()
            return -self.factor()
        value = self.atom()
        if self.peek().kind == "^":
            self.take()
            etok = self.take("num")
            if etok.value.denominator != 1 or etok.value < 0:
                raise ParseError("exponent must be a nonnegative integer", etok.line, etok.col)
            value = value ** int(etok.value)
        return value

    def atom(self):
        tok = self.take()
        if tok.kind == "num":
            return Poly.const(GaussianRational(tok.value), self.vars)
        if tok.kind == "i":
            return Poly.const(GaussianRational(0, 1), self.vars)
        if tok.kind == "var":
            return Poly.var(tok.value, self.vars)
        if tok.kind == "(":
            value = self.expr()
            self.take(")")
            return value
        raise ParseError("expected a number, variable, 'i' or '('", tok.line, tok.col)


def parse_poly(text, vars=None):
    """Parse grammar text into a Poly (over the given or the full var set)."""
    tokens = _tokenize(text)
    vars = tuple(vars) if vars is not None else VARIABLES
    poly = _Parser(tokens, vars).parse()
    return poly.canonical()


def parse_scalar(text):
    """Parse a constant expression into a GaussianRational."""
    poly = parse_poly(text)
    tok = _tokenize(text)[0]
    if not poly.is_constant:
        raise ParseError("expected a constant", tok.line, tok.col)
    return poly.constant_value()


# -- printing -----------------------------------------------------------------


def _frac_text(f):
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def scalar_text(c):
    """Grammar text for a Gaussian rational; always re-parseable."""
    if c.is_zero:
        return "0"
    if not c.im:
        return _frac_text(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_frac_text(c.im)}*i"
    im = scalar_text(GaussianRational(0, c.im))
    if im.startswith("-"):
        return f"{_frac_text(c.re)}{im}"
    return f"{_frac_text(c.re)}+{im}"


def _monomial_text(vars, exps):
    parts = []
    for v, k in zip(vars, exps):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def poly_text(poly):
    """Canonical grammar text for a polynomial; round-trips through parse."""
    if poly.is_zero:
        return "0"
    pieces = []
    for exps, c in poly.sorted_terms():
        mono = _monomial_text(poly.vars, exps)
        if not mono:
            coeff = scalar_text(c)
            if c.re and c.im:
                coeff = f"({coeff})" if pieces else coeff
            piece = coeff
        elif c == ONE:
            piece = mono
        elif c == -ONE:
            piece = f"-{mono}"
        else:
            coeff = scalar_text(c)
            if (c.re and c.im) or (not c.re and c.im not in (1, -1) and "/" in coeff):
                coeff = f"({coeff})"
            piece = f"{coeff}*{mono}"
        if not pieces:
            pieces.append(piece)
        elif piece.startswith("-"):
            pieces.append(f" - {piece[1:]}")
        else:
            pieces.append(f" + {piece}")
    return "".join(pieces)
