"""Exact sparse multivariate polynomials and rational functions.

Variables are opaque string tokens (``"x5"``).  Coefficients are Python
``int`` or ``fractions.Fraction``; every value is immutable.

Rational functions are *not* reduced by a gcd; two of them compare equal when
``a.num * b.den == b.num * a.den``.  The one cancellation performed is the
cheap exact case: when ``den`` divides ``num`` the quotient is kept over 1.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from numbers import Rational

from .errors import MissingSign, NotExpandable, ParseError, ZeroDenominator

__all__ = [
    "Monomial",
    "Polynomial",
    "RationalFn",
    "SeriesTruncation",
    "var_key",
    "poly_add",
    "poly_mul",
    "rat_normalize",
    "rat_eq",
    "rat_series",
    "poly_signed_substitute",
    "series_det",
    "poly_divide_exact",
]

_SPLIT_DIGITS = re.compile(r"(\d+)")


def var_key(var):
    """Natural sort key so that ``x2 < x10``."""
    parts = _SPLIT_DIGITS.split(str(var))
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts if p != "")


def _canon_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class Monomial:
    """A product of variables with positive exponents."""

    __slots__ = ("exps", "_hash")

    def __init__(self, exps=()):
        if isinstance(exps, dict):
            exps = exps.items()
        merged = {}
        for v, e in exps:
            if e < 0:
                raise ValueError(f"negative exponent for {v!r}")
            if e:
                merged[v] = merged.get(v, 0) + e
        self.exps = tuple(sorted(merged.items(), key=lambda kv: var_key(kv[0])))
        self._hash = hash(self.exps)

    @classmethod
    def var(cls, name, exp=1):
        return cls(((name, exp),))

    @property
    def degree(self):
        return sum(e for _, e in self.exps)

    def variables(self):
        return [v for v, _ in self.exps]

    def as_dict(self):
        return dict(self.exps)

    def __mul__(self, other):
        if not self.exps:
            return other
        if not other.exps:
            return self
        return Monomial(self.exps + other.exps)

    def __pow__(self, k):
        return Monomial((v, e * k) for v, e in self.exps)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self):
        return self._hash

    def sort_key(self):
        # graded lex on the multiset of sorted variables
        expanded = tuple(k for v, e in self.exps for k in [var_key(v)] * e)
        return (self.degree, expanded)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "*".join(v if e == 1 else f"{v}^{e}" for v, e in self.exps) or "1"

    def __repr__(self):
        return f"Monomial({str(self)!r})"


ONE_MONO = Monomial()


class Polynomial:
    """Immutable map from :class:`Monomial` to nonzero exact coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for m, c in items:
                if not isinstance(m, Monomial):
                    m = Monomial(m)
                clean[m] = clean.get(m, 0) + c
        self.terms = {m: _canon_coeff(c) for m, c in clean.items() if c != 0}

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls({ONE_MONO: c})

    @classmethod
    def var(cls, name):
        return cls({Monomial.var(name): 1})

    @classmethod
    def monomial(cls, mono, coeff=1):
        return cls({mono: coeff})

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    # -- queries --------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get(ONE_MONO, 0)

    def degree(self):
        return max((m.degree for m in self.terms), default=-1)

    def min_degree(self):
        return min((m.degree for m in self.terms), default=-1)

    def variables(self):
        out = set()
        for m in self.terms:
            out.update(m.variables())
        return sorted(out, key=var_key)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mc[0].sort_key())

    def leading_coefficient(self):
        """Coefficient of the graded-lex largest term."""
        if not self.terms:
            return 0
        return max(self.terms.items(), key=lambda mc: mc[0].sort_key())[1]

    def truncate(self, maxdeg):
        return Polynomial._raw({m: c for m, c in self.terms.items() if m.degree <= maxdeg})

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _canon_coeff(s)
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def mul(self, other, maxdeg=None):
        """Product, optionally dropping terms above ``maxdeg``."""
        out = {}
        for m1, c1 in self.terms.items():
            d1 = m1.degree
            for m2, c2 in other.terms.items():
                if maxdeg is not None and d1 + m2.degree > maxdeg:
                    continue
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self.mul(other)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        return Polynomial({m: v * c for m, v in self.terms.items()})

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- substitution ---------------------------------------------------------
    def substitute_scale(self, factors):
        """Replace each ``x`` by ``factors[x] * x``; missing variables keep factor 1."""
        out = {}
        for m, c in self.terms.items():
            for v, e in m.exps:
                f = factors.get(v, 1)
                if f != 1:
                    c = c * f**e
            out[m] = c
        return Polynomial(out)

    def content(self):
        """Positive rational ``g`` with ``self / g`` integral and primitive."""
        if not self.terms:
            return Fraction(1)
        coeffs = [Fraction(c) for c in self.terms.values()]
        num = reduce(gcd, (abs(c.numerator) for c in coeffs))
        den = reduce(lcm, (c.denominator for c in coeffs))
        return Fraction(num, den)

    # -- text -----------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            parts.append(str(c) if not m.exps else f"{c}*{m}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    @classmethod
    def parse(cls, text):
        """Inverse of ``str``; also accepts terms without a leading coefficient."""
        text = text.strip()
        if text in ("", "0"):
            return cls()
        terms = {}
        for raw in text.split(" + "):
            tokens = [t.strip() for t in raw.strip().split("*")]
            coeff = Fraction(1)
            exps = []
            for k, tok in enumerate(tokens):
                if not tok:
                    raise ParseError(f"bad polynomial term {raw!r}")
                if k == 0 and re.fullmatch(r"[-+]?\d+(/\d+)?", tok):
                    coeff = Fraction(tok)
                    continue
                if k == 0 and tok.startswith("-"):
                    coeff = -coeff
                    tok = tok[1:]
                name, _, power = tok.partition("^")
                if not re.fullmatch(r"[A-Za-z_][\w']*", name):
                    raise ParseError(f"bad variable {tok!r}")
                exps.append((name, int(power) if power else 1))
            m = Monomial(exps)
            terms[m] = terms.get(m, 0) + coeff
        return cls(terms)


def _as_poly(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Rational)):
        return Polynomial.const(x)
    return NotImplemented


ZERO = Polynomial()
ONE = Polynomial.const(1)


def poly_add(a, b):
    return a + b


def poly_mul(a, b):
    return a * b


def poly_signed_substitute(p, signs):
    """Multiply each term by the product of ``signs[v] ** exponent``.

    ``signs`` maps variable name to +1/-1; an unmapped variable raises
    :class:`MissingSign`.
    """
    out = {}
    for m, c in p.terms.items():
        flip = 1
        for v, e in m.exps:
            try:
                s = signs[v]
            except KeyError:
                raise MissingSign(v) from None
            if s not in (1, -1):
                raise ValueError(f"sign for {v} must be +1 or -1, got {s}")
            if s == -1 and e % 2:
                flip = -flip
        out[m] = c * flip
    return Polynomial._raw(out)


class RationalFn:
    """Quotient ``num / den`` normalized by :func:`rat_normalize`."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = ONE if den is None else _as_poly(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RationalFn parts must be polynomials or numbers")
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        self.num, self.den = _normalize_pair(num, den)

    @classmethod
    def from_poly(cls, p):
        return cls(p, ONE)

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RationalFn):
            other = _as_poly(other)
            if other is NotImplemented:
                return False
            other = RationalFn(other)
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __add__(self, other):
        other = _as_rat(other)
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_rat(other))

    def __rsub__(self, other):
        return _as_rat(other) - self

    def __mul__(self, other):
        other = _as_rat(other)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rat(other)
        if other.is_zero():
            raise ZeroDenominator("division by zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_rat(other) / self

    def signed_substitute(self, signs):
        return RationalFn(poly_signed_substitute(self.num, signs),
                          poly_signed_substitute(self.den, signs))

    def substitute_scale(self, factors):
        return RationalFn(self.num.substitute_scale(factors), self.den.substitute_scale(factors))

    def __str__(self):
        if self.den == ONE:
            return f"({self.num})"
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFn({str(self)!r})"

    @classmethod
    def parse(cls, text):
        text = text.strip()
        m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", text)
        if m and _balanced(m.group(1)) and _balanced(m.group(2)):
            return cls(Polynomial.parse(m.group(1)), Polynomial.parse(m.group(2)))
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
        return cls(Polynomial.parse(text))


def _balanced(s):
    depth = 0
    for ch in s:
        depth += {"(": 1, ")": -1}.get(ch, 0)
        if depth < 0:
            return False
    return depth == 0


def _as_rat(x):
    if isinstance(x, RationalFn):
        return x
    p = _as_poly(x)
    if p is NotImplemented:
        raise TypeError(f"cannot combine RationalFn with {type(x).__name__}")
    return RationalFn(p)


def _lex_exps(m, order):
    d = m.as_dict()
    return tuple(d.get(v, 0) for v in order)


def poly_divide_exact(a, b):
    """Quotient ``a / b`` if ``b`` divides ``a`` exactly, else ``None``.

    Multivariate division with respect to lex order on sorted variables.
    """
    if b.is_zero():
        raise ZeroDenominator("division by the zero polynomial")
    if a.is_zero():
        return ZERO
    order = sorted(set(a.variables()) | set(b.variables()), key=var_key)
    bn = {v: 0 for v in order}
    for m in b.terms:
        for v, e in m.exps:
            bn[v] = max(bn[v], e)
    an = {v: max((m.as_dict().get(v, 0) for m in a.terms), default=0) for v in order}
    # an exact quotient has degree exactly deg(a) - deg(b), in total and per variable
    qmax = {v: an[v] - bn[v] for v in order}
    qdeg = a.degree() - b.degree()
    if qdeg < 0 or any(e < 0 for e in qmax.values()):
        return None
    b_lead = max(b.terms, key=lambda m: _lex_exps(m, order))
    b_lead_c = Fraction(b.terms[b_lead])
    b_lead_e = b_lead.as_dict()
    r = a
    q = {}
    while True:  # leads strictly decrease inside a finite box of quotient terms
        if r.is_zero():
            return Polynomial(q)
        lead = max(r.terms, key=lambda m: _lex_exps(m, order))
        le = lead.as_dict()
        if any(le.get(v, 0) < e for v, e in b_lead_e.items()):
            return None
        t = Monomial((v, le[v] - b_lead_e.get(v, 0)) for v in le if le[v] - b_lead_e.get(v, 0) > 0)
        if t.degree > qdeg or any(e > qmax[v] for v, e in t.exps):
            return None
        c = Fraction(r.terms[lead]) / b_lead_c
        q[t] = q.get(t, 0) + c
        r = r - Polynomial({t: c}) * b


def _normalize_pair(num, den):
    if den.degree() > 0 and not num.is_zero() and num.degree() >= den.degree():
        quo = poly_divide_exact(num, den)
        if quo is not None:
            num, den = quo, ONE
    g = den.content() if num.is_zero() else Fraction(
        gcd(den.content().numerator, num.content().numerator),
        lcm(den.content().denominator, num.content().denominator),
    )
    lead = den.constant_term() or den.leading_coefficient()
    if lead < 0:
        g = -g
    if g != 1:
        num, den = num.scale(1 / g), den.scale(1 / g)
    if num.is_zero():
        den = ONE
    return num, den


def rat_normalize(num, den):
    """Build a :class:`RationalFn`; content is removed and ``den`` gets a
    positive constant term (or positive leading coefficient if ``den(0) = 0``).
    """
    return RationalFn(num, den)


def rat_eq(a, b):
    return a.num * b.den == b.num * a.den


class SeriesTruncation:
    """Power series known up to total degree ``maxdeg``."""

    __slots__ = ("poly", "maxdeg")

    def __init__(self, poly, maxdeg):
        if maxdeg < 0:
            raise ValueError("maxdeg must be nonnegative")
        self.poly = poly.truncate(maxdeg)
        self.maxdeg = maxdeg

    def __add__(self, other):
        d = min(self.maxdeg, other.maxdeg)
        return SeriesTruncation(self.poly + other.poly, d)

    def __sub__(self, other):
        d = min(self.maxdeg, other.maxdeg)
        return SeriesTruncation(self.poly - other.poly, d)

    def __neg__(self):
        return SeriesTruncation(-self.poly, self.maxdeg)

    def __mul__(self, other):
        d = min(self.maxdeg, other.maxdeg)
        return SeriesTruncation(self.poly.mul(other.poly, d), d)

    def truncate(self, maxdeg):
        return SeriesTruncation(self.poly, min(maxdeg, self.maxdeg))

    def __eq__(self, other):
        if isinstance(other, SeriesTruncation):
            d = min(self.maxdeg, other.maxdeg)
            return self.poly.truncate(d) == other.poly.truncate(d)
        if isinstance(other, Polynomial):
            return self.poly == other.truncate(self.maxdeg)
        return NotImplemented

    __hash__ = None

    def __str__(self):
        return f"{self.poly} + O(deg>{self.maxdeg})"

    def __repr__(self):
        return f"SeriesTruncation({str(self.poly)!r}, {self.maxdeg})"


def rat_series(f, maxdeg):
    """Expand ``f`` at the origin up to total degree ``maxdeg``.

    The result ``S`` is the unique truncation with ``S * den = num`` modulo
    terms of degree above ``maxdeg``.
    """
    c0 = f.den.constant_term()
    if c0 == 0:
        raise NotExpandable(f"denominator {f.den} vanishes at the origin")
    if c0 not in (1, -1):
        raise NotExpandable(f"denominator constant term {c0} is not a unit")
    num = f.num.truncate(maxdeg)
    if c0 == -1:
        num, den = -num, -f.den
    else:
        den = f.den
    tail = (den - ONE).truncate(maxdeg)
    lowest = tail.min_degree()
    s = num
    # each pass fixes at least `lowest` more degrees
    passes = maxdeg // lowest + 1 if lowest > 0 else 1
    for _ in range(passes):
        s = num - tail.mul(s, maxdeg)
    return SeriesTruncation(s, maxdeg)


def series_det(matrix, maxdeg):
    """Determinant of a square matrix of polynomials, truncated at ``maxdeg``.

    Laplace expansion along the first row; sizes here stay tiny.
    """
    n = len(matrix)
    if n == 0:
        return ONE
    if n == 1:
        return matrix[0][0].truncate(maxdeg)
    total = ZERO
    for c in range(n):
        entry = matrix[0][c]
        if entry.is_zero():
            continue
        minor = [row[:c] + row[c + 1:] for row in matrix[1:]]
        term = entry.mul(series_det(minor, maxdeg), maxdeg)
        total = total + term if c % 2 == 0 else total - term
    return total


def rat_det(matrix):
    """Determinant of a square matrix of :class:`RationalFn` by Laplace expansion."""
    n = len(matrix)
    if n == 0:
        return RationalFn(ONE)
    if n == 1:
        return matrix[0][0]
    total = RationalFn(ZERO)
    for c in range(n):
        entry = matrix[0][c]
        if entry.is_zero():
            continue
        minor = [row[:c] + row[c + 1:] for row in matrix[1:]]
        term = entry * rat_det(minor)
        total = total + term if c % 2 == 0 else total - term
    return total
