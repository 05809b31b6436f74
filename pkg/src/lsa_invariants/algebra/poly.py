"""Sparse multivariate polynomials over the rationals.

A :class:`MultiPoly` is an immutable map from monomials to nonzero
:class:`fractions.Fraction` coefficients.  A monomial is a tuple of
``(VarId, exponent)`` pairs sorted by variable; the empty tuple is the
constant monomial.

The canonical text form lists terms in graded-lexicographic order (higher
degree first, then lexicographic with earlier variables ranking higher)::

    3*y[(1,1),(2,1),(2,1)] - 2*y[(1,2),(2,2),(2,1)] - y[(2,2),(2,2),(1,1)]

It is the contract for the golden fixtures and is parsed back by
:func:`parse_poly`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Mapping

from ..errors import ParseError
from . import _packed
from .variables import VarId, parse_var, var_name

Monomial = tuple


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"not an exact rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"-?\d+(/\d+)?", text):
        raise ParseError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    q = to_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def monomial_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def monomial_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    acc = dict(m1)
    for v, e in m2:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items()))


def grlex_key(mono: Monomial):
    """Sort key putting monomials in canonical (descending graded-lex) order."""
    return (-monomial_degree(mono), tuple((v, -e) for v, e in mono))


def format_monomial(mono: Monomial) -> str:
    return "*".join(var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in mono)


class MultiPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean: dict = {}
        if terms:
            for mono, c in terms.items():
                c = to_fraction(c)
                if not c:
                    continue
                mono = _normalize_monomial(mono)
                clean[mono] = clean.get(mono, 0) + c
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: dict) -> "MultiPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, value) -> "MultiPoly":
        c = to_fraction(value)
        return cls._from_clean({(): c} if c else {})

    @classmethod
    def var(cls, v: VarId, exponent: int = 1) -> "MultiPoly":
        if exponent == 0:
            return cls.constant(1)
        return cls._from_clean({((v, exponent),): Fraction(1)})

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls._from_clean({})

    @classmethod
    def one(cls) -> "MultiPoly":
        return cls._from_clean({(): Fraction(1)})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((), Fraction(0))

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((monomial_degree(m) for m in self._terms), default=-1)

    def degree_in(self, v: VarId) -> int:
        return max((e for m in self._terms for w, e in m if w == v), default=0)

    def is_homogeneous(self) -> bool:
        return len({monomial_degree(m) for m in self._terms}) <= 1

    def variables(self) -> tuple:
        return tuple(sorted({v for m in self._terms for v, _ in m}))

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]))

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return min(self._terms.items(), key=lambda t: grlex_key(t[0]))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(_normalize_monomial(mono), Fraction(0))

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return MultiPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly._from_clean(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._from_clean({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, factor) -> "MultiPoly":
        f = to_fraction(factor)
        if not f:
            return MultiPoly.zero()
        return MultiPoly._from_clean({m: c * f for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) or (isinstance(other, Rational) and not isinstance(other, MultiPoly)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return MultiPoly.zero()
        if len(self._terms) * len(other._terms) > 2000:
            ring = _packed.PackedRing(self.variables() + other.variables(),
                                      max(self.degree(), 0) + max(other.degree(), 0))
            return ring.decode(_packed.p_mul(ring.encode(self), ring.encode(other)))
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = monomial_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly._from_clean({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                return NotImplemented
            other = other.constant_value()
        return self.scale(1 / to_fraction(other))

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        if e == 0:
            return MultiPoly.one()
        if len(self._terms) == 1:
            (m, c), = self._terms.items()
            return MultiPoly._from_clean({tuple((v, k * e) for v, k in m): c ** e})
        ring = _packed.PackedRing(self.variables(), max(self.degree(), 1) * e)
        return ring.decode(_packed.p_pow(ring.encode(self), e))

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and substitution ---------------------------------------

    def diff(self, v: VarId) -> "MultiPoly":
        out = {}
        for m, c in self._terms.items():
            for i, (w, e) in enumerate(m):
                if w == v:
                    rest = m[:i] + (((w, e - 1),) if e > 1 else ()) + m[i + 1:]
                    out[rest] = out.get(rest, 0) + c * e
                    break
        return MultiPoly._from_clean({m: c for m, c in out.items() if c})

    def evaluate(self, point: Mapping) -> Fraction:
        """Exact value at ``point`` (a map from every occurring variable to a rational)."""
        total = Fraction(0)
        cache: dict = {}
        for m, c in self._terms.items():
            val = c
            for v, e in m:
                key = (v, e)
                pw = cache.get(key)
                if pw is None:
                    pw = cache[key] = to_fraction(point[v]) ** e
                val *= pw
            total += val
        return total

    def substitute(self, mapping: Mapping) -> "MultiPoly":
        """Replace variables by polynomials (or rationals); others stay symbolic.

        Works variable by variable in a Horner scheme so that shared
        prefixes of monomials are substituted only once.
        """
        if not self._terms:
            return self
        images = {v: (p if isinstance(p, MultiPoly) else MultiPoly.constant(p)) for v, p in mapping.items()}
        own = self.variables()
        targets = [v for v in own if v in images]
        if not targets:
            return self
        keep = [v for v in own if v not in images]
        image_vars = {w for v in targets for w in images[v].variables()}
        bound = self.degree() * max([max(images[v].degree(), 1) for v in targets] + [1])
        ring = _packed.PackedRing(list(image_vars) + keep, max(bound, 1))
        packed_images = [ring.encode(images[v]) for v in targets]
        keep_pos = [(v, ring.var(v)) for v in keep]
        target_index = {v: i for i, v in enumerate(targets)}
        rows = []
        for m, c in self._terms.items():
            ex = [0] * len(targets)
            kept = 0
            for v, e in m:
                i = target_index.get(v)
                if i is None:
                    kept += e * dict(keep_pos)[v]
                else:
                    ex[i] = e
            rows.append((ex, kept, _packed.mpq(c.numerator, c.denominator)))
        powers: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = {0: _packed.mpq(1)} if e == 0 else _packed.p_mul(power(i, e - 1), packed_images[i])
            return powers[key]

        def horner(group, i):
            if i == len(targets):
                acc: dict = {}
                for _, kept, c in group:
                    acc[kept] = acc.get(kept, 0) + c
                return _packed.p_clean(acc)
            buckets: dict = {}
            for row in group:
                buckets.setdefault(row[0][i], []).append(row)
            acc = {}
            for e, sub in buckets.items():
                inner = horner(sub, i + 1)
                if inner:
                    _packed.p_mul_acc(acc, inner, power(i, e))
            return _packed.p_clean(acc)

        return ring.decode(horner(rows, 0))

    def coefficients_in(self, variables: Iterable[VarId]) -> dict:
        """Split into ``{monomial in variables: coefficient polynomial}``."""
        chosen = set(variables)
        buckets: dict = {}
        for m, c in self._terms.items():
            inner = tuple((v, e) for v, e in m if v in chosen)
            rest = tuple((v, e) for v, e in m if v not in chosen)
            buckets.setdefault(inner, {})[rest] = c
        return {k: MultiPoly._from_clean(v) for k, v in buckets.items()}

    # -- normal forms -----------------------------------------------------

    def primitive(self) -> "MultiPoly":
        """Integer coefficients with gcd 1 and a positive leading coefficient."""
        if not self._terms:
            return self
        den = 1
        for c in self._terms.values():
            den = lcm(den, c.denominator)
        nums = [int(c * den) for c in self._terms.values()]
        g = 0
        for n in nums:
            g = gcd(g, n)
        factor = Fraction(den, g)
        if self.leading_term()[1] < 0:
            factor = -factor
        return self.scale(factor)

    # -- text -------------------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            if not m:
                body = format_rational(a)
            elif a == 1:
                body = format_monomial(m)
            else:
                body = f"{format_rational(a)}*{format_monomial(m)}"
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()!r})"

    def to_json_terms(self) -> list:
        return [[format_rational(c), [[var_name(v), e] for v, e in m]] for m, c in self.sorted_terms()]

    @classmethod
    def from_json_terms(cls, data) -> "MultiPoly":
        terms = {}
        for coef, factors in data:
            mono = tuple((parse_var(name), int(e)) for name, e in factors)
            terms[mono] = parse_rational(coef)
        return cls(terms)


def _normalize_monomial(mono) -> Monomial:
    acc: dict = {}
    for v, e in mono:
        if e < 0:
            raise ValueError("negative exponent")
        if e:
            acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items()))


_SPLIT_RE = re.compile(r" ([+-]) ")
_COEF_RE = re.compile(r"^\d+(/\d+)?$")


def parse_poly(text: str) -> MultiPoly:
    """Parse the canonical text form produced by :meth:`MultiPoly.to_text`."""
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial text")
    if text == "0":
        return MultiPoly.zero()
    pieces = _SPLIT_RE.split(text)
    signed = [("+", pieces[0])] + list(zip(pieces[1::2], pieces[2::2]))
    terms: dict = {}
    for sign, body in signed:
        body = body.strip()
        neg = sign == "-"
        if body.startswith("-"):
            neg = not neg
            body = body[1:]
        factors = body.split("*")
        coef = Fraction(1)
        if factors and _COEF_RE.match(factors[0]):
            coef = Fraction(factors.pop(0))
        mono = []
        for f in factors:
            name, _, exp = f.partition("^")
            mono.append((parse_var(name), int(exp) if exp else 1))
        m = _normalize_monomial(mono)
        terms[m] = terms.get(m, 0) + (-coef if neg else coef)
    return MultiPoly(terms)
