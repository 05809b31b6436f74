"""Packed-exponent polynomial kernel used for the expensive operations.

A :class:`PackedRing` fixes a list of variables and encodes a monomial as one
Python integer holding every exponent in its own bit field, with the first
variable in the most significant field.  Monomial multiplication is then
integer addition, and integer comparison is the lexicographic monomial order.
Each field carries a guard bit so divisibility of monomials can be tested
with one subtraction.

Polynomials in this module are plain ``dict[int, mpq]`` with no zero values.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

from .variables import VarId


class PackedRing:
    def __init__(self, variables: Iterable[VarId], max_exponent: int = 31):
        self.vars: tuple[VarId, ...] = tuple(sorted(set(variables)))
        self.position = {v: i for i, v in enumerate(self.vars)}
        # one guard bit on top of each field
        self.width = max(int(max_exponent).bit_length(), 1) + 1
        n = len(self.vars)
        self.shifts = [self.width * (n - 1 - i) for i in range(n)]
        self.mask = (1 << (self.width - 1)) - 1
        self.max_exponent = self.mask
        self.guard = sum(1 << (s + self.width - 1) for s in self.shifts)

    def encode_monomial(self, mono) -> int:
        key = 0
        for v, e in mono:
            if e > self.max_exponent:
                raise OverflowError("exponent exceeds packed field width")
            key += e << self.shifts[self.position[v]]
        return key

    def decode_monomial(self, key: int):
        out = []
        for v, s in zip(self.vars, self.shifts):
            e = (key >> s) & self.mask
            if e:
                out.append((v, e))
        return tuple(out)

    def var(self, v: VarId) -> int:
        return 1 << self.shifts[self.position[v]]

    def encode(self, poly) -> dict:
        return {self.encode_monomial(m): mpq(c.numerator, c.denominator) for m, c in poly.terms.items()}

    def decode(self, packed: dict):
        from .poly import MultiPoly

        terms = {}
        for key, c in packed.items():
            if c:
                terms[self.decode_monomial(key)] = Fraction(int(c.numerator), int(c.denominator))
        return MultiPoly._from_clean(terms)

    def divides(self, small: int, big: int) -> bool:
        return ((big | self.guard) - small) & self.guard == self.guard


def p_add(p: dict, q: dict, sign: int = 1) -> dict:
    out = dict(p)
    get = out.get
    for m, c in q.items():
        out[m] = get(m, 0) + sign * c
    return {m: c for m, c in out.items() if c}


def p_accumulate(acc: dict, p: dict, factor) -> None:
    """``acc += factor * p`` in place, leaving zero entries behind."""
    get = acc.get
    for m, c in p.items():
        acc[m] = get(m, 0) + factor * c


def p_mul(p: dict, q: dict) -> dict:
    if len(p) < len(q):
        p, q = q, p
    out: dict = {}
    get = out.get
    for m2, c2 in q.items():
        for m1, c1 in p.items():
            k = m1 + m2
            out[k] = get(k, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def p_mul_acc(acc: dict, p: dict, q: dict, sign: int = 1) -> None:
    """``acc += sign * p * q`` in place."""
    get = acc.get
    for m2, c2 in q.items():
        c2 = sign * c2
        for m1, c1 in p.items():
            k = m1 + m2
            acc[k] = get(k, 0) + c1 * c2


def p_clean(p: dict) -> dict:
    return {m: c for m, c in p.items() if c}


def p_pow(p: dict, e: int) -> dict:
    result = {0: mpq(1)}
    base = p
    while e:
        if e & 1:
            result = p_mul(result, base)
        e >>= 1
        if e:
            base = p_mul(base, base)
    return result


def p_divexact(ring: PackedRing, p: dict, q: dict) -> dict:
    """Exact quotient ``p / q``; raises :class:`ArithmeticError` on a remainder."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    if not p:
        return {}
    lq = max(q)
    cq = q[lq]
    if len(q) == 1:
        if not all(ring.divides(lq, m) for m in p):
            raise ArithmeticError("inexact polynomial division")
        return {m - lq: c / cq for m, c in p.items()}
    rem = dict(p)
    quot = {}
    while rem:
        lt = max(rem)
        if not ring.divides(lq, lt):
            raise ArithmeticError("inexact polynomial division")
        shift = lt - lq
        c = rem[lt] / cq
        quot[shift] = c
        get = rem.get
        for m, cm in q.items():
            k = m + shift
            v = get(k, 0) - c * cm
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return quot


def p_evaluate(ring: PackedRing, p: dict, values: Sequence) -> object:
    """Evaluate at a point given as one value per ring variable."""
    total = mpq(0)
    cache: dict = {}
    for key, c in p.items():
        val = c
        for i, s in enumerate(ring.shifts):
            e = (key >> s) & ring.mask
            if e:
                ck = (i, e)
                pw = cache.get(ck)
                if pw is None:
                    pw = cache[ck] = values[i] ** e
                val = val * pw
        total += val
    return total


class MinorEngine:
    """Memoised Laplace expansion over a fixed matrix of packed polynomials.

    ``minor(rows, cols)`` expands along the last column of ``cols``; the memo
    is shared between calls so enumerating many minors of one matrix reuses
    every common sub-minor.
    """

    def __init__(self, entries: Sequence[Sequence[dict]]):
        self.entries = entries
        self.memo: dict = {}

    def minor(self, rows: tuple, cols: tuple) -> dict:
        key = (rows, cols)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        k = len(rows)
        if k == 0:
            res = {0: mpq(1)}
        elif k == 1:
            res = self.entries[rows[0]][cols[0]]
        else:
            last = cols[-1]
            rest = cols[:-1]
            acc: dict = {}
            for i, r in enumerate(rows):
                e = self.entries[r][last]
                if not e:
                    continue
                sub = self.minor(rows[:i] + rows[i + 1:], rest)
                if not sub:
                    continue
                p_mul_acc(acc, sub, e, 1 if (i + k - 1) % 2 == 0 else -1)
            res = p_clean(acc)
        self.memo[key] = res
        return res


def bareiss_det(ring: PackedRing, entries: Sequence[Sequence[dict]]) -> dict:
    """Fraction-free Bareiss elimination with exact polynomial division."""
    n = len(entries)
    a = [list(row) for row in entries]
    sign = 1
    prev = {0: mpq(1)}
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return {}
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = p_mul(piv, a[i][j])
                if aik and a[k][j]:
                    p_mul_acc(num, aik, a[k][j], -1)
                    num = p_clean(num)
                a[i][j] = p_divexact(ring, num, prev) if num else {}
            a[i][k] = {}
        prev = piv
    det = a[n - 1][n - 1]
    return {m: sign * c for m, c in det.items()}
