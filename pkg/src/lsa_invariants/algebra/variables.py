"""Structured variable identifiers and their canonical names.

Every variable used anywhere in the package is a :class:`VarId`: a kind tag
plus a tuple of integer indices.  Variables are totally ordered first by kind
(in the order of the ``KIND_*`` constants below) and then lexicographically by
index tuple.  Because :class:`VarId` is a named tuple the order is plain tuple
comparison, which keeps sorting cheap.

Canonical names::

    a[m,l]                    attention matrix entry
    v[k]  /  v[i,k]           value matrix entry (row index omitted when i = 1)
    y[(k1,c1),(k2,c2),(k3,c3)]  scaled coefficient, output row 1
    y{i}[(k1,c1),...]         scaled coefficient, output row i > 1
    pen[k]                    pencil coefficient
    u[s], w[s]                resultant pencil variables
    x[k,n]                    input entry
    z[k]                      context-column variable of a slice quadric
    lam[1], lam[2]            coordinates on a line
"""

from __future__ import annotations

import re
from typing import NamedTuple

from ..errors import ParseError

KIND_PARAM_A = 0
KIND_PARAM_V = 1
KIND_COEFF_Y = 2
KIND_AUX_LAMBDA = 3
KIND_AUX_U = 4
KIND_AUX_W = 5
KIND_INPUT_X = 6
KIND_INPUT_Z = 7
KIND_LINE_LAMBDA = 8


class VarId(NamedTuple):
    kind: int
    index: tuple

    def __str__(self) -> str:
        return var_name(self)

    def __repr__(self) -> str:
        return f"VarId({var_name(self)})"


def param_a(m: int, l: int) -> VarId:
    return VarId(KIND_PARAM_A, (m, l))


def param_v(i: int, k: int) -> VarId:
    return VarId(KIND_PARAM_V, (i, k))


def coeff_y(pairs: tuple, row: int = 1) -> VarId:
    """Coefficient variable for an already canonical triple of ``(k, column)`` pairs."""
    return VarId(KIND_COEFF_Y, (row, tuple(tuple(p) for p in pairs)))


def aux_lambda(k: int) -> VarId:
    return VarId(KIND_AUX_LAMBDA, (k,))


def aux_u(s: int) -> VarId:
    return VarId(KIND_AUX_U, (s,))


def aux_w(s: int) -> VarId:
    return VarId(KIND_AUX_W, (s,))


def input_x(k: int, n: int) -> VarId:
    return VarId(KIND_INPUT_X, (k, n))


def input_z(k: int) -> VarId:
    return VarId(KIND_INPUT_Z, (k,))


def line_lambda(i: int) -> VarId:
    if i not in (1, 2):
        raise ValueError("line coordinates are lam[1] and lam[2]")
    return VarId(KIND_LINE_LAMBDA, (i,))


def _pairs_text(pairs) -> str:
    return ",".join(f"({k},{c})" for k, c in pairs)


def var_name(var: VarId) -> str:
    kind, idx = var
    if kind == KIND_PARAM_A:
        return f"a[{idx[0]},{idx[1]}]"
    if kind == KIND_PARAM_V:
        return f"v[{idx[1]}]" if idx[0] == 1 else f"v[{idx[0]},{idx[1]}]"
    if kind == KIND_COEFF_Y:
        row, pairs = idx
        prefix = "y" if row == 1 else f"y{{{row}}}"
        return f"{prefix}[{_pairs_text(pairs)}]"
    if kind == KIND_AUX_LAMBDA:
        return f"pen[{idx[0]}]"
    if kind == KIND_AUX_U:
        return f"u[{idx[0]}]"
    if kind == KIND_AUX_W:
        return f"w[{idx[0]}]"
    if kind == KIND_INPUT_X:
        return f"x[{idx[0]},{idx[1]}]"
    if kind == KIND_INPUT_Z:
        return f"z[{idx[0]}]"
    if kind == KIND_LINE_LAMBDA:
        return f"lam[{idx[0]}]"
    raise ValueError(f"unknown variable kind {kind}")


_SIMPLE = {
    "a": (KIND_PARAM_A, 2),
    "pen": (KIND_AUX_LAMBDA, 1),
    "u": (KIND_AUX_U, 1),
    "w": (KIND_AUX_W, 1),
    "x": (KIND_INPUT_X, 2),
    "z": (KIND_INPUT_Z, 1),
    "lam": (KIND_LINE_LAMBDA, 1),
}
_SIMPLE_RE = re.compile(r"^([a-z]+)\[(\d+(?:,\d+)*)\]$")
_Y_RE = re.compile(r"^y(?:\{(\d+)\})?\[(\(\d+,\d+\)(?:,\(\d+,\d+\)){2})\]$")
_PAIR_RE = re.compile(r"\((\d+),(\d+)\)")


def parse_var(text: str) -> VarId:
    """Inverse of :func:`var_name`.

    ``y`` names are returned exactly as written; use
    :meth:`lsa_invariants.model.MonomialLabel.from_pairs` to canonicalise a
    triple written in a different order.
    """
    text = text.strip()
    m = _Y_RE.match(text)
    if m:
        row = int(m.group(1)) if m.group(1) else 1
        pairs = tuple((int(a), int(b)) for a, b in _PAIR_RE.findall(m.group(2)))
        return coeff_y(pairs, row)
    m = _SIMPLE_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse variable name {text!r}")
    head, nums = m.group(1), tuple(int(s) for s in m.group(2).split(","))
    if head == "v":
        if len(nums) == 1:
            return param_v(1, nums[0])
        if len(nums) == 2:
            return param_v(*nums)
        raise ParseError(f"bad value-matrix variable {text!r}")
    if head not in _SIMPLE or len(nums) != _SIMPLE[head][1]:
        raise ParseError(f"cannot parse variable name {text!r}")
    return VarId(_SIMPLE[head][0], nums)
