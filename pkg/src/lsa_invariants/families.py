"""One entry point that builds any invariant family for a given shape.

Veronese-type families default to every increasing choice of context and
target indices; the other families take their natural defaults (target
column 1, context column 2, output row 1).
"""

from __future__ import annotations

from itertools import combinations

from .cross_column.flattening import determinantal_syzygies, low_rank_minors
from .cross_column.resultants import Line, resultant_quartics
from .cross_column.slices import pencil_mixed_minors
from .cross_column.veronese import (
    block_veronese_minors,
    catalecticant_minors,
    cross_target_minors,
    index_choices,
)
from .cross_row import cross_row_minors
from .errors import DimensionTooSmall
from .invariant_set import Family, InvariantSet
from .linear import sequence_copy_relations, symmetrization_relations
from .model import Shape
from .single_column import lie_maximal_minors, n_matrix_minors

CROSS_COLUMN = {
    Family.SYMMETRIZATION,
    Family.PENCIL_MIXED_MINORS,
    Family.LOW_RANK_MINORS,
    Family.DETERMINANTAL_SYZYGIES,
    Family.CATALECTICANT,
    Family.CROSS_TARGET,
    Family.BLOCK_VERONESE,
    Family.RESULTANT_QUARTICS,
}


def _union(family: Family, shape: Shape, sets: list, params: dict) -> InvariantSet:
    polys = [p for s in sets for p in s.polys]
    return InvariantSet(family, shape, polys, params)


def _choices(given, d: int, r: int) -> list:
    return [tuple(given)] if given else index_choices(d, r)


def generate(
    family: Family | str,
    shape: Shape,
    *,
    r: int = 2,
    K=None,
    L=None,
    lines: list | None = None,
    mode: str = "both",
    j: int = 1,
    n: int = 2,
    workers: int | None = None,
) -> InvariantSet:
    family = Family(family)
    d = shape.d
    if family in CROSS_COLUMN and shape.t < 2:
        raise DimensionTooSmall(f"{family.value} needs at least two input columns (t >= 2)")
    if family is Family.SEQUENCE_COPY:
        return sequence_copy_relations(shape)
    if family is Family.SYMMETRIZATION:
        return symmetrization_relations(shape, j=j, n=n)
    if family is Family.LIE_MINORS:
        return lie_maximal_minors(d, j, shape=shape, workers=workers)
    if family is Family.N_MATRIX_MINORS:
        return n_matrix_minors(d, shape.a, j, shape=shape, workers=workers)
    if family is Family.PENCIL_MIXED_MINORS:
        return pencil_mixed_minors(d, n, j, shape=shape)
    if family is Family.LOW_RANK_MINORS:
        return low_rank_minors(d, shape.a, n, j, shape=shape, workers=workers)
    if family is Family.DETERMINANTAL_SYZYGIES:
        return determinantal_syzygies(d, n, j, shape=shape)
    if family is Family.RESULTANT_QUARTICS:
        return resultant_quartics(d, n, j, lines=lines, mode=mode, shape=shape)
    if family is Family.CROSS_ROW_MINORS:
        return cross_row_minors(shape, workers=workers)

    Ks, Ls = _choices(K, d, r), _choices(L, d, r)
    if family is Family.CATALECTICANT:
        sets = [catalecticant_minors(r, k, l, n, j, shape=shape) for k in Ks for l in Ls]
        params = {"r": r, "K": Ks, "L": Ls, "n": n, "j": j}
    elif family is Family.CROSS_TARGET:
        sets = [cross_target_minors(r, k, l1, l2, n, j, shape=shape) for k in Ks for l1, l2 in combinations(Ls, 2)]
        params = {"r": r, "K": Ks, "L": Ls, "n": n, "j": j}
    else:
        sets = [block_veronese_minors(r, k, Ls, n, j, shape=shape) for k in Ks]
        params = {"r": r, "K": Ks, "targets": Ls, "n": n, "j": j}
    return _union(family, shape, sets, params)


def applicable_families(shape: Shape) -> list:
    """Families that are defined and nonempty-capable at ``shape`` with default options."""
    out = [Family.SEQUENCE_COPY] if shape.t >= 2 else []
    if shape.d == 3:
        out.append(Family.LIE_MINORS)
    if 2 * shape.a + 2 <= shape.d:
        out.append(Family.N_MATRIX_MINORS)
    if shape.t >= 2:
        out += [Family.SYMMETRIZATION, Family.RESULTANT_QUARTICS]
        if shape.d >= 3:
            out += [Family.PENCIL_MIXED_MINORS, Family.DETERMINANTAL_SYZYGIES]
        if shape.a < shape.d:
            out.append(Family.LOW_RANK_MINORS)
        if shape.d >= 2:
            out += [Family.CATALECTICANT, Family.BLOCK_VERONESE]
        if shape.d >= 3:
            out.append(Family.CROSS_TARGET)
    if shape.d_prime >= shape.d + 1:
        out.append(Family.CROSS_ROW_MINORS)
    return sorted(out, key=lambda f: list(Family).index(f))


def parse_lines(text: str, d: int) -> list:
    """``"1,0,0:0,1,0;1,1,0:0,0,1"`` gives two lines, each ``xi:zeta``."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        xi, _, zeta = chunk.partition(":")
        out.append(Line(tuple(xi.split(",")), tuple(zeta.split(","))))
    for line in out:
        if line.d != d:
            raise ValueError(f"line {line.to_json()} does not have {d} coordinates")
    return out
