"""Reference polynomials and matrices transcribed by hand, shipped as package data.

Each data file is a sequence of ``[section]`` blocks.  Lines starting with
``@`` define shorthand tokens (``@ a = y[(1,1),(1,1),(1,1)]``); lines starting
with ``#`` are comments.  A block is either one polynomial per line or a
matrix with cells separated by `` | ``.  Coefficient names may list their
factors in any order; loading canonicalises them.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

from .algebra.matrix import Matrix
from .algebra.poly import MultiPoly, parse_poly
from .algebra.variables import KIND_COEFF_Y
from .model import MonomialLabel

_TOKEN_RE = re.compile(r"(?<![\w\[(,])([A-Za-z]\w*)(?![\w\[])")


@lru_cache(maxsize=None)
def _sections(name: str) -> dict:
    text = resources.files(__package__).joinpath("data", name).read_text()
    legend: dict = {}
    sections: dict = {}
    current = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("@"):
            key, _, value = line[1:].partition("=")
            legend[key.strip()] = value.strip()
        elif line.startswith("[") and line.endswith("]") and " " not in line:
            current = line[1:-1]
            sections[current] = []
        else:
            sections[current].append(_TOKEN_RE.sub(lambda m: legend.get(m.group(1), m.group(1)), line))
    return {k: tuple(v) for k, v in sections.items()}


def canonicalize(poly: MultiPoly) -> MultiPoly:
    """Rename every coefficient variable to its context-first canonical form."""
    mapping = {
        v: MultiPoly.var(MonomialLabel.from_var(v).var) for v in poly.variables() if v.kind == KIND_COEFF_Y
    }
    return poly.substitute(mapping) if mapping else poly


def raw_lines(name: str, section: str) -> tuple:
    """Lines of one block after shorthand expansion, before parsing."""
    return _sections(name)[section]


def polys(name: str, section: str) -> list:
    return [canonicalize(parse_poly(line)) for line in raw_lines(name, section)]


def matrix(name: str, section: str) -> Matrix:
    return Matrix([[canonicalize(parse_poly(c)) for c in line.split(" | ")] for line in raw_lines(name, section)])


def linear_generators_2_2_2() -> list:
    return polys("linear_2_2_2.txt", "linear")


def quartic_q() -> MultiPoly:
    """``4*d1*d2 - d3^2`` assembled from the transcribed determinants."""
    d1, d2, d3 = (_det2(matrix("quartic_2_2_2.txt", s)) for s in ("d1", "d2", "d3"))
    return d1 * d2 * 4 - d3 * d3


def _det2(m: Matrix) -> MultiPoly:
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def flattening_6x3() -> Matrix:
    return matrix("flattening_3_2.txt", "F")


def gl_matrix_3() -> Matrix:
    return matrix("single_column_3.txt", "M")


def lie_matrix_3() -> Matrix:
    return matrix("single_column_3.txt", "M_Lie")


def n_matrix_4() -> Matrix:
    return matrix("n_matrix_4.txt", "N")


def resultant_quartic_3() -> MultiPoly:
    return polys("resultant_3.txt", "res12")[0]


def all_fixture_polys() -> dict:
    """Every fixture invariant that must vanish on the image, keyed by a short name."""
    out = {f"linear-{i}": p for i, p in enumerate(linear_generators_2_2_2(), start=1)}
    out["quartic-q"] = quartic_q()
    out["resultant-12"] = resultant_quartic_3()
    return out
