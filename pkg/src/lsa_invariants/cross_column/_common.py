from __future__ import annotations

from itertools import combinations_with_replacement

from ..errors import ContextEqualsTarget
from ..model import Shape


def check_columns(n: int, j: int) -> None:
    if n == j:
        raise ContextEqualsTarget(f"context column n={n} equals target column j={j}")


def default_shape(d: int, n: int, j: int, a: int | None = None) -> Shape:
    return Shape(d, max(n, j), a=a if a is not None else d)


def omega(k1: int, k2: int) -> int:
    return 1 if k1 == k2 else 2


def context_pairs(d: int) -> list:
    """Unordered context pairs ``{k1, k2}`` in lexicographic order."""
    return list(combinations_with_replacement(range(1, d + 1), 2))
