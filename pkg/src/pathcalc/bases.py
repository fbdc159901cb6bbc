"""Basis enumeration and indexing for the full and regular path spaces."""
from __future__ import annotations

from functools import lru_cache
from operator import ne

from .errors import DomainError
from .pathspace import VertexSet, _basis, basis_size, check_cap, enumerate_basis, path_rank

FULL = "full"
REGULAR = "regular"
SPACES = (FULL, REGULAR)


def is_regular(path) -> bool:
    """No two consecutive vertices are equal; every path of length <= 1 is regular."""
    return all(map(ne, path, path[1:]))


def regular_dim(vertices: VertexSet | int, n: int) -> int:
    """#V * (#V - 1) ** n for n >= 0; one (the empty path) for n = -1."""
    k = vertices if isinstance(vertices, int) else vertices.size
    if n < -1:
        return 0
    if n == -1:
        return 1
    return k * (k - 1) ** n


def space_dim(vertices: VertexSet, n: int, space: str) -> int:
    return basis_size(vertices, n) if space == FULL else regular_dim(vertices, n)


@lru_cache(maxsize=256)
def _regular_basis(k: int, n: int) -> tuple:
    if n == -1:
        return ((),)
    out = [(v,) for v in range(k)]
    for _ in range(n):
        out = [p + (v,) for p in out for v in range(k) if v != p[-1]]
    return tuple(out)


def regular_basis(vertices: VertexSet, n: int, cap: int | None = None) -> tuple:
    """Regular elementary n-paths in lexicographic order (a subsequence of the full basis)."""
    if n < -1:
        raise DomainError(f"degree must be >= -1, got {n}")
    check_cap(regular_dim(vertices, n), cap, "regular basis")
    return _regular_basis(vertices.size, n)


def space_basis(vertices: VertexSet, n: int, space: str, cap: int | None = None) -> tuple:
    if n < -1:
        return ()
    if space == FULL:
        return enumerate_basis(vertices, n, cap)
    if space == REGULAR:
        return regular_basis(vertices, n, cap)
    raise DomainError(f"unknown space {space!r}")


@lru_cache(maxsize=256)
def _regular_index(k: int, n: int) -> dict:
    return {p: r for r, p in enumerate(_regular_basis(k, n))}


class _RankIndex:
    """dict-like lookup of a path's position in the full lexicographic basis."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __getitem__(self, path):
        return path_rank(path, self.k)


@lru_cache(maxsize=64)
def _full_index(k: int, n: int) -> dict:
    return {p: r for r, p in enumerate(_basis(k, n))}


_DICT_INDEX_LIMIT = 1 << 16


def space_index(vertices: VertexSet, n: int, space: str):
    """Mapping path -> basis position for degree ``n`` of ``space``."""
    if space == FULL:
        if basis_size(vertices, n) <= _DICT_INDEX_LIMIT:
            return _full_index(vertices.size, n)
        return _RankIndex(vertices.size)
    return _regular_index(vertices.size, n)
