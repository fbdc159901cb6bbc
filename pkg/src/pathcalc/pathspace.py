"""The graded space of paths on a finite vertex set.

An elementary n-path is stored as a tuple of ``n + 1`` vertex indices.  The
empty tuple is the single (-1)-path; it spans the augmentation degree that
face maps on 0-paths land in.  Chains are sparse maps from paths to nonzero
exact rationals.
"""
from __future__ import annotations

import itertools
import os
from contextlib import contextmanager
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import BasisCapError, DomainError, VertexMismatchError
from .scalar import ONE, ZERO, Scalar, format_scalar, to_scalar

Path = tuple  # tuple[int, ...]

DEFAULT_BASIS_CAP = 10**6
CAP_ENV = "PATHCALC_BASIS_CAP"


_cap_override: list = []


@contextmanager
def cap_override(cap: int | None):
    """Use ``cap`` as the basis limit inside the block (None leaves it alone)."""
    if cap is not None and cap < 1:
        raise DomainError("the basis cap must be positive")
    _cap_override.append(cap)
    try:
        yield
    finally:
        _cap_override.pop()


def basis_cap() -> int:
    """Active basis-size limit: an override, else ``$PATHCALC_BASIS_CAP``, else 10**6."""
    for cap in reversed(_cap_override):
        if cap is not None:
            return cap
    raw = os.environ.get(CAP_ENV)
    if raw is None or raw == "":
        return DEFAULT_BASIS_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise DomainError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise DomainError(f"{CAP_ENV} must be positive")
    return cap


def check_cap(size: int, cap: int | None = None, what: str = "basis") -> None:
    limit = basis_cap() if cap is None else cap
    if size > limit:
        raise BasisCapError(f"{what} of size {size} exceeds the basis cap {limit}")


class VertexSet:
    """Ordered finite alphabet; vertex ``i`` is ``labels[i]``."""

    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable[str]):
        labels = tuple(labels)
        if not labels:
            raise DomainError("a vertex set needs at least one vertex")
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise DomainError(f"vertex labels must be nonempty strings, got {lab!r}")
        if len(set(labels)) != len(labels):
            raise DomainError(f"vertex labels are not distinct: {labels}")
        self.labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}

    @classmethod
    def parse(cls, text: str) -> "VertexSet":
        """``"a,b,c"`` -> VertexSet(['a', 'b', 'c'])."""
        return cls(s.strip() for s in text.split(","))

    @classmethod
    def of_size(cls, k: int) -> "VertexSet":
        """The first ``k`` letters a, b, c, ... (k <= 26)."""
        if not 1 <= k <= 26:
            raise DomainError("of_size supports 1..26 vertices")
        return cls("abcdefghijklmnopqrstuvwxyz"[:k])

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __eq__(self, other):
        return isinstance(other, VertexSet) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"VertexSet({list(self.labels)!r})"

    def index(self, label) -> int:
        if isinstance(label, int) and not isinstance(label, bool):
            if 0 <= label < len(self.labels):
                return label
            raise DomainError(f"vertex index {label} out of range for {self!r}")
        try:
            return self._index[label]
        except KeyError:
            raise DomainError(f"unknown vertex {label!r}") from None

    def path(self, spec) -> Path:
        """Build an index tuple from ``"aba"`` (single-letter labels) or a label sequence."""
        if isinstance(spec, tuple) and all(isinstance(x, int) for x in spec):
            for x in spec:
                self.index(x)
            return spec
        if isinstance(spec, str):
            if spec in self._index:
                return (self._index[spec],)
            return tuple(self.index(ch) for ch in spec)
        return tuple(self.index(x) for x in spec)

    def format_path(self, path: Path) -> str:
        if not path:
            return "()"
        names = [self.labels[i] for i in path]
        if all(len(s) == 1 for s in self.labels):
            return "".join(names)
        return ".".join(names)

    def path_labels(self, path: Path) -> list[str]:
        return [self.labels[i] for i in path]


def _same_vertices(a: VertexSet, b: VertexSet) -> None:
    if a != b:
        raise VertexMismatchError(f"vertex sets differ: {a!r} vs {b!r}")


@lru_cache(maxsize=256)
def _basis(k: int, n: int) -> tuple:
    return tuple(itertools.product(range(k), repeat=n + 1))


def basis_size(vertices: VertexSet, n: int) -> int:
    if n < -1:
        return 0
    return vertices.size ** (n + 1)


def enumerate_basis(vertices: VertexSet, n: int, cap: int | None = None) -> tuple:
    """All elementary n-paths in lexicographic order of their index tuples.

    ``n = -1`` gives the single empty path.  Raises BasisCapError before
    allocating anything when ``#V ** (n + 1)`` exceeds the cap.
    """
    if n < -1:
        raise DomainError(f"degree must be >= -1, got {n}")
    check_cap(basis_size(vertices, n), cap)
    return _basis(vertices.size, n)


def path_rank(path: Path, k: int) -> int:
    """Position of ``path`` inside ``enumerate_basis`` for a ``k``-vertex set."""
    r = 0
    for x in path:
        r = r * k + x
    return r


class Chain:
    """Finite linear combination of elementary paths with rational coefficients.

    Immutable.  The coefficient map never stores zeros, so equal chains have
    equal representations.
    """

    __slots__ = ("vertices", "_terms", "_hash")

    def __init__(self, vertices: VertexSet, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for path, c in items:
            p = vertices.path(path)
            acc[p] = acc.get(p, ZERO) + to_scalar(c)
        self.vertices = vertices
        self._terms = {p: c for p, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def _trusted(cls, vertices: VertexSet, terms: dict) -> "Chain":
        """Wrap an already-canonical dict (index tuples, mpq, no zeros) without copying."""
        self = object.__new__(cls)
        self.vertices = vertices
        self._terms = terms
        self._hash = None
        return self

    @classmethod
    def zero(cls, vertices: VertexSet) -> "Chain":
        return cls._trusted(vertices, {})

    @classmethod
    def basis(cls, vertices: VertexSet, path) -> "Chain":
        return cls._trusted(vertices, {vertices.path(path): ONE})

    # mapping-like access
    def __getitem__(self, path) -> Scalar:
        return self._terms.get(self.vertices.path(path), ZERO)

    def items(self):
        return self._terms.items()

    def paths(self):
        return self._terms.keys()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def sorted_terms(self) -> list:
        """Terms ordered by degree, then lexicographically by index tuple."""
        return sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0]))

    @property
    def degrees(self) -> list[int]:
        return sorted({len(p) - 1 for p in self._terms})

    @property
    def degree(self) -> int:
        """Degree of a nonzero homogeneous chain."""
        degs = self.degrees
        if not degs:
            raise DomainError("the zero chain has no degree")
        if len(degs) > 1:
            raise DomainError(f"chain is not homogeneous (degrees {degs})")
        return degs[0]

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    def component(self, n: int) -> "Chain":
        return Chain._trusted(self.vertices, {p: c for p, c in self._terms.items() if len(p) == n + 1})

    # vector space structure
    def __add__(self, other: "Chain") -> "Chain":
        if not isinstance(other, Chain):
            return NotImplemented
        _same_vertices(self.vertices, other.vertices)
        out = dict(self._terms)
        for p, c in other._terms.items():
            s = out.get(p, ZERO) + c
            if s:
                out[p] = s
            else:
                out.pop(p, None)
        return Chain._trusted(self.vertices, out)

    def __neg__(self) -> "Chain":
        return Chain._trusted(self.vertices, {p: -c for p, c in self._terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        if not isinstance(other, Chain):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> "Chain":
        if isinstance(scalar, Chain):
            return NotImplemented
        s = to_scalar(scalar)
        if s == 0:
            return Chain.zero(self.vertices)
        return Chain._trusted(self.vertices, {p: s * c for p, c in self._terms.items()})

    __rmul__ = __mul__

    def join(self, other: "Chain") -> "Chain":
        return join(self, other)

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.vertices == other.vertices and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vertices, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Chain({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for p, c in self.sorted_terms():
            name = self.vertices.format_path(p)
            mag = abs(c)
            body = name if mag == 1 else f"{format_scalar(mag)}·{name}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def join(xi: Chain, eta: Chain) -> Chain:
    """Bilinear concatenation; degree n joined with degree m lands in degree n + m + 1."""
    _same_vertices(xi.vertices, eta.vertices)
    out: dict = {}
    for p, a in xi.items():
        for q, b in eta.items():
            r = p + q
            s = out.get(r, ZERO) + a * b
            if s:
                out[r] = s
            else:
                out.pop(r, None)
    return Chain._trusted(xi.vertices, out)


def inner_chain(xi: Chain, eta: Chain) -> Scalar:
    """Canonical inner product; elementary paths form an orthonormal basis.

    Paths of different degrees are orthogonal, which makes the form total
    on the whole graded space.
    """
    _same_vertices(xi.vertices, eta.vertices)
    if len(eta) < len(xi):
        xi, eta = eta, xi
    total = ZERO
    other = eta._terms
    for p, a in xi.items():
        b = other.get(p)
        if b is not None:
            total += a * b
    return total


class Weighting:
    """A rational-valued function on the vertices, stored in label order."""

    __slots__ = ("vertices", "values")

    def __init__(self, vertices: VertexSet, values: Sequence):
        values = tuple(to_scalar(x) for x in values)
        if len(values) != vertices.size:
            raise DomainError(f"weighting needs {vertices.size} values, got {len(values)}")
        self.vertices = vertices
        self.values = values

    @classmethod
    def from_mapping(cls, vertices: VertexSet, mapping: Mapping) -> "Weighting":
        idx = {vertices.index(k): v for k, v in mapping.items()}
        missing = [vertices.labels[i] for i in range(vertices.size) if i not in idx]
        if missing:
            raise DomainError(f"weighting is missing vertices {missing}")
        return cls(vertices, [idx[i] for i in range(vertices.size)])

    @classmethod
    def zero(cls, vertices: VertexSet) -> "Weighting":
        return cls(vertices, [0] * vertices.size)

    @classmethod
    def ones(cls, vertices: VertexSet) -> "Weighting":
        return cls(vertices, [1] * vertices.size)

    def __getitem__(self, v: int) -> Scalar:
        return self.values[v]

    def __call__(self, v) -> Scalar:
        return self.values[self.vertices.index(v)]

    def as_dict(self) -> dict:
        return {lab: format_scalar(x) for lab, x in zip(self.vertices.labels, self.values)}

    def is_zero(self) -> bool:
        return not any(self.values)

    def __eq__(self, other):
        if not isinstance(other, Weighting):
            return NotImplemented
        return self.vertices == other.vertices and self.values == other.values

    def __hash__(self):
        return hash((self.vertices, self.values))

    def __repr__(self):
        body = ", ".join(f"{k}={v}" for k, v in self.as_dict().items())
        return f"Weighting({body})"


def characteristic(vertices: VertexSet, v) -> Weighting:
    """The indicator function of a single vertex."""
    i = vertices.index(v)
    return Weighting(vertices, [ONE if k == i else ZERO for k in range(vertices.size)])


def weighting_inner(f: Weighting, g: Weighting, subset: Iterable | None = None) -> Scalar:
    """Sum of f(v) g(v) over ``subset`` (labels or indices; default all of V)."""
    _same_vertices(f.vertices, g.vertices)
    if subset is None:
        idx = range(f.vertices.size)
    else:
        idx = sorted({f.vertices.index(v) for v in subset})
    total = ZERO
    for i in idx:
        total += f.values[i] * g.values[i]
    return total


def weighting_norm2(f: Weighting) -> Scalar:
    """Squared L2 norm <f, f>; the square keeps the result rational."""
    return weighting_inner(f, f)
