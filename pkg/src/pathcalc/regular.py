"""Regular paths and the operators they inherit.

The regular space in degree n is the span of regular elementary paths, the
orthogonal complement of the irregular ones.  An operator on the full space
induces one here by projecting its output onto that span.  The ε-weighted
closed formulas below compute the same maps without ever leaving the regular
space; the test-suite checks that both descriptions agree.

Edge conventions for virtual slots -1 and n+1 live in ``eps_at`` and
``delta_at`` and nowhere else.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import ClassVar

from .bases import FULL, REGULAR, is_regular, regular_basis, regular_dim
from .errors import DomainError
from .operators import (
    Coface,
    Compose,
    FacePartial,
    GradedOperator,
    _acc,
    _check_index,
    _index_sum,
    _weighted_sum,
    _label,
    compose,
)
from .pathspace import Chain, VertexSet, Weighting, characteristic, weighting_inner
from .scalar import ONE

__all__ = [
    "is_regular",
    "regular_dim",
    "regular_basis",
    "eps",
    "eps_at",
    "delta_at",
    "project_regular",
    "ProjectRegular",
    "IncludeRegular",
    "induced",
    "Induced",
    "RegularFace",
    "RegularCoface",
    "RegularBoundary",
    "RegularCoboundary",
    "regular_face",
    "regular_coface",
    "regular_boundary",
    "regular_coboundary",
    "reduced_partial",
    "reduced_diff",
    "ExcludedInnerDiagonal",
    "PartialAnticommutatorClosed",
    "DiffAnticommutatorClosed",
    "WeightedAnticommutatorClosed",
    "anticommutator_partial_closed",
    "anticommutator_diff_closed",
    "anticommutator_weighted_closed",
]


def eps(u, v) -> int:
    """ε(u, v) = 1 - δ(u, v)."""
    return 0 if u == v else 1


def eps_at(p, a: int, b: int) -> int:
    """ε(p[a], p[b]); a slot outside 0..n counts as distinct from everything."""
    n = len(p) - 1
    if not (0 <= a <= n and 0 <= b <= n):
        return 1
    return 0 if p[a] == p[b] else 1


def eps_vertex(v: int, p, k: int) -> int:
    """ε(v, p[k]) with ε(v, v_{-1}) = ε(v, v_{n+1}) = 1."""
    if not 0 <= k < len(p):
        return 1
    return 0 if p[k] == v else 1


def delta_at(v: int, p, k: int) -> int:
    """δ(v, p[k]) with δ(v, v_{-1}) = δ(v, v_{n+1}) = 0."""
    if not 0 <= k < len(p):
        return 0
    return 1 if p[k] == v else 0


def _require_regular(op, p) -> None:
    if not is_regular(p):
        raise DomainError(f"{op.symbol()} needs a regular path; {op.vertices.format_path(p)} is irregular")


def project_regular(chain: Chain) -> Chain:
    """Orthogonal projection onto the regular span: drop irregular terms."""
    return Chain._trusted(chain.vertices, {p: c for p, c in chain.items() if is_regular(p)})


@dataclass(frozen=True, repr=False)
class ProjectRegular(GradedOperator):
    space_vertices: VertexSet
    domain: ClassVar[str] = FULL
    codomain: ClassVar[str] = REGULAR

    @property
    def vertices(self):
        return self.space_vertices

    def on_path(self, p):
        return {p: ONE} if is_regular(p) else {}

    def symbol(self):
        return "P"


@dataclass(frozen=True, repr=False)
class IncludeRegular(GradedOperator):
    space_vertices: VertexSet
    domain: ClassVar[str] = REGULAR
    codomain: ClassVar[str] = FULL

    @property
    def vertices(self):
        return self.space_vertices

    def on_path(self, p):
        return {p: ONE}

    def symbol(self):
        return "ι"


def induced(op: GradedOperator) -> Compose:
    """P ∘ op ∘ ι: the map a full-space operator induces on regular paths."""
    if op.domain != FULL or op.codomain != FULL:
        raise DomainError(f"{op.symbol()} is not a full-space operator")
    vs = op.vertices
    return compose(ProjectRegular(vs), compose(op, IncludeRegular(vs)))


@dataclass(frozen=True, repr=False)
class Induced(GradedOperator):
    """``induced(op)`` as one named map, so its matrix can be cached and reused."""

    op: GradedOperator
    domain: ClassVar[str] = REGULAR
    codomain: ClassVar[str] = REGULAR

    def __post_init__(self):
        if self.op.domain != FULL or self.op.codomain != FULL:
            raise DomainError(f"{self.op.symbol()} is not a full-space operator")

    @property
    def vertices(self):
        return self.op.vertices

    @property
    def shift(self):
        return self.op.shift

    def on_path(self, p):
        _require_regular(self, p)
        return {q: c for q, c in self.op.on_path(p).items() if is_regular(q)}

    def expand(self, n):
        return induced(self.op)

    def symbol(self):
        return f"P∘{self.op.symbol()}∘ι"


@dataclass(frozen=True, repr=False)
class RegularFace(GradedOperator):
    """∂̃_i^f(v_0...v_n) = (-1)^i ε(v_{i-1}, v_{i+1}) f(v_i) v_0...v̂_i...v_n."""

    f: Weighting
    i: int
    shift: ClassVar[int] = -1
    domain: ClassVar[str] = REGULAR
    codomain: ClassVar[str] = REGULAR

    @property
    def vertices(self):
        return self.f.vertices

    def on_path(self, p):
        _require_regular(self, p)
        n = len(p) - 1
        i = self.i
        _check_index(i, n, "regular face", n)
        w = self.f.values[p[i]]
        if not w or not eps_at(p, i - 1, i + 1):
            return {}
        return {p[:i] + p[i + 1 :]: w if i % 2 == 0 else -w}

    def expand(self, n):
        # P ∘ ∂_i^f ∘ ι, split by linearity into its weighting-free coordinate maps
        vs, i = self.vertices, self.i
        return _weighted_sum(self.f, lambda v: Induced(FacePartial(vs, v, i)), -1, REGULAR)

    def symbol(self):
        return f"∂̃{self.i}^{self.f!r}"


@dataclass(frozen=True, repr=False)
class RegularCoface(GradedOperator):
    """d̃_i^f(v_0...v_n) = Σ_{v ≠ v_{i-1}, v_i} (-1)^i f(v) v_0...v_{i-1} v v_i...v_n."""

    f: Weighting
    i: int
    shift: ClassVar[int] = 1
    domain: ClassVar[str] = REGULAR
    codomain: ClassVar[str] = REGULAR

    @property
    def vertices(self):
        return self.f.vertices

    def on_path(self, p):
        _require_regular(self, p)
        n = len(p) - 1
        i = self.i
        _check_index(i, n + 1, "regular co-face", n)
        head, tail = p[:i], p[i:]
        # -1 stands for a missing neighbour, which excludes nothing
        before = p[i - 1] if i > 0 else -1
        after = p[i] if i <= n else -1
        odd = i % 2
        return {
            head + (v,) + tail: (-w if odd else w)
            for v, w in enumerate(self.f.values)
            if w and v != before and v != after
        }

    def expand(self, n):
        vs, i = self.vertices, self.i
        return _weighted_sum(self.f, lambda v: Induced(Coface(vs, v, i)), 1, REGULAR)

    def symbol(self):
        return f"d̃{self.i}^{self.f!r}"


@dataclass(frozen=True, repr=False)
class RegularBoundary(GradedOperator):
    """∂̃^f = Σ_{i=0..n} ∂̃_i^f."""

    f: Weighting
    shift: ClassVar[int] = -1
    domain: ClassVar[str] = REGULAR
    codomain: ClassVar[str] = REGULAR

    @property
    def vertices(self):
        return self.f.vertices

    def on_path(self, p):
        _require_regular(self, p)
        vals = self.f.values
        out: dict = {}
        for i, x in enumerate(p):
            w = vals[x]
            if w and eps_at(p, i - 1, i + 1):
                _acc(out, p[:i] + p[i + 1 :], w if i % 2 == 0 else -w)
        return out

    def expand(self, n):
        return _index_sum([RegularFace(self.f, i) for i in range(n + 1)], self.vertices, -1, REGULAR)

    def symbol(self):
        return f"∂̃^{self.f!r}"


@dataclass(frozen=True, repr=False)
class RegularCoboundary(GradedOperator):
    """d̃^f = Σ_{i=0..n+1} d̃_i^f."""

    f: Weighting
    shift: ClassVar[int] = 1
    domain: ClassVar[str] = REGULAR
    codomain: ClassVar[str] = REGULAR

    @property
    def vertices(self):
        return self.f.vertices

    def on_path(self, p):
        _require_regular(self, p)
        out: dict = {}
        weights = [(v, w) for v, w in enumerate(self.f.values) if w]
        for i in range(len(p) + 1):
            head, tail = p[:i], p[i:]
            odd = i % 2
            for v, w in weights:
                if eps_vertex(v, p, i - 1) and eps_vertex(v, p, i):
                    _acc(out, head + (v,) + tail, -w if odd else w)
        return out

    def expand(self, n):
        return _index_sum([RegularCoface(self.f, i) for i in range(n + 2)], self.vertices, 1, REGULAR)

    def symbol(self):
        return f"d̃^{self.f!r}"


def regular_face(f: Weighting, i: int) -> RegularFace:
    return RegularFace(f, i)


def regular_coface(f: Weighting, i: int) -> RegularCoface:
    return RegularCoface(f, i)


def regular_boundary(f: Weighting) -> RegularBoundary:
    return RegularBoundary(f)


def regular_coboundary(f: Weighting) -> RegularCoboundary:
    return RegularCoboundary(f)


def reduced_partial(vertices: VertexSet, v) -> RegularBoundary:
    """∂̃/∂v, the regular boundary weighted by the indicator of v."""
    return RegularBoundary(characteristic(vertices, v))


def reduced_diff(vertices: VertexSet, v) -> RegularCoboundary:
    """d̃v, the regular co-boundary weighted by the indicator of v."""
    return RegularCoboundary(characteristic(vertices, v))


@lru_cache(maxsize=4096)
def _inner_outside(f: Weighting, g: Weighting, excluded: frozenset):
    return weighting_inner(f, g, [v for v in range(f.vertices.size) if v not in excluded])


@dataclass(frozen=True, repr=False)
class ExcludedInnerDiagonal(GradedOperator):
    """p ↦ <f, g> restricted to V \\ {v_{i-1}, v_i}, times p.

    Input degree n, 0 <= i <= n + 1; the missing neighbour at i = 0 or
    i = n + 1 simply drops out of the excluded set.
    """

    f: Weighting
    g: Weighting
    i: int
    domain: ClassVar[str] = REGULAR
    codomain: ClassVar[str] = REGULAR

    @property
    def vertices(self):
        return self.f.vertices

    def on_path(self, p):
        _require_regular(self, p)
        n = len(p) - 1
        _check_index(self.i, n + 1, "slot", n)
        excluded = frozenset(p[k] for k in (self.i - 1, self.i) if 0 <= k <= n)
        c = _inner_outside(self.f, self.g, excluded)
        return {p: c} if c else {}

    def symbol(self):
        return f"<{self.f!r},{self.g!r}>^(V-{{v{self.i - 1},v{self.i}}})·id"


# ----------------------------------------------------- anticommutator closed forms


def _partial_pair_terms_literal(v: int, u: int, p) -> dict:
    """Two δ-difference summands per index for (∂̃/∂v, ∂̃/∂u), taken literally."""
    n = len(p) - 1
    out: dict = {}
    for i in range(n + 1):
        if i >= 1:
            c = (delta_at(v, p, i) * delta_at(u, p, i - 1) - delta_at(u, p, i) * delta_at(v, p, i - 1)) * eps_at(
                p, i - 1, i + 1
            ) * eps_at(p, i - 2, i + 1)
            if c:
                _acc(out, p[: i - 1] + p[i + 1 :], ONE * c)
        if i + 1 <= n:
            c = (delta_at(u, p, i) * delta_at(v, p, i + 1) - delta_at(v, p, i) * delta_at(u, p, i + 1)) * eps_at(
                p, i - 1, i + 1
            ) * eps_at(p, i - 1, i + 2)
            if c:
                _acc(out, p[:i] + p[i + 2 :], ONE * c)
    return out


def _partial_pair_terms_corrected(v: int, u: int, p) -> dict:
    """Adjacent-pair expansion of ∂̃/∂v∘∂̃/∂u + ∂̃/∂u∘∂̃/∂v.

    Deletions of non-adjacent slots cancel between the two orders exactly as
    on the full space.  Deleting the adjacent pair (k, k+1) survives with
    coefficient ε(v_{k-1}, v_{k+2}) (ε(v_{k-1}, v_{k+1}) - ε(v_k, v_{k+2}))
    times δ(u, v_k) δ(v, v_{k+1}) + δ(v, v_k) δ(u, v_{k+1}).
    """
    n = len(p) - 1
    out: dict = {}
    for k in range(n):
        hits = delta_at(u, p, k) * delta_at(v, p, k + 1) + delta_at(v, p, k) * delta_at(u, p, k + 1)
        if not hits:
            continue
        c = hits * eps_at(p, k - 1, k + 2) * (eps_at(p, k - 1, k + 1) - eps_at(p, k, k + 2))
        if c:
            _acc(out, p[:k] + p[k + 2 :], ONE * c)
    return out


def _diff_pair_terms(v: int, u: int, p) -> dict:
    """Closed form of (d̃v, d̃u): only adjacent insertions "vu" / "uv" survive."""
    n = len(p) - 1
    out: dict = {}
    if v == u:
        return out
    for i in range(n + 2):
        head, tail = p[:i], p[i:]
        c1 = (eps_vertex(u, p, i - 1) - eps_vertex(v, p, i)) * eps_vertex(u, p, i) * eps_vertex(v, p, i - 1)
        if c1:
            _acc(out, head + (v, u) + tail, ONE * c1)
        c2 = (eps_vertex(v, p, i - 1) - eps_vertex(u, p, i)) * eps_vertex(u, p, i - 1) * eps_vertex(v, p, i)
        if c2:
            _acc(out, head + (u, v) + tail, ONE * c2)
    return out


@dataclass(frozen=True, repr=False)
class PartialAnticommutatorClosed(GradedOperator):
    """Closed form of (∂̃/∂v, ∂̃/∂u) on regular paths.

    ``corrected=False`` takes the two-summand formula literally
    (δ-difference times ε(v_{i-1}, v_{i+1}) ε(v_{i-2}, v_{i+1}) and its
    mirror).  It disagrees with the composition on some paths and the
    verifier reports the mismatch.  ``corrected=True`` uses the adjacent-pair
    expansion, which does.
    """

    space_vertices: VertexSet
    v: int
    u: int
    corrected: bool = False
    shift: ClassVar[int] = -2
    domain: ClassVar[str] = REGULAR
    codomain: ClassVar[str] = REGULAR

    @property
    def vertices(self):
        return self.space_vertices

    def on_path(self, p):
        _require_regular(self, p)
        if self.corrected:
            return _partial_pair_terms_corrected(self.v, self.u, p)
        return _partial_pair_terms_literal(self.v, self.u, p)

    def symbol(self):
        tag = "" if not self.corrected else "*"
        return f"(∂̃/∂{_label(self.vertices, self.v)}, ∂̃/∂{_label(self.vertices, self.u)}){tag}"


@dataclass(frozen=True, repr=False)
class DiffAnticommutatorClosed(GradedOperator):
    """Closed form of (d̃v, d̃u); every term carries ε(v, u), so v = u gives 0."""

    space_vertices: VertexSet
    v: int
    u: int
    shift: ClassVar[int] = 2
    domain: ClassVar[str] = REGULAR
    codomain: ClassVar[str] = REGULAR

    @property
    def vertices(self):
        return self.space_vertices

    def on_path(self, p):
        _require_regular(self, p)
        return _diff_pair_terms(self.v, self.u, p)

    def symbol(self):
        return f"(d̃{_label(self.vertices, self.v)}, d̃{_label(self.vertices, self.u)})"


@dataclass(frozen=True, repr=False)
class WeightedAnticommutatorClosed(GradedOperator):
    """Σ_{v,u} f(v) g(u) · (pairwise closed form); ``which`` is "partial" or "diff"."""

    f: Weighting
    g: Weighting
    which: str
    corrected: bool = False
    domain: ClassVar[str] = REGULAR
    codomain: ClassVar[str] = REGULAR

    def __post_init__(self):
        if self.which not in ("partial", "diff"):
            raise DomainError(f"which must be 'partial' or 'diff', got {self.which!r}")
        if self.f.vertices != self.g.vertices:
            raise DomainError("weightings live on different vertex sets")

    @property
    def vertices(self):
        return self.f.vertices

    @property
    def shift(self):
        return -2 if self.which == "partial" else 2

    def on_path(self, p):
        _require_regular(self, p)
        if self.which == "partial":
            pair = _partial_pair_terms_corrected if self.corrected else _partial_pair_terms_literal
        else:
            pair = _diff_pair_terms
        out: dict = {}
        for v, fv in enumerate(self.f.values):
            if not fv:
                continue
            for u, gu in enumerate(self.g.values):
                if not gu:
                    continue
                w = fv * gu
                for q, c in pair(v, u, p).items():
                    _acc(out, q, w * c)
        return out

    def symbol(self):
        if self.which == "partial":
            return f"(∂̃^{self.f!r}, ∂̃^{self.g!r})closed"
        return f"(d̃^{self.f!r}, d̃^{self.g!r})closed"


def anticommutator_partial_closed(vertices: VertexSet, v, u, corrected: bool = False) -> PartialAnticommutatorClosed:
    return PartialAnticommutatorClosed(vertices, vertices.index(v), vertices.index(u), corrected)


def anticommutator_diff_closed(vertices: VertexSet, v, u) -> DiffAnticommutatorClosed:
    return DiffAnticommutatorClosed(vertices, vertices.index(v), vertices.index(u))


def anticommutator_weighted_closed(f: Weighting, g: Weighting, which: str, corrected: bool = False):
    return WeightedAnticommutatorClosed(f, g, which, corrected)

