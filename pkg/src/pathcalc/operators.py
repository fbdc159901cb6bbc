"""Graded linear operators on the path space and their sparse matrices.

Every operator is an immutable (frozen dataclass) description whose
``on_path`` kernel returns the image of one elementary path as a
``{path: coefficient}`` dict with no zero entries.  Operators are degree
polymorphic: a face map ``∂_i^f`` acts on every degree n >= i.

``op(chain)`` is direct symbolic application.  ``materialize`` builds the
matrix of an operator column by column in the lexicographic basis, and
``oracle_matrix`` rebuilds composites by multiplying and adding the matrices
of their primitive factors, giving a second, independent evaluation route.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import ClassVar

from .bases import FULL, REGULAR, is_regular, space_basis, space_dim, space_index
from .errors import DomainError, IndexRangeError, VertexMismatchError
from .pathspace import Chain, VertexSet, Weighting
from .scalar import ONE, ZERO, Scalar, to_scalar


def _acc(out: dict, path, c) -> None:
    s = out.get(path, ZERO) + c
    if s:
        out[path] = s
    else:
        del out[path]


def _check_index(i: int, hi: int, what: str, n: int) -> None:
    if not 0 <= i <= hi:
        raise IndexRangeError(f"{what} index {i} is invalid on degree {n} (need 0 <= i <= {hi})")


def _sign(i: int) -> Scalar:
    return ONE if i % 2 == 0 else -ONE


class GradedOperator:
    """Base class.  Subclasses set ``shift``, ``domain``, ``codomain`` and ``on_path``."""

    shift: ClassVar[int] = 0
    domain: ClassVar[str] = FULL
    codomain: ClassVar[str] = FULL

    @property
    def vertices(self) -> VertexSet:
        raise NotImplementedError

    def on_path(self, path) -> dict:
        raise NotImplementedError

    def symbol(self) -> str:
        return type(self).__name__

    def expand(self, n: int) -> "GradedOperator | None":
        """Definitional decomposition at input degree ``n``, or None for a primitive.

        ``oracle_matrix`` builds matrices from this decomposition instead of
        the operator's own kernel.
        """
        return None

    def descriptor(self) -> dict:
        from .formats import operator_to_descriptor

        return operator_to_descriptor(self)

    def __call__(self, chain: Chain) -> Chain:
        if chain.vertices != self.vertices:
            raise VertexMismatchError(f"operator on {self.vertices!r} applied to chain on {chain.vertices!r}")
        if self.domain == REGULAR:
            for p in chain.paths():
                if not is_regular(p):
                    raise DomainError(
                        f"{self.symbol()} needs a regular chain; "
                        f"{chain.vertices.format_path(p)} is irregular (project first)"
                    )
        out: dict = {}
        for p, c in chain.items():
            for q, d in self.on_path(p).items():
                _acc(out, q, c * d)
        return Chain._trusted(self.vertices, out)

    # algebra of operators
    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return compose(self, other)

    def __add__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return LinearCombination.of((ONE, self), (ONE, other))

    def __sub__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return LinearCombination.of((ONE, self), (-ONE, other))

    def __neg__(self):
        return LinearCombination.of((-ONE, self))

    def __rmul__(self, scalar):
        return LinearCombination.of((to_scalar(scalar), self))

    def __repr__(self):
        return self.symbol()


def _label(vs: VertexSet, v: int) -> str:
    return vs.labels[v]


# ---------------------------------------------------------------- primitives


@dataclass(frozen=True, repr=False)
class FacePartial(GradedOperator):
    """∂_i/∂v: delete slot i with sign (-1)^i when it holds ``v``."""

    space_vertices: VertexSet
    v: int
    i: int
    shift: ClassVar[int] = -1

    @property
    def vertices(self):
        return self.space_vertices

    def on_path(self, p):
        n = len(p) - 1
        _check_index(self.i, n, "face", n)
        if p[self.i] != self.v:
            return {}
        return {p[: self.i] + p[self.i + 1 :]: _sign(self.i)}

    def symbol(self):
        return f"∂{self.i}/∂{_label(self.vertices, self.v)}"


@dataclass(frozen=True, repr=False)
class Coface(GradedOperator):
    """d_i v: insert ``v`` at slot i with sign (-1)^i."""

    space_vertices: VertexSet
    v: int
    i: int
    shift: ClassVar[int] = 1

    @property
    def vertices(self):
        return self.space_vertices

    def on_path(self, p):
        n = len(p) - 1
        _check_index(self.i, n + 1, "co-face", n)
        return {p[: self.i] + (self.v,) + p[self.i :]: _sign(self.i)}

    def symbol(self):
        return f"d{self.i}{_label(self.vertices, self.v)}"


@dataclass(frozen=True, repr=False)
class WeightedFace(GradedOperator):
    """∂_i^f (v_0...v_n) = (-1)^i f(v_i) v_0...v̂_i...v_n."""

    f: Weighting
    i: int
    shift: ClassVar[int] = -1

    @property
    def vertices(self):
        return self.f.vertices

    def on_path(self, p):
        n = len(p) - 1
        i = self.i
        _check_index(i, n, "face", n)
        w = self.f.values[p[i]]
        if not w:
            return {}
        return {p[:i] + p[i + 1 :]: w if i % 2 == 0 else -w}

    def coordinates(self):
        """Σ_v f(v) ∂_i/∂v, the definition of the weighted face map."""
        return _weighted_sum(self.f, lambda v: FacePartial(self.vertices, v, self.i), -1)

    def symbol(self):
        return f"∂{self.i}^{self.f!r}"


@dataclass(frozen=True, repr=False)
class WeightedCoface(GradedOperator):
    """d_i^f = Σ_v f(v) d_i v."""

    f: Weighting
    i: int
    shift: ClassVar[int] = 1

    @property
    def vertices(self):
        return self.f.vertices

    def on_path(self, p):
        n = len(p) - 1
        i = self.i
        _check_index(i, n + 1, "co-face", n)
        head, tail = p[:i], p[i:]
        odd = i % 2
        return {head + (v,) + tail: (-w if odd else w) for v, w in enumerate(self.f.values) if w}

    def coordinates(self):
        """Σ_v f(v) d_i v, the definition of the weighted co-face map."""
        return _weighted_sum(self.f, lambda v: Coface(self.vertices, v, self.i), 1)

    def symbol(self):
        return f"d{self.i}^{self.f!r}"


@dataclass(frozen=True, repr=False)
class Boundary(GradedOperator):
    """∂^f = Σ_{i=0..n} ∂_i^f at input degree n (zero on the empty path)."""

    f: Weighting
    shift: ClassVar[int] = -1

    @property
    def vertices(self):
        return self.f.vertices

    def on_path(self, p):
        vals = self.f.values
        out: dict = {}
        for i, x in enumerate(p):
            w = vals[x]
            if w:
                _acc(out, p[:i] + p[i + 1 :], w if i % 2 == 0 else -w)
        return out

    def expand(self, n):
        return _index_sum([WeightedFace(self.f, i) for i in range(n + 1)], self.vertices, -1)

    def symbol(self):
        return f"∂^{self.f!r}"


@dataclass(frozen=True, repr=False)
class Coboundary(GradedOperator):
    """d^f = Σ_{i=0..n+1} d_i^f at input degree n."""

    f: Weighting
    shift: ClassVar[int] = 1

    @property
    def vertices(self):
        return self.f.vertices

    def on_path(self, p):
        out: dict = {}
        weights = [(v, w) for v, w in enumerate(self.f.values) if w]
        for i in range(len(p) + 1):
            head, tail = p[:i], p[i:]
            odd = i % 2
            for v, w in weights:
                _acc(out, head + (v,) + tail, -w if odd else w)
        return out

    def expand(self, n):
        return _index_sum([WeightedCoface(self.f, i) for i in range(n + 2)], self.vertices, 1)

    def symbol(self):
        return f"d^{self.f!r}"


@dataclass(frozen=True, repr=False)
class Degeneracy(GradedOperator):
    """s_i: repeat the vertex in slot i (no sign)."""

    space_vertices: VertexSet
    i: int
    shift: ClassVar[int] = 1

    @property
    def vertices(self):
        return self.space_vertices

    def on_path(self, p):
        n = len(p) - 1
        _check_index(self.i, n, "degeneracy", n)
        return {p[: self.i + 1] + p[self.i :]: ONE}

    def symbol(self):
        return f"s{self.i}"


@dataclass(frozen=True, repr=False)
class ScaledIdentity(GradedOperator):
    """c · id on one of the two spaces."""

    space_vertices: VertexSet
    scalar: Scalar = ONE
    space: str = FULL

    @property
    def vertices(self):
        return self.space_vertices

    @property
    def domain(self):
        return self.space

    @property
    def codomain(self):
        return self.space

    def on_path(self, p):
        return {p: self.scalar} if self.scalar else {}

    def symbol(self):
        return "id" if self.scalar == 1 else f"{self.scalar}·id"


@dataclass(frozen=True, repr=False)
class ZeroOperator(GradedOperator):
    space_vertices: VertexSet
    degree_shift: int = 0
    space: str = FULL

    @property
    def vertices(self):
        return self.space_vertices

    @property
    def shift(self):
        return self.degree_shift

    @property
    def domain(self):
        return self.space

    @property
    def codomain(self):
        return self.space

    def on_path(self, p):
        return {}

    def symbol(self):
        return "0"


def _weighted_sum(f: Weighting, make, shift: int, space: str = FULL) -> "GradedOperator":
    """Σ_v f(v) make(v), or the zero operator when f vanishes."""
    terms = [(w, make(v)) for v, w in enumerate(f.values) if w]
    if not terms:
        return ZeroOperator(f.vertices, shift, space)
    return LinearCombination.of(*terms)


def _index_sum(ops: list, vertices: VertexSet, shift: int, space: str = FULL) -> "GradedOperator":
    if not ops:
        return ZeroOperator(vertices, shift, space)
    return LinearCombination.of(*((ONE, op) for op in ops))


# ------------------------------------------------------------- combinators


@dataclass(frozen=True, repr=False)
class Compose(GradedOperator):
    """outer ∘ inner."""

    outer: GradedOperator
    inner: GradedOperator

    @property
    def vertices(self):
        return self.inner.vertices

    @property
    def shift(self):
        return self.outer.shift + self.inner.shift

    @property
    def domain(self):
        return self.inner.domain

    @property
    def codomain(self):
        return self.outer.codomain

    def on_path(self, p):
        out: dict = {}
        get = out.get
        outer = self.outer.on_path
        for q, c in self.inner.on_path(p).items():
            for r, d in outer(q).items():
                out[r] = get(r, ZERO) + c * d
        return {r: v for r, v in out.items() if v}

    def symbol(self):
        return f"({self.outer.symbol()} ∘ {self.inner.symbol()})"


@dataclass(frozen=True, repr=False)
class LinearCombination(GradedOperator):
    """Σ c_k A_k over operators with a common shift, domain and codomain."""

    terms: tuple

    @classmethod
    def of(cls, *terms) -> "LinearCombination":
        terms = tuple((to_scalar(c), op) for c, op in terms)
        if not terms:
            raise DomainError("an empty combination has no shift; use ZeroOperator")
        first = terms[0][1]
        for _, op in terms[1:]:
            _check_compatible(first, op)
            if op.shift != first.shift:
                raise DomainError(f"cannot add operators of shifts {first.shift} and {op.shift}")
        return cls(terms)

    @property
    def vertices(self):
        return self.terms[0][1].vertices

    @property
    def shift(self):
        return self.terms[0][1].shift

    @property
    def domain(self):
        return self.terms[0][1].domain

    @property
    def codomain(self):
        return self.terms[0][1].codomain

    def on_path(self, p):
        out: dict = {}
        for c, op in self.terms:
            for q, d in op.on_path(p).items():
                _acc(out, q, c * d)
        return out

    def symbol(self):
        parts = []
        for c, op in self.terms:
            parts.append(op.symbol() if c == 1 else f"{c}·{op.symbol()}")
        return " + ".join(parts)


@dataclass(frozen=True, repr=False)
class Anticommutator(GradedOperator):
    """(A, B) = A∘B + B∘A."""

    a: GradedOperator
    b: GradedOperator

    @property
    def vertices(self):
        return self.a.vertices

    @property
    def shift(self):
        return self.a.shift + self.b.shift

    @property
    def domain(self):
        return self.a.domain

    @property
    def codomain(self):
        return self.a.codomain

    def on_path(self, p):
        out = Compose(self.a, self.b).on_path(p)
        for q, d in Compose(self.b, self.a).on_path(p).items():
            _acc(out, q, d)
        return out

    def expanded(self) -> LinearCombination:
        return LinearCombination.of((ONE, Compose(self.a, self.b)), (ONE, Compose(self.b, self.a)))

    def symbol(self):
        return f"({self.a.symbol()}, {self.b.symbol()})"


def _check_compatible(a: GradedOperator, b: GradedOperator) -> None:
    if a.vertices != b.vertices:
        raise VertexMismatchError(f"operators live on different vertex sets: {a.vertices!r} vs {b.vertices!r}")
    if a.domain != b.domain or a.codomain != b.codomain:
        raise DomainError(f"operators act between different spaces: {a.symbol()} vs {b.symbol()}")


def compose(a: GradedOperator, b: GradedOperator) -> Compose:
    """a ∘ b; shifts add."""
    if a.vertices != b.vertices:
        raise VertexMismatchError(f"cannot compose operators on {a.vertices!r} and {b.vertices!r}")
    if a.domain != b.codomain:
        raise DomainError(f"{a.symbol()} expects {a.domain} input but {b.symbol()} produces {b.codomain} output")
    return Compose(a, b)


def anticommutator(a: GradedOperator, b: GradedOperator) -> Anticommutator:
    """a∘b + b∘a; the two operators must share a shift so the sum stays homogeneous."""
    _check_compatible(a, b)
    if a.shift != b.shift:
        raise DomainError(f"anticommutator needs equal shifts, got {a.shift} and {b.shift}")
    if a.domain != a.codomain:
        raise DomainError("anticommutator needs endomorphisms of one space")
    return Anticommutator(a, b)


# ---------------------------------------------------------------- factories


def face_partial(vertices: VertexSet, v, i: int) -> FacePartial:
    return FacePartial(vertices, vertices.index(v), i)


def coface(vertices: VertexSet, v, i: int) -> Coface:
    return Coface(vertices, vertices.index(v), i)


def weighted_face(f: Weighting, i: int) -> WeightedFace:
    return WeightedFace(f, i)


def weighted_coface(f: Weighting, j: int) -> WeightedCoface:
    return WeightedCoface(f, j)


def boundary(f: Weighting) -> Boundary:
    return Boundary(f)


def coboundary(f: Weighting) -> Coboundary:
    return Coboundary(f)


def boundary_vector(f: Weighting, n: int) -> list[WeightedFace]:
    """(∂_0^f, ..., ∂_n^f) for input degree n."""
    return [WeightedFace(f, i) for i in range(n + 1)]


def coboundary_vector(f: Weighting, n: int) -> list[WeightedCoface]:
    """(d_0^f, ..., d_{n+1}^f) for input degree n."""
    return [WeightedCoface(f, i) for i in range(n + 2)]


def degeneracy(vertices: VertexSet, i: int) -> Degeneracy:
    return Degeneracy(vertices, i)


def identity(vertices: VertexSet, scalar=ONE, space: str = FULL) -> ScaledIdentity:
    return ScaledIdentity(vertices, to_scalar(scalar), space)


# ------------------------------------------------------------------ matrices


class OperatorMatrix:
    """Sparse exact matrix of an operator between two fixed degrees.

    Stored column-wise: ``columns[c]`` maps row index to a nonzero scalar.
    Column c holds the coordinates of the image of source basis path c.
    """

    __slots__ = ("vertices", "space_in", "space_out", "source_degree", "target_degree", "rows", "cols", "columns")

    def __init__(self, vertices, source_degree, target_degree, rows, cols, columns, space_in=FULL, space_out=FULL):
        self.vertices = vertices
        self.source_degree = source_degree
        self.target_degree = target_degree
        self.rows = rows
        self.cols = cols
        self.columns = tuple(columns)
        self.space_in = space_in
        self.space_out = space_out
        if len(self.columns) != cols:
            raise ValueError("column count mismatch")

    @classmethod
    def zero(cls, vertices, source_degree, target_degree, space_in=FULL, space_out=FULL):
        rows = space_dim(vertices, target_degree, space_out) if target_degree >= -1 else 0
        cols = space_dim(vertices, source_degree, space_in)
        return cls(vertices, source_degree, target_degree, rows, cols, [{} for _ in range(cols)], space_in, space_out)

    @classmethod
    def identity(cls, vertices, degree, space=FULL, scalar=ONE):
        d = space_dim(vertices, degree, space)
        cols = [{c: scalar} for c in range(d)] if scalar else [{} for _ in range(d)]
        return cls(vertices, degree, degree, d, d, cols, space, space)

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(col) for col in self.columns)

    @property
    def entries(self) -> dict:
        return {(r, c): v for c, col in enumerate(self.columns) for r, v in col.items()}

    def sorted_entries(self) -> list:
        """(row, col, value) triples sorted by (row, col)."""
        return sorted(((r, c, v) for c, col in enumerate(self.columns) for r, v in col.items()), key=lambda t: (t[0], t[1]))

    def _same_shape(self, other):
        if self.shape != other.shape or self.source_degree != other.source_degree:
            raise DomainError(f"matrix shapes differ: {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.source_degree == other.source_degree
            and self.target_degree == other.target_degree
            and self.columns == other.columns
        )

    __hash__ = None

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._same_shape(other)
        cols = []
        for a, b in zip(self.columns, other.columns):
            if not b:
                cols.append(a)
                continue
            col = dict(a)
            get = col.get
            for r, v in b.items():
                col[r] = get(r, ZERO) + v
            cols.append({r: v for r, v in col.items() if v})
        return self._like(cols)

    def __neg__(self):
        return self._like([{r: -v for r, v in col.items()} for col in self.columns])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        s = to_scalar(scalar)
        if not s:
            return self._like([{} for _ in self.columns])
        return self._like([{r: s * v for r, v in col.items()} for col in self.columns])

    __rmul__ = __mul__

    def _like(self, cols):
        return OperatorMatrix(self.vertices, self.source_degree, self.target_degree, self.rows, self.cols, cols, self.space_in, self.space_out)

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        """Matrix product ``self · other`` (apply ``other`` first)."""
        if self.cols != other.rows or self.source_degree != other.target_degree:
            raise DomainError(
                f"cannot multiply {self.shape} (from degree {self.source_degree}) by "
                f"{other.shape} (to degree {other.target_degree})"
            )
        mine = self.columns
        cols = []
        for col in other.columns:
            out: dict = {}
            get = out.get
            for k, b in col.items():
                for r, a in mine[k].items():
                    out[r] = get(r, ZERO) + a * b
            cols.append({r: v for r, v in out.items() if v})
        return OperatorMatrix(self.vertices, other.source_degree, self.target_degree, self.rows, other.cols, cols, other.space_in, self.space_out)

    def transpose(self) -> "OperatorMatrix":
        cols: list = [{} for _ in range(self.rows)]
        for c, col in enumerate(self.columns):
            for r, v in col.items():
                cols[r][c] = v
        return OperatorMatrix(self.vertices, self.target_degree, self.source_degree, self.cols, self.rows, cols, self.space_out, self.space_in)

    @property
    def T(self):
        return self.transpose()

    def row_basis(self):
        return space_basis(self.vertices, self.target_degree, self.space_out)

    def col_basis(self):
        return space_basis(self.vertices, self.source_degree, self.space_in)

    def apply(self, chain: Chain) -> Chain:
        """Matrix-mediated evaluation of the operator on a chain of the source degree."""
        if chain.vertices != self.vertices:
            raise VertexMismatchError("chain and matrix live on different vertex sets")
        index = space_index(self.vertices, self.source_degree, self.space_in)
        out: dict = {}
        for p, c in chain.items():
            if len(p) - 1 != self.source_degree:
                raise DomainError(f"matrix acts on degree {self.source_degree}, chain has a degree {len(p) - 1} term")
            try:
                col = self.columns[index[p]]
            except KeyError:
                raise DomainError(f"{self.vertices.format_path(p)} is not in the {self.space_in} basis") from None
            for r, v in col.items():
                _acc(out, r, c * v)
        rows = self.row_basis()
        return Chain._trusted(self.vertices, {rows[r]: v for r, v in out.items()})

    def __repr__(self):
        return f"OperatorMatrix({self.rows}x{self.cols}, degree {self.source_degree}->{self.target_degree}, nnz={self.nnz})"


def evaluator(op: GradedOperator, memo: dict | None = None):
    """A function path -> image dict for ``op``.

    Compositions and sums are walked term by term.  With ``memo``, the
    images of primitive operators are remembered per (operator, path), so a
    batch of related compositions evaluates each factor on each path once.
    """
    if isinstance(op, Compose):
        if memo is not None and _leaf(op.inner) and _leaf(op.outer):
            return _memo_pair(op.outer, op.inner, memo)
        inner, outer = evaluator(op.inner, memo), evaluator(op.outer, memo)

        def run(p):
            img = inner(p)
            if len(img) == 1:
                # images never hold zeros, so a single term needs no merging
                ((q, c),) = img.items()
                if c == 1:
                    return outer(q)
                return {r: c * d for r, d in outer(q).items()}
            out: dict = {}
            get = out.get
            for q, c in img.items():
                for r, d in outer(q).items():
                    out[r] = get(r, ZERO) + c * d
            return {r: v for r, v in out.items() if v}

        return run
    if isinstance(op, Anticommutator):
        return evaluator(op.expanded(), memo)
    if isinstance(op, LinearCombination):
        terms = [(c, evaluator(t, memo)) for c, t in op.terms]
        if len(terms) == 1 and terms[0][0]:
            ((c, ev),) = terms

            def scaled(p):
                return {r: c * d for r, d in ev(p).items()}

            return scaled

        def run(p):
            out: dict = {}
            get = out.get
            for c, ev in terms:
                for r, d in ev(p).items():
                    out[r] = get(r, ZERO) + c * d
            return {r: v for r, v in out.items() if v}

        return run
    if memo is None:
        return op.on_path
    table = memo.setdefault(op, {})
    on_path = op.on_path

    def run(p):
        img = table.get(p)
        if img is None:
            img = table[p] = on_path(p)
        return img

    return run


def _leaf(op: GradedOperator) -> bool:
    return not isinstance(op, (Compose, Anticommutator, LinearCombination))


def _memo_pair(outer: GradedOperator, inner: GradedOperator, memo: dict):
    """Evaluator of outer∘inner for two primitives, reading the memo tables inline."""
    t_in, t_out = memo.setdefault(inner, {}), memo.setdefault(outer, {})
    f_in, f_out = inner.on_path, outer.on_path

    def run(p):
        img = t_in.get(p)
        if img is None:
            img = t_in[p] = f_in(p)
        if len(img) == 1:
            ((q, c),) = img.items()
            o = t_out.get(q)
            if o is None:
                o = t_out[q] = f_out(q)
            return o if c == 1 else {r: c * d for r, d in o.items()}
        out: dict = {}
        get = out.get
        for q, c in img.items():
            o = t_out.get(q)
            if o is None:
                o = t_out[q] = f_out(q)
            for r, d in o.items():
                out[r] = get(r, ZERO) + c * d
        return {r: v for r, v in out.items() if v}

    return run


def _columns_for(op: GradedOperator, paths, n_out: int, memo: dict | None = None) -> list:
    index = space_index(op.vertices, n_out, op.codomain)
    try:
        if isinstance(op, LinearCombination) and len(op.terms) == 1 and op.terms[0][0]:
            # fold a lone coefficient into the coordinate map instead of building an extra dict
            (c, term), = op.terms
            on_path = evaluator(term, memo)
            return [{index[q]: c * v for q, v in on_path(p).items()} for p in paths]
        on_path = evaluator(op, memo) if memo is not None else op.on_path
        return [{index[q]: v for q, v in on_path(p).items()} for p in paths]
    except KeyError as exc:
        bad = op.vertices.format_path(exc.args[0])
        raise DomainError(f"{op.symbol()} produced {bad}, which is outside the {op.codomain} basis") from None


def _columns_chunk(args):
    op, paths, n_out = args
    return _columns_for(op, paths, n_out)


def materialize(
    op: GradedOperator, n: int, *, workers: int = 1, cap: int | None = None, memo: dict | None = None
) -> OperatorMatrix:
    """Matrix of ``op`` on degree ``n``: column c = coordinates of op(basis[c]).

    With ``workers > 1`` columns are computed in a process pool; chunks are
    reassembled in column order so the result is identical for any worker count.
    ``memo`` (single process only) shares primitive images between calls; see
    ``evaluator``.
    """
    n_out = n + op.shift
    src = space_basis(op.vertices, n, op.domain, cap)
    if n_out < -1:
        return OperatorMatrix(op.vertices, n, n_out, 0, len(src), [{} for _ in src], op.domain, op.codomain)
    tgt = space_basis(op.vertices, n_out, op.codomain, cap)
    if workers <= 1 or len(src) < 2 * workers:
        cols = _columns_for(op, src, n_out, memo)
    else:
        step = -(-len(src) // workers)
        chunks = [(op, src[k : k + step], n_out) for k in range(0, len(src), step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cols = [col for part in pool.map(_columns_chunk, chunks) for col in part]
    return OperatorMatrix(op.vertices, n, n_out, len(tgt), len(src), cols, op.domain, op.codomain)


def oracle_matrix(op: GradedOperator, n: int, cache: dict | None = None) -> OperatorMatrix:
    """Matrix of ``op`` assembled from its factors' matrices.

    Compositions become matrix products and sums become matrix sums.
    Operators with an ``expand`` decomposition (boundaries as sums of faces,
    regular maps as projected full-space maps) are rebuilt from it; only the remaining primitives are
    materialized from their kernels (memoized in ``cache`` when given).
    """
    if _primitive(op, n):
        return _primitive_matrix(op, n, cache)
    return oracle_product(op, _unit(op.vertices, n, op.domain), cache)


@lru_cache(maxsize=64)
def _unit(vertices, n, space):
    """Shared identity matrix; products recognise it by object identity."""
    return OperatorMatrix.identity(vertices, n, space)


def _primitive(op: GradedOperator, n: int) -> bool:
    if isinstance(op, (Compose, Anticommutator, LinearCombination, ScaledIdentity, ZeroOperator)):
        return False
    return op.expand(n) is None


def _primitive_matrix(op, n, cache):
    if cache is None:
        return materialize(op, n)
    key = ("matrix", op, n)
    m = cache.get(key)
    if m is None:
        m = cache[key] = materialize(op, n)
    return m


def oracle_product(op: GradedOperator, m: OperatorMatrix, cache: dict | None = None) -> OperatorMatrix:
    """matrix(op) · m, pushed through sums and compositions.

    Each primitive factor multiplies the running matrix, so a weighted map on
    a small subspace never builds its full-space matrix.
    """
    n = m.target_degree
    if isinstance(op, Compose):
        return oracle_product(op.outer, oracle_product(op.inner, m, cache), cache)
    if isinstance(op, Anticommutator):
        return oracle_product(op.expanded(), m, cache)
    if isinstance(op, LinearCombination):
        return _combine([(c, oracle_product(term, m, cache)) for c, term in op.terms])
    if isinstance(op, ScaledIdentity):
        return m * op.scalar
    if isinstance(op, ZeroOperator):
        rows = space_dim(op.vertices, n + op.shift, op.codomain) if n + op.shift >= -1 else 0
        return OperatorMatrix(op.vertices, m.source_degree, n + op.shift, rows, m.cols, [{} for _ in range(m.cols)], m.space_in, op.codomain)
    parts = op.expand(n)
    if parts is not None:
        if cache is None:
            return oracle_product(parts, m)
        key = ("assembled", op, n)
        whole = cache.get(key)
        if whole is None:
            whole = cache[key] = oracle_product(parts, _unit(op.vertices, n, op.domain), cache)
        return whole if m is _unit(op.vertices, n, op.domain) else whole @ m
    return _lazy_product(op, m, cache)


def _combine(parts) -> OperatorMatrix:
    """Σ c · matrix over same-shaped matrices, in one pass."""
    c, first = parts[0]
    if len(parts) == 1:
        return first if c == 1 else first * c
    cols = []
    for k in range(first.cols):
        out: dict = {}
        get = out.get
        for c, part in parts:
            for r, a in part.columns[k].items():
                out[r] = get(r, ZERO) + c * a
        cols.append({r: v for r, v in out.items() if v})
    return OperatorMatrix(
        first.vertices, first.source_degree, first.target_degree, first.rows, first.cols, cols, first.space_in, first.space_out
    )


def _lazy_product(op: GradedOperator, m: OperatorMatrix, cache: dict | None) -> OperatorMatrix:
    """matrix(op) · m computing only the columns of matrix(op) that m reaches.

    Columns are kept in ``cache`` under ("columns", op, n) and reused.
    """
    n = m.target_degree
    n_out = n + op.shift
    if m.space_out != op.domain:
        raise DomainError(f"{op.symbol()} expects {op.domain} input, got {m.space_out}")
    known = {} if cache is None else cache.setdefault(("columns", op, n), {})
    if n_out < -1:
        rows = 0
    else:
        rows = space_dim(op.vertices, n_out, op.codomain)
        missing = sorted({k for col in m.columns for k in col if k not in known})
        if missing:
            src = space_basis(op.vertices, n, op.domain)
            for k, col in zip(missing, _columns_for(op, [src[k] for k in missing], n_out)):
                known[k] = col
    if m is _unit(op.vertices, n, op.domain):
        return OperatorMatrix(op.vertices, n, n_out, rows, m.cols, [known.get(k, {}) for k in range(m.cols)], m.space_in, op.codomain)
    cols = []
    for col in m.columns:
        if len(col) == 1:
            ((k, b),) = col.items()
            if b == 1:
                cols.append(known.get(k, {}))
            else:
                cols.append({r: a * b for r, a in known.get(k, {}).items()})
            continue
        out: dict = {}
        get = out.get
        for k, b in col.items():
            for r, a in known.get(k, {}).items():
                out[r] = get(r, ZERO) + a * b
        cols.append({r: v for r, v in out.items() if v})
    return OperatorMatrix(op.vertices, m.source_degree, n_out, rows, m.cols, cols, m.space_in, op.codomain)
