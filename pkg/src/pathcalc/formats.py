"""JSON and CSV encodings of chains, weightings, operators, matrices and reports.

All emitters sort keys and term/entry lists so equal values serialize to
identical bytes.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Any, Mapping

from .bases import FULL, REGULAR, is_regular
from .errors import DomainError, FormatError
from .operators import (
    Anticommutator,
    Boundary,
    Coboundary,
    Coface,
    Compose,
    Degeneracy,
    FacePartial,
    GradedOperator,
    OperatorMatrix,
    ScaledIdentity,
    WeightedCoface,
    WeightedFace,
    ZeroOperator,
    anticommutator,
    compose,
)
from .pathspace import Chain, VertexSet, Weighting
from .regular import (
    DiffAnticommutatorClosed,
    IncludeRegular,
    Induced,
    PartialAnticommutatorClosed,
    ProjectRegular,
    RegularBoundary,
    RegularCoboundary,
    RegularCoface,
    RegularFace,
    WeightedAnticommutatorClosed,
)
from .scalar import format_scalar, parse_scalar


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str, what: str = "input") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{what} is not valid JSON: {exc.msg} at line {exc.lineno}") from None


def _need(obj: Mapping, key: str, kind, what: str):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"{what} is missing {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise FormatError(f"{what}: {key!r} has the wrong type")
    return val


def _scalar_field(text, what: str):
    if not isinstance(text, str):
        raise FormatError(f"{what}: coefficients must be strings like \"2/3\", got {text!r}")
    return parse_scalar(text)


def vertices_from_json(labels) -> VertexSet:
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise FormatError("vertices must be a list of strings")
    try:
        return VertexSet(labels)
    except DomainError as exc:
        raise FormatError(str(exc)) from None


# ----------------------------------------------------------------- chains


def chain_to_json(chain: Chain, space: str | None = None) -> dict:
    vs = chain.vertices
    obj = {
        "vertices": list(vs.labels),
        "terms": [{"path": vs.path_labels(p), "coeff": format_scalar(c)} for p, c in chain.sorted_terms()],
    }
    if space == REGULAR:
        obj["space"] = REGULAR
    return obj


def chain_from_json(obj, vertices: VertexSet | None = None) -> tuple[Chain, str]:
    """Parse a chain document; returns the chain and its declared space."""
    if not isinstance(obj, dict):
        raise FormatError("a chain document must be a JSON object")
    vs = vertices_from_json(_need(obj, "vertices", list, "chain"))
    if vertices is not None and vertices != vs:
        raise DomainError(f"chain vertices {list(vs.labels)} conflict with {list(vertices.labels)}")
    space = obj.get("space", FULL)
    if space not in (FULL, REGULAR):
        raise FormatError(f"unknown space {space!r}")
    terms: dict = {}
    for k, term in enumerate(_need(obj, "terms", list, "chain")):
        where = f"term {k}"
        labels = _need(term, "path", list, where)
        if not all(isinstance(x, str) for x in labels):
            raise FormatError(f"{where}: a path must be a list of vertex labels")
        try:
            path = tuple(vs.index(x) for x in labels)
        except DomainError as exc:
            raise FormatError(f"{where}: {exc}") from None
        coeff = _scalar_field(term.get("coeff"), where)
        if not coeff:
            raise FormatError(f"{where}: zero coefficients are not allowed")
        if path in terms:
            raise FormatError(f"{where}: path {vs.format_path(path)} appears twice")
        if space == REGULAR and not is_regular(path):
            raise FormatError(f"{where}: path {vs.format_path(path)} is irregular but the chain is marked regular")
        terms[path] = coeff
    return Chain(vs, terms), space


# -------------------------------------------------------------- weightings


def weighting_to_json(f: Weighting) -> dict:
    return f.as_dict()


def weighting_from_json(obj, vertices: VertexSet) -> Weighting:
    if not isinstance(obj, dict):
        raise FormatError("a weighting must be a JSON object mapping vertex labels to coefficients")
    extra = sorted(k for k in obj if k not in vertices.labels)
    if extra:
        raise FormatError(f"weighting names unknown vertices {extra}")
    missing = [v for v in vertices.labels if v not in obj]
    if missing:
        raise FormatError(f"weighting is missing vertices {missing}")
    return Weighting(vertices, [_scalar_field(obj[v], f"weighting[{v}]") for v in vertices.labels])


# --------------------------------------------------------------- operators

_WEIGHTED_INDEXED = {
    "weighted_face": WeightedFace,
    "weighted_coface": WeightedCoface,
    "regular_face": RegularFace,
    "regular_coface": RegularCoface,
}
_WEIGHTED = {
    "boundary": Boundary,
    "coboundary": Coboundary,
    "regular_boundary": RegularBoundary,
    "regular_coboundary": RegularCoboundary,
}
_VERTEX_INDEXED = {"face_partial": FacePartial, "coface": Coface}
_KIND_OF = {cls: kind for table in (_WEIGHTED_INDEXED, _WEIGHTED, _VERTEX_INDEXED) for kind, cls in table.items()}

OPERATOR_KINDS = tuple(
    sorted(
        list(_KIND_OF.values())
        + [
            "degeneracy",
            "compose",
            "anticommutator",
            "reduced_partial",
            "reduced_diff",
            "anticommutator_partial_closed",
            "anticommutator_diff_closed",
            "anticommutator_weighted_closed",
            "project_regular",
            "include_regular",
            "induced",
            "identity",
            "zero",
        ]
    )
)


def _is_char(f: Weighting):
    """Index of v when f is the indicator of v, else None."""
    nz = [k for k, x in enumerate(f.values) if x]
    if len(nz) == 1 and f.values[nz[0]] == 1:
        return nz[0]
    return None


def operator_to_descriptor(op: GradedOperator) -> dict:
    cls = type(op)
    if cls in (WeightedFace, WeightedCoface, RegularFace, RegularCoface):
        return {"kind": _KIND_OF[cls], "index": op.i, "weighting": op.f.as_dict()}
    if cls in (RegularBoundary, RegularCoboundary):
        v = _is_char(op.f)
        if v is not None:
            kind = "reduced_partial" if cls is RegularBoundary else "reduced_diff"
            return {"kind": kind, "vertex": op.vertices.labels[v]}
        return {"kind": _KIND_OF[cls], "weighting": op.f.as_dict()}
    if cls in (Boundary, Coboundary):
        return {"kind": _KIND_OF[cls], "weighting": op.f.as_dict()}
    if cls in (FacePartial, Coface):
        return {"kind": _KIND_OF[cls], "index": op.i, "vertex": op.vertices.labels[op.v]}
    if cls is Degeneracy:
        return {"kind": "degeneracy", "index": op.i}
    if cls is Compose:
        return {"kind": "compose", "args": [operator_to_descriptor(op.outer), operator_to_descriptor(op.inner)]}
    if cls is Anticommutator:
        return {"kind": "anticommutator", "args": [operator_to_descriptor(op.a), operator_to_descriptor(op.b)]}
    if cls is PartialAnticommutatorClosed:
        d = {"kind": "anticommutator_partial_closed", "vertices": [op.vertices.labels[op.v], op.vertices.labels[op.u]]}
        if op.corrected:
            d["corrected"] = True
        return d
    if cls is DiffAnticommutatorClosed:
        return {"kind": "anticommutator_diff_closed", "vertices": [op.vertices.labels[op.v], op.vertices.labels[op.u]]}
    if cls is WeightedAnticommutatorClosed:
        d = {
            "kind": "anticommutator_weighted_closed",
            "which": op.which,
            "weightings": [op.f.as_dict(), op.g.as_dict()],
        }
        if op.corrected:
            d["corrected"] = True
        return d
    if cls is ProjectRegular:
        return {"kind": "project_regular"}
    if cls is IncludeRegular:
        return {"kind": "include_regular"}
    if cls is Induced:
        return {"kind": "induced", "args": [operator_to_descriptor(op.op)]}
    if cls is ScaledIdentity:
        return {"kind": "identity", "scalar": format_scalar(op.scalar), "space": op.space}
    if cls is ZeroOperator:
        return {"kind": "zero", "shift": op.shift, "space": op.space}
    raise FormatError(f"no descriptor encoding for {op.symbol()}")


def _index(d, what):
    i = _need(d, "index", int, what)
    if isinstance(i, bool) or i < 0:
        raise FormatError(f"{what}: index must be a nonnegative integer")
    return i


def _vertex(d, vs: VertexSet, what, key="vertex"):
    label = _need(d, key, str, what)
    try:
        return vs.index(label)
    except DomainError as exc:
        raise FormatError(f"{what}: {exc}") from None


def _vertex_pair(d, vs, what):
    pair = _need(d, "vertices", list, what)
    if len(pair) != 2 or not all(isinstance(x, str) for x in pair):
        raise FormatError(f"{what}: 'vertices' must be two labels [v, u]")
    try:
        return vs.index(pair[0]), vs.index(pair[1])
    except DomainError as exc:
        raise FormatError(f"{what}: {exc}") from None


def _space(d, what):
    space = d.get("space", FULL)
    if space not in (FULL, REGULAR):
        raise FormatError(f"{what}: unknown space {space!r}")
    return space


def descriptor_to_operator(d, vs: VertexSet) -> GradedOperator:
    """Build an operator from its descriptor over the vertex set ``vs``."""
    if not isinstance(d, dict):
        raise FormatError("an operator descriptor must be a JSON object")
    kind = _need(d, "kind", str, "descriptor")
    what = f"descriptor {kind!r}"
    if kind in _WEIGHTED_INDEXED:
        f = weighting_from_json(_need(d, "weighting", dict, what), vs)
        return _WEIGHTED_INDEXED[kind](f, _index(d, what))
    if kind in _WEIGHTED:
        return _WEIGHTED[kind](weighting_from_json(_need(d, "weighting", dict, what), vs))
    if kind in _VERTEX_INDEXED:
        return _VERTEX_INDEXED[kind](vs, _vertex(d, vs, what), _index(d, what))
    if kind == "degeneracy":
        return Degeneracy(vs, _index(d, what))
    if kind in ("reduced_partial", "reduced_diff"):
        from .pathspace import characteristic

        f = characteristic(vs, _vertex(d, vs, what))
        return RegularBoundary(f) if kind == "reduced_partial" else RegularCoboundary(f)
    if kind in ("compose", "anticommutator"):
        args = _need(d, "args", list, what)
        if len(args) != 2:
            raise FormatError(f"{what}: 'args' must hold exactly two descriptors")
        a, b = (descriptor_to_operator(x, vs) for x in args)
        return compose(a, b) if kind == "compose" else anticommutator(a, b)
    if kind == "anticommutator_partial_closed":
        v, u = _vertex_pair(d, vs, what)
        return PartialAnticommutatorClosed(vs, v, u, bool(d.get("corrected", False)))
    if kind == "anticommutator_diff_closed":
        v, u = _vertex_pair(d, vs, what)
        return DiffAnticommutatorClosed(vs, v, u)
    if kind == "anticommutator_weighted_closed":
        ws = _need(d, "weightings", list, what)
        if len(ws) != 2:
            raise FormatError(f"{what}: 'weightings' must hold two weightings [f, g]")
        f, g = (weighting_from_json(w, vs) for w in ws)
        which = _need(d, "which", str, what)
        if which not in ("partial", "diff"):
            raise FormatError(f"{what}: 'which' must be 'partial' or 'diff'")
        return WeightedAnticommutatorClosed(f, g, which, bool(d.get("corrected", False)))
    if kind == "project_regular":
        return ProjectRegular(vs)
    if kind == "include_regular":
        return IncludeRegular(vs)
    if kind == "induced":
        args = _need(d, "args", list, what)
        if len(args) != 1:
            raise FormatError(f"{what}: 'args' must hold exactly one descriptor")
        try:
            return Induced(descriptor_to_operator(args[0], vs))
        except DomainError as exc:
            raise FormatError(f"{what}: {exc}") from None
    if kind == "identity":
        return ScaledIdentity(vs, _scalar_field(d.get("scalar", "1"), what), _space(d, what))
    if kind == "zero":
        shift = d.get("shift", 0)
        if not isinstance(shift, int) or isinstance(shift, bool):
            raise FormatError(f"{what}: 'shift' must be an integer")
        return ZeroOperator(vs, shift, _space(d, what))
    raise FormatError(f"unknown operator kind {kind!r}; expected one of {', '.join(OPERATOR_KINDS)}")


# ---------------------------------------------------------------- matrices


def matrix_to_json(m: OperatorMatrix, legends: bool = True) -> dict:
    obj = {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[r, c, format_scalar(v)] for r, c, v in m.sorted_entries()],
    }
    if legends:
        vs = m.vertices
        obj["source_degree"] = m.source_degree
        obj["target_degree"] = m.target_degree
        obj["space_in"] = m.space_in
        obj["space_out"] = m.space_out
        obj["row_legend"] = [vs.format_path(p) for p in m.row_basis()]
        obj["col_legend"] = [vs.format_path(p) for p in m.col_basis()]
    return obj


def matrix_to_csv(m: OperatorMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row", "col", "value"])
    for r, c, v in m.sorted_entries():
        w.writerow([r, c, format_scalar(v)])
    return buf.getvalue()


def matrix_entries_from_json(obj) -> tuple[int, int, dict]:
    """(rows, cols, {(r, c): scalar}) from a matrix document."""
    rows = _need(obj, "rows", int, "matrix")
    cols = _need(obj, "cols", int, "matrix")
    out = {}
    for e in _need(obj, "entries", list, "matrix"):
        if not (isinstance(e, list) and len(e) == 3 and isinstance(e[0], int) and isinstance(e[1], int)):
            raise FormatError(f"bad matrix entry {e!r}")
        if not (0 <= e[0] < rows and 0 <= e[1] < cols):
            raise FormatError(f"matrix entry {e!r} is out of bounds")
        out[(e[0], e[1])] = _scalar_field(e[2], "matrix entry")
    return rows, cols, out


def matrix_entries_from_csv(text: str) -> dict:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["row", "col", "value"]:
        raise FormatError("CSV matrix must start with the header row,col,value")
    out = {}
    for rec in rows[1:]:
        if len(rec) != 3:
            raise FormatError(f"bad CSV record {rec!r}")
        try:
            key = (int(rec[0]), int(rec[1]))
        except ValueError:
            raise FormatError(f"bad CSV record {rec!r}") from None
        out[key] = parse_scalar(rec[2])
    return out
