"""``pathcalc`` command line.

Exit codes: 0 success, 1 verification failure (or no counterexample found),
2 usage or parse error, 3 domain error, 4 basis cap exceeded.  Errors are a
single ``pathcalc: <kind>: <message>`` line on stderr.
"""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .bases import FULL, REGULAR, space_dim
from .errors import BasisCapError, DomainError, FormatError, VertexMismatchError
from .formats import (
    chain_to_json,
    chain_from_json,
    descriptor_to_operator,
    dumps,
    loads,
    matrix_to_csv,
    matrix_to_json,
    vertices_from_json,
)
from .operators import materialize
from .pathspace import VertexSet, basis_cap, cap_override, check_cap
from .regular import Induced
from .verifier import DEFAULT_SEED, DEFAULT_TRIALS, IDENTITY_IDS, SUITES, find_counterexample, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN, EXIT_CAP = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _vertices_arg(text: str) -> VertexSet:
    try:
        return VertexSet.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sizes_arg(text: str) -> tuple:
    try:
        sizes = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if any(k < 1 for k in sizes):
        raise argparse.ArgumentTypeError("vertex-set sizes must be positive")
    return sizes


def _nonneg(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if k < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return k


def _positive(text: str) -> int:
    k = _nonneg(text)
    if k == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return k


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--basis-cap", type=_positive, default=None, help="largest basis to enumerate (default $PATHCALC_BASIS_CAP or 10**6)"
    )

    p = _Parser(prog="pathcalc", description="Exact path algebra, face/co-face operators and identity checks.")
    p.add_argument("--version", action="version", version=f"pathcalc {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("dims", parents=[common], help="dimensions of the full and regular path spaces")
    d.add_argument("--vertices", type=_vertices_arg, required=True, help="comma-separated labels, e.g. a,b,c")
    d.add_argument("--max-degree", type=_nonneg, default=4)
    d.add_argument("--format", choices=("json", "human"), default="json")

    a = sub.add_parser("apply", parents=[common], help="apply an operator descriptor to a chain")
    a.add_argument("--op", required=True, help="operator descriptor JSON file")
    a.add_argument("--chain", required=True, help="chain JSON file")
    a.add_argument("--vertices", type=_vertices_arg, help="must agree with the chain file when both are given")

    m = sub.add_parser("matrix", parents=[common], help="export the matrix of an operator at one degree")
    m.add_argument("--op", required=True, help="operator descriptor JSON file")
    m.add_argument("--degree", type=int, required=True)
    m.add_argument(
        "--space",
        choices=(FULL, REGULAR),
        help="basis to use; a full-space operator on 'regular' is taken as P∘op∘ι (default: the operator's own)",
    )
    m.add_argument("--format", choices=("json", "csv"), default="json")
    m.add_argument("--workers", type=_positive, default=1, help="processes for column evaluation")
    m.add_argument("--vertices", type=_vertices_arg, help="needed unless the descriptor file lists its vertices")

    v = sub.add_parser("verify", parents=[common], help="run identity suites and print a JSON report")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--vertices", type=_vertices_arg, help="one vertex set instead of the suite's default sizes")
    v.add_argument("--sizes", type=_sizes_arg, help="vertex-set sizes, e.g. 1,2,3 (labels a, b, c, ...)")
    v.add_argument("--max-degree", type=_nonneg)
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--trials", type=_nonneg, default=DEFAULT_TRIALS, help="random weighting pairs per vertex set")

    c = sub.add_parser("counterexample", parents=[common], help="search the excluded index cases of a regular identity")
    c.add_argument("--identity", choices=IDENTITY_IDS, required=True)
    c.add_argument("--vertices", type=_vertices_arg, default=VertexSet.parse("a,b"))
    c.add_argument("--max-degree", type=_nonneg, default=3)
    c.add_argument("--range", choices=("excluded", "in-range"), default="excluded", dest="scope")
    return p


# ---------------------------------------------------------------- commands


def _read_json(path: str, what: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {what} {path!r}: {exc.strerror}") from None
    return loads(text, f"{what} {path!r}")


def _resolve_vertices(*candidates) -> VertexSet | None:
    """The one vertex set the sources agree on; differing sources are a usage error."""
    found = [(src, vs) for src, vs in candidates if vs is not None]
    for src, vs in found[1:]:
        if vs != found[0][1]:
            raise UsageError(
                f"vertex sets conflict: {found[0][0]} gives {','.join(found[0][1].labels)}, {src} gives {','.join(vs.labels)}"
            )
    return found[0][1] if found else None


def _descriptor_vertices(doc) -> VertexSet | None:
    if isinstance(doc, dict) and "vertices" in doc:
        return vertices_from_json(doc["vertices"])
    return None


def cmd_dims(args) -> int:
    vs: VertexSet = args.vertices
    for n in range(args.max_degree + 1):
        check_cap(space_dim(vs, n, FULL))
    lam = [space_dim(vs, n, FULL) for n in range(args.max_degree + 1)]
    reg = [space_dim(vs, n, REGULAR) for n in range(args.max_degree + 1)]
    if args.format == "human":
        width = max(len(str(x)) for x in lam + reg + [args.max_degree, 7])
        print("degree  " + " ".join(str(n).rjust(width) for n in range(args.max_degree + 1)))
        print("lambda  " + " ".join(str(x).rjust(width) for x in lam))
        print("regular " + " ".join(str(x).rjust(width) for x in reg))
    else:
        sys.stdout.write(dumps({"vertices": list(vs.labels), "max_degree": args.max_degree, "lambda": lam, "regular": reg}))
    return EXIT_OK


def cmd_apply(args) -> int:
    op_doc = _read_json(args.op, "operator file")
    chain_doc = _read_json(args.chain, "chain file")
    chain_vs = vertices_from_json(chain_doc.get("vertices")) if isinstance(chain_doc, dict) else None
    vs = _resolve_vertices(("--vertices", args.vertices), ("the chain file", chain_vs), ("the operator file", _descriptor_vertices(op_doc)))
    if vs is None:
        raise FormatError("the chain file does not list its vertices")
    chain, _ = chain_from_json(chain_doc, vs)
    op = descriptor_to_operator(op_doc, vs)
    sys.stdout.write(dumps(chain_to_json(op(chain), op.codomain)))
    return EXIT_OK


def cmd_matrix(args) -> int:
    op_doc = _read_json(args.op, "operator file")
    vs = _resolve_vertices(("--vertices", args.vertices), ("the operator file", _descriptor_vertices(op_doc)))
    if vs is None:
        raise UsageError("no vertex set: pass --vertices or add a 'vertices' list to the operator file")
    op = descriptor_to_operator(op_doc, vs)
    space = args.space or op.domain
    if space != op.domain:
        if space == REGULAR:
            op = Induced(op)
        else:
            raise DomainError(f"{op.symbol()} is only defined on regular paths")
    if args.degree < -1:
        raise DomainError(f"degree must be at least -1, got {args.degree}")
    m = materialize(op, args.degree, workers=args.workers)
    sys.stdout.write(matrix_to_csv(m) if args.format == "csv" else dumps(matrix_to_json(m)))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.vertices is not None and args.sizes is not None:
        raise UsageError("--vertices and --sizes are alternatives; give one")
    sets = [args.vertices] if args.vertices is not None else None
    report = run_suite(args.suite, sets, args.sizes, args.max_degree, args.seed, args.trials)
    sys.stdout.write(dumps(report.to_json()))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_counterexample(args) -> int:
    w = find_counterexample(args.identity, args.vertices, args.max_degree, args.scope)
    doc = {
        "identity": args.identity,
        "vertices": list(args.vertices.labels),
        "max_degree": args.max_degree,
        "range": args.scope,
        "found": w is not None,
    }
    if w is not None:
        doc["witness"] = w
    sys.stdout.write(dumps(doc))
    return EXIT_OK if w is not None else EXIT_FAIL


COMMANDS = {
    "dims": cmd_dims,
    "apply": cmd_apply,
    "matrix": cmd_matrix,
    "verify": cmd_verify,
    "counterexample": cmd_counterexample,
}


def _fail(kind: str, message, code: int) -> int:
    text = " ".join(str(message).split())
    print(f"pathcalc: {kind}: {text}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _fail("usage", exc, EXIT_USAGE)
    try:
        try:
            basis_cap()
        except DomainError as exc:  # malformed $PATHCALC_BASIS_CAP
            raise UsageError(str(exc)) from None
        with cap_override(args.basis_cap):
            return COMMANDS[args.command](args)
    except UsageError as exc:
        return _fail("usage", exc, EXIT_USAGE)
    except FormatError as exc:
        return _fail("parse", exc, EXIT_USAGE)
    except VertexMismatchError as exc:
        return _fail("usage", exc, EXIT_USAGE)
    except BasisCapError as exc:
        return _fail("cap", exc, EXIT_CAP)
    except DomainError as exc:
        return _fail("domain", exc, EXIT_DOMAIN)


if __name__ == "__main__":
    sys.exit(main())
