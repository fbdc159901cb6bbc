"""Acceptance criteria, one test each, at exact (zero-tolerance) equality.

Every test records a ``criterion N: PASS|FAIL`` line; conftest prints them
together at the end of the run.  Run this file directly to get only the lines.
Criteria 4 and 6 fail on purpose: the identities they include do not hold as
stated, and the failing instances are reported rather than hidden.
"""
import random
import shutil
import subprocess
import sys
import time

import pytest

from pathcalc import (
    Induced,
    RegularCoface,
    RegularFace,
    VertexSet,
    WeightedCoface,
    WeightedFace,
    enumerate_basis,
    find_counterexample,
    is_regular,
    materialize,
    regular_basis,
    run_suite,
)
from pathcalc.verifier import FAIL, IDENTITY_IDS, PASS, edge_weightings, random_weighting

LINES: list = []
RUNTIME_LIMIT = 30.0


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number:>2} [{title}]: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else "")
    LINES.append(line)
    print(line)
    assert ok, line


def sizes_of(k):
    return VertexSet.of_size(k)


def failing(report):
    return sorted({c.name for c in report.checks if c.result == FAIL})


def not_passing(report):
    return sorted({f"{c.name}={c.result}" for c in report.checks if c.result != PASS})


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def test_criterion_1_main_result_one():
    report, secs = timed(lambda: run_suite("main1", sizes=(1, 2, 3), max_degree=4, seed=42, trials=20))
    bad = not_passing(report)
    detail = f"{len(report.checks)} checks, {secs:.1f}s" + (f"; {bad}" if bad else "")
    record(1, "main1 suite", not bad and secs < RUNTIME_LIMIT, detail)


def test_criterion_2_main_result_two():
    report, secs = timed(lambda: run_suite("main2", sizes=(2, 3, 4), max_degree=4, seed=42, trials=20))
    bad = not_passing(report)
    eq = report.named("main2.face-coface.eq")
    scalars_seen = all(c.measured and c.measured.get("ones_scalar_counts") for c in eq)
    detail = f"{len(report.checks)} checks, {secs:.1f}s" + (f"; {bad}" if bad else "")
    record(2, "main2 suite", not bad and bool(eq) and scalars_seen and secs < RUNTIME_LIMIT, detail)


def test_criterion_3_coordinate_lemmas():
    report = run_suite("lemmas21", sizes=(1, 2, 3), max_degree=4)
    bad = not_passing(report)
    middle = report.named("lemmas21.face-coface.eq")
    record(3, "coordinate lemmas", not bad and bool(middle), f"{len(report.checks)} checks" + (f"; {bad}" if bad else ""))


def test_criterion_4_structural():
    report = run_suite("structural", sizes=(1, 2, 3), max_degree=4, seed=42, trials=20)
    adjoint_degrees = {c.scope["degree"] for c in report.named("structural.adjoint") if c.scope["vertices"] == ["a", "b", "c"]}
    bad = failing(report)
    detail = f"{len(report.checks)} checks" + (f"; failing: {bad}" if bad else "")
    record(4, "structural suite", not bad and {1, 2, 3, 4} <= adjoint_degrees, detail)


def test_criterion_5_regular_factorization():
    mismatches, instances = [], 0
    for k in (1, 2, 3):
        vs = sizes_of(k)
        rng = random.Random(f"factorization:{k}")
        weightings = edge_weightings(vs) + [random_weighting(vs, rng) for _ in range(5)]
        for n in range(5):
            if not regular_basis(vs, n):
                continue
            for f in weightings:
                for i in range(n + 1):
                    instances += 1
                    if materialize(RegularFace(f, i), n) != materialize(Induced(WeightedFace(f, i)), n):
                        mismatches.append(("face", k, n, i, f))
                for i in range(n + 2):
                    instances += 1
                    if materialize(RegularCoface(f, i), n) != materialize(Induced(WeightedCoface(f, i)), n):
                        mismatches.append(("coface", k, n, i, f))
    record(5, "regular factorization", not mismatches, f"{instances} operator matrices" + (f"; {mismatches[:3]}" if mismatches else ""))


def test_criterion_6_anticommutators():
    report = run_suite("anticomm", sizes=(1, 2, 3), max_degree=3, seed=42, trials=20)
    bad = failing(report)
    witness = {c.result for c in report.named("anticomm.nonzero-witness") if c.scope["vertices"] == ["a", "b", "c"]}
    self_zero = {c.result for c in report.named("anticomm.diff-self-zero")}
    ok = not bad and witness == {PASS} and self_zero == {PASS}
    detail = f"failing: {bad}; nonzero witness on 3 vertices: {sorted(witness)}"
    record(6, "anticommutator equivalence", ok, detail)


def test_criterion_7_counterexample_search():
    ab = VertexSet.parse("a,b")
    w = find_counterexample("reg-face-swap-adjacent", ab, 3)
    expected = (
        w is not None
        and w["path"] == ["a", "b", "a"]
        and (w["i"], w["j"]) == (0, 1)
        and w["f"] == {"a": "1", "b": "0"}
        and w["g"] == {"a": "0", "b": "1"}
        and w["lhs"] == []
        and w["rhs"] == [{"path": ["a"], "coeff": "-1"}]
        and w["oracle_confirms"]
    )
    in_range = {ident: find_counterexample(ident, ab, 3, "in-range") for ident in IDENTITY_IDS}
    clean = all(v is None for v in in_range.values())
    record(7, "counterexample search", expected and clean, f"witness path {w and ''.join(w['path'])}")


def test_criterion_8_dimensions():
    wrong = []
    for k in (1, 2, 3, 4):
        vs = sizes_of(k)
        for n in range(5):
            full = enumerate_basis(vs, n)
            reg = [p for p in full if is_regular(p)]
            if len(full) != k ** (n + 1) or len(reg) != k * (k - 1) ** n or tuple(reg) != regular_basis(vs, n):
                wrong.append((k, n))
    record(8, "dimension checks", not wrong, "20 (size, degree) cells" + (f"; wrong: {wrong}" if wrong else ""))


def _cli(*args):
    exe = shutil.which("pathcalc")
    cmd = [exe] if exe else [sys.executable, "-m", "pathcalc.cli"]
    return subprocess.run(cmd + list(args), capture_output=True, check=False)


def test_criterion_9_determinism(tmp_path):
    first = _cli("verify", "--suite", "all")
    second = _cli("verify", "--suite", "all")
    reports_same = first.stdout == second.stdout and first.returncode == second.returncode and len(first.stdout) > 0
    op = tmp_path / "op.json"
    op.write_text('{"kind": "coboundary", "weighting": {"a": "1", "b": "-2/3", "c": "5"}, "vertices": ["a", "b", "c"]}')
    exports = set()
    for fmt in ("json", "csv"):
        outs = {_cli("matrix", "--op", str(op), "--degree", "3", "--format", fmt, "--workers", w).stdout for w in ("1", "2", "4")}
        exports.add(len(outs))
    record(9, "determinism", reports_same and exports == {1}, f"report {len(first.stdout)} bytes, exit {first.returncode}")


def test_criterion_10_usual_simplicial():
    a = run_suite("usual", sizes=(1, 2, 3), max_degree=4)
    b = run_suite("usual", sizes=(1, 2, 3), max_degree=4)
    first_third = [c for c in a.checks if c.name in ("usual.first", "usual.third")]
    measured_a = [c.measured for c in a.named("usual.second.middle")]
    measured_b = [c.measured for c in b.named("usual.second.middle")]
    ok = all(c.result == PASS for c in first_third) and first_third and measured_a and measured_a == measured_b
    signs = sorted({v for m in measured_a for v in m["scalars"].values()})
    record(10, "usual simplicial suite", bool(ok), f"measured middle-case scalars {signs}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
