"""Run two identity suites on a small scope and search for a counterexample."""
import json

from pathcalc import VertexSet, find_counterexample, run_suite

report = run_suite("main1", [VertexSet.parse("a,b")], max_degree=3, trials=5)
print("full-space identities on {a, b}, degrees <= 3:", report.summary)

report = run_suite("usual", [VertexSet.parse("a,b")], max_degree=3)
middle = report.named("usual.second.middle")[-1]
print("\nmeasured scalars of face . degeneracy at the middle indices, degree 3:")
for key, value in middle.measured["scalars"].items():
    print(f"  {key}: {value}")

report = run_suite("anticomm", [VertexSet.parse("a,b")], max_degree=3, trials=2)
print("\nanti-commutator checks that did not pass:")
for check in report.checks:
    if check.result != "pass":
        print(f"  {check.name} (degree {check.scope.get('degree', '-')}): {check.result}")

witness = find_counterexample("reg-face-swap-adjacent", VertexSet.parse("a,b"), 3)
print("\nadjacent face swap on regular paths fails at:")
print(json.dumps({k: witness[k] for k in ("path", "i", "j", "f", "g", "lhs", "rhs")}, indent=2))
