"""Chains, joins, weighted faces and their matrices on three vertices."""
from pathcalc import Boundary, Chain, Coboundary, VertexSet, Weighting, compose, join, materialize
from pathcalc.formats import matrix_to_csv
from pathcalc.operators import WeightedCoface, WeightedFace

vs = VertexSet.parse("a,b,c")
f = Weighting(vs, [1, 2, 3])

xi = Chain(vs, {"ab": 2, "ca": "-1/3"})
eta = Chain(vs, {"c": 1})
print("xi        =", xi)
print("xi * eta  =", join(xi, eta))

print("\nFaces of abc under f = (1, 2, 3):")
abc = Chain(vs, {"abc": 1})
for i in range(3):
    print(f"  face_{i}(abc) =", WeightedFace(f, i)(abc))
print("  boundary     =", Boundary(f)(abc))

print("\nCo-faces of a:")
a = Chain(vs, {"a": 1})
for i in range(2):
    print(f"  coface_{i}(a) =", WeightedCoface(f, i)(a))

print("\nThe boundary squares to zero:", Boundary(f)(Boundary(f)(abc)).is_zero())
print("so does the co-boundary:     ", Coboundary(f)(Coboundary(f)(a)).is_zero())

# a face followed by the co-face at the same index multiplies by <f, f> = 14
print("\n(face_1 . coface_1)(ab) =", compose(WeightedFace(f, 1), WeightedCoface(f, 1))(Chain(vs, {"ab": 1})))

m = materialize(Boundary(f), 1)
print(f"\nBoundary on degree 1 as a {m.rows}x{m.cols} sparse matrix:")
print(matrix_to_csv(m), end="")
print("co-boundary from degree 0 is its transpose:", materialize(Coboundary(f), 0) == m.transpose())
