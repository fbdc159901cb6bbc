"""Regular paths: the induced maps, their closed forms, and where they differ."""
from pathcalc import (
    Boundary,
    Chain,
    RegularBoundary,
    RegularCoface,
    RegularFace,
    VertexSet,
    Weighting,
    compose,
    project_regular,
    reduced_diff,
    reduced_partial,
    regular_dim,
)

vs = VertexSet.parse("a,b,c")
f = Weighting(vs, [1, 2, 3])

print("dims of the regular space, degrees 0..4:", [regular_dim(vs, n) for n in range(5)])

aba = Chain(vs, {"aba": 1})
print("\nOn the full space the middle face of aba leaves aa:", Boundary(f)(aba))
print("projected onto regular paths:                   ", project_regular(Boundary(f)(aba)))
print("the regular boundary computes that directly:     ", RegularBoundary(f)(aba))
print("middle regular face, alone:                      ", RegularFace(f, 1)(aba))

ab = Chain(vs, {"ab": 1})
print("\nRegular co-faces of ab skip vertices equal to a neighbour:")
for i in range(3):
    print(f"  index {i}:", RegularCoface(f, i)(ab))

# face_1 after coface_1 on ab only sees the vertex outside {a, b}: 3 * 3
print("\n(face_1 . coface_1)(ab) =", compose(RegularFace(f, 1), RegularCoface(f, 1))(ab))

print("\nReduced operators for the indicator of a:")
print("  partial(aba) =", reduced_partial(vs, "a")(aba))
print("  diff(b)      =", reduced_diff(vs, "a")(Chain(vs, {"b": 1})))
