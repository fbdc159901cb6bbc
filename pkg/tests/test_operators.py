import pytest
from helpers import C, V, W
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import chains, vertex_sets, weightings

from pathcalc import (
    Boundary,
    Chain,
    Coboundary,
    DomainError,
    IndexRangeError,
    OperatorMatrix,
    VertexMismatchError,
    WeightedCoface,
    WeightedFace,
    anticommutator,
    characteristic,
    compose,
    identity,
    materialize,
    oracle_matrix,
)
from pathcalc.operators import coface, degeneracy, face_partial


def chi(vs, v):
    return characteristic(vs, v)


# -- coordinate operators

@pytest.mark.parametrize(
    "v, i, path, expected",
    [("b", 1, "ab", {"a": -1}), ("c", 1, "ab", {}), ("b", 2, "abb", {"ab": 1}), ("a", 0, "ab", {"b": 1})],
)
def test_face_partial(abc, v, i, path, expected):
    assert face_partial(abc, v, i)(C(abc, {path: 1})) == C(abc, expected)


@pytest.mark.parametrize("i, expected", [(0, {"cab": 1}), (1, {"acb": -1}), (2, {"abc": 1})])
def test_coface(abc, i, expected):
    assert coface(abc, "c", i)(C(abc, {"ab": 1})) == C(abc, expected)


def test_coordinate_index_out_of_range(abc):
    with pytest.raises(IndexRangeError):
        face_partial(abc, "a", 2)(C(abc, {"ab": 1}))
    with pytest.raises(IndexRangeError):
        coface(abc, "a", 3)(C(abc, {"ab": 1}))


# -- weighted faces and co-faces

def test_weighted_face_examples(abc):
    f = W(abc, 1, 2, 3)
    assert WeightedFace(f, 0)(C(abc, {"ba": 1})) == C(abc, {"a": 2})
    assert WeightedFace(f, 1)(C(abc, {"ba": 1})) == C(abc, {"b": -1})
    assert WeightedFace(f, 1)(C(abc, {"abc": 1})) == C(abc, {"ac": -2})


def test_weighted_coface_examples(abc):
    f = W(abc, 1, 2, 3)
    assert WeightedCoface(f, 0)(C(abc, {"a": 1})) == C(abc, {"aa": 1, "ba": 2, "ca": 3})
    assert WeightedCoface(f, 1)(C(abc, {"a": 1})) == C(abc, {"aa": -1, "ab": -2, "ac": -3})
    assert WeightedCoface(chi(abc, "c"), 1)(C(abc, {"ab": 1})) == C(abc, {"acb": -1})


def test_weighted_index_out_of_range(abc):
    f = W(abc, 1, 2, 3)
    with pytest.raises(IndexRangeError):
        WeightedFace(f, 2)(C(abc, {"ab": 1}))
    with pytest.raises(IndexRangeError):
        WeightedCoface(f, 3)(C(abc, {"ab": 1}))
    with pytest.raises(IndexRangeError):
        WeightedFace(f, 0)(Chain.basis(abc, ()))


def test_vertex_mismatch(ab, abc):
    with pytest.raises(VertexMismatchError):
        WeightedFace(W(ab, 1, 1), 0)(C(abc, {"ab": 1}))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_weighted_maps_match_their_coordinate_sums(data):
    vs = data.draw(vertex_sets)
    f = data.draw(weightings(vs))
    n = data.draw(st.integers(0, 3))
    x = data.draw(chains(vs, n))
    i = data.draw(st.integers(0, n))
    assert WeightedFace(f, i)(x) == WeightedFace(f, i).coordinates()(x)
    j = data.draw(st.integers(0, n + 1))
    assert WeightedCoface(f, j)(x) == WeightedCoface(f, j).coordinates()(x)


# -- boundary and co-boundary

def test_boundary_examples(ab):
    assert Boundary(W(ab, 1, 2))(C(ab, {"ab": 1})) == C(ab, {"b": 1, "a": -2})
    assert Boundary(chi(ab, "a"))(C(ab, {"ab": 1})) == C(ab, {"b": 1})
    assert Boundary(W(ab, 1, 1))(C(ab, {"aa": 1})).is_zero()


def test_boundary_of_a_vertex_is_the_empty_path(ab):
    assert Boundary(W(ab, 1, 2))(C(ab, {"b": 1})) == Chain(ab, {(): 2})


def test_coboundary_examples(abc):
    assert Coboundary(chi(abc, "c"))(C(abc, {"a": 1})) == C(abc, {"ca": 1, "ac": -1})
    f = W(abc, 1, 2, 3)
    assert Coboundary(f)(C(abc, {"a": 1})) == C(abc, {"ba": 2, "ab": -2, "ca": 3, "ac": -3})
    assert Coboundary(chi(abc, "a"))(C(abc, {"a": 1})).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_boundary_squares_to_zero(data):
    vs = data.draw(vertex_sets)
    f = data.draw(weightings(vs))
    x = data.draw(chains(vs, data.draw(st.integers(0, 3))))
    assert Boundary(f)(Boundary(f)(x)).is_zero()
    assert Coboundary(f)(Coboundary(f)(x)).is_zero()


# -- degeneracies

def test_degeneracy_examples(ab):
    assert degeneracy(ab, 0)(C(ab, {"ab": 1})) == C(ab, {"aab": 1})
    assert degeneracy(ab, 1)(C(ab, {"ab": 1})) == C(ab, {"abb": 1})
    assert degeneracy(ab, 0)(C(ab, {"a": 1})) == C(ab, {"aa": 1})
    with pytest.raises(IndexRangeError):
        degeneracy(ab, 1)(C(ab, {"a": 1}))


# -- operator algebra

def test_composition_examples(ab):
    assert compose(face_partial(ab, "a", 0), coface(ab, "a", 0))(C(ab, {"b": 1})) == C(ab, {"b": 1})
    assert compose(coface(ab, "a", 0), face_partial(ab, "a", 0))(C(ab, {"ab": 1})) == C(ab, {"ab": 1})
    s0 = degeneracy(ab, 0)
    assert (s0 @ s0)(C(ab, {"a": 1})) == C(ab, {"aaa": 1})


def test_anticommutator_examples(abc):
    f = W(abc, 1, 2, 3)
    assert anticommutator(Boundary(f), Boundary(f))(C(abc, {"abc": 1, "ca": 2})).is_zero()
    x = C(abc, {"c": 1})
    assert anticommutator(Coboundary(chi(abc, "a")), Coboundary(chi(abc, "b")))(x).is_zero()
    s0 = degeneracy(abc, 0)
    assert anticommutator(s0, s0)(C(abc, {"a": 1})) == C(abc, {"aaa": 2})


def test_linear_combinations(ab):
    f = W(ab, 1, 2)
    x = C(ab, {"ab": 1})
    assert (Boundary(f) - Boundary(f))(x).is_zero()
    assert (3 * Boundary(f))(x) == Boundary(f)(x) * 3
    assert (identity(ab, 2) + identity(ab))(x) == x * 3


def test_compose_rejects_mixed_vertex_sets(ab, abc):
    with pytest.raises((DomainError, VertexMismatchError)):
        compose(Boundary(W(ab, 1, 1)), Boundary(W(abc, 1, 1, 1)))


# -- matrices

def test_face_partial_matrix(ab):
    m = materialize(face_partial(ab, "a", 0), 1)
    assert m.shape == (2, 4)
    assert m.sorted_entries() == [(0, 0, 1), (1, 1, 1)]
    assert m.nnz == 2


def test_characteristic_boundary_matrix_has_two_nonzeros(ab):
    # aa cancels; ab and ba each keep one term.
    m = materialize(Boundary(chi(ab, "a")), 1)
    assert m.shape == (2, 4)
    assert m.sorted_entries() == [(1, 1, 1), (1, 2, -1)]


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_zero_weighting_gives_empty_matrix(abc, n):
    assert materialize(Boundary(W(abc, 0, 0, 0)), n).nnz == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_coboundary_matrix_is_transposed_boundary(ab, n):
    f = W(ab, 1, 2)
    assert materialize(Coboundary(f), n - 1) == materialize(Boundary(f), n).transpose()


def test_matrix_product_is_composition(abc):
    f, g = W(abc, 1, -1, 2), W(abc, "1/2", 0, 3)
    lhs = materialize(compose(Boundary(f), Coboundary(g)), 2)
    assert lhs == materialize(Boundary(f), 3) @ materialize(Coboundary(g), 2)


@pytest.mark.parametrize("workers", [2, 3])
def test_workers_do_not_change_matrices(abc, workers):
    op = Coboundary(W(abc, 1, 2, 3))
    assert materialize(op, 2, workers=workers) == materialize(op, 2)


def test_matrix_apply_matches_direct(abc):
    f = W(abc, 1, 2, 3)
    x = C(abc, {"abc": 2, "cab": "-1/3"})
    assert materialize(Boundary(f), 2).apply(x) == Boundary(f)(x)


def test_identity_matrix(ab):
    assert materialize(identity(ab), 1) == OperatorMatrix.identity(ab, 1)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_oracle_agrees_with_direct_evaluation(data):
    vs = data.draw(vertex_sets)
    f, g = data.draw(weightings(vs)), data.draw(weightings(vs))
    n = data.draw(st.integers(1, 3))
    i = data.draw(st.integers(0, n))
    ops = [
        Boundary(f),
        Coboundary(g),
        compose(Boundary(f), Coboundary(g)),
        anticommutator(Boundary(f), Boundary(g)),
        compose(WeightedFace(f, i), WeightedCoface(g, i)),
    ]
    for op in ops:
        assert oracle_matrix(op, n) == materialize(op, n)


def test_weighted_face_on_vertices_of_singleton():
    a = V("a")
    assert WeightedFace(W(a, 5), 0)(C(a, {"a": 1})) == Chain(a, {(): 5})
