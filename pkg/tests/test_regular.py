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
    Induced,
    RegularBoundary,
    RegularCoboundary,
    RegularCoface,
    RegularFace,
    WeightedCoface,
    WeightedFace,
    anticommutator,
    characteristic,
    compose,
    is_regular,
    materialize,
    oracle_matrix,
    project_regular,
    reduced_diff,
    reduced_partial,
    regular_basis,
    regular_dim,
)
from pathcalc.regular import (
    ExcludedInnerDiagonal,
    anticommutator_diff_closed,
    anticommutator_partial_closed,
    anticommutator_weighted_closed,
    induced,
)


def regular_chains(vs, degree):
    return chains(vs, degree).map(project_regular)


# -- regular paths

@pytest.mark.parametrize("path, expected", [("aba", True), ("aab", False), ("a", True), ("abcc", False), ("cabc", True)])
def test_is_regular(abc, path, expected):
    assert is_regular(abc.path(path)) is expected


def test_empty_path_is_regular():
    assert is_regular(())


def test_project_regular_examples(abc):
    assert project_regular(C(abc, {"aab": 1})).is_zero()
    assert project_regular(C(abc, {"abc": 1})) == C(abc, {"abc": 1})
    assert project_regular(C(abc, {"aba": 2, "abb": -3, "aa": 1})) == C(abc, {"aba": 2})


@pytest.mark.parametrize("k, n, dim", [(3, 0, 3), (3, 2, 12), (1, 1, 0), (2, 3, 2), (4, 4, 324)])
def test_regular_dim(k, n, dim):
    assert regular_dim(k, n) == dim


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_regular_basis_counts_and_order(k, n):
    vs = V(",".join("abcd"[:k]))
    basis = regular_basis(vs, n)
    assert len(basis) == regular_dim(vs, n) == k * (k - 1) ** n
    assert list(basis) == sorted(basis) and all(is_regular(p) for p in basis)


# -- regular face and co-face maps

def test_regular_face_examples(abc):
    f = W(abc, 1, 2, 3)
    assert RegularFace(f, 1)(C(abc, {"aba": 1})).is_zero()
    assert RegularFace(f, 0)(C(abc, {"aba": 1})) == C(abc, {"ba": 1})
    assert RegularFace(f, 1)(C(abc, {"abc": 1})) == C(abc, {"ac": -2})


def test_regular_coface_examples(abc):
    f = W(abc, 1, 2, 3)
    ab = C(abc, {"ab": 1})
    assert RegularCoface(f, 0)(ab) == C(abc, {"bab": 2, "cab": 3})
    assert RegularCoface(f, 1)(ab) == C(abc, {"acb": -3})
    assert RegularCoface(f, 2)(ab) == C(abc, {"aba": 1, "abc": 3})


def test_reduced_operators(abc):
    assert reduced_partial(abc, "a")(C(abc, {"aba": 1})) == C(abc, {"ba": 1, "ab": 1})
    assert reduced_diff(abc, "a")(C(abc, {"b": 1})) == C(abc, {"ab": 1, "ba": -1})
    assert reduced_diff(abc, "a")(C(abc, {"a": 1})).is_zero()
    assert reduced_partial(abc, "a")(C(abc, {"ab": 1})) == C(abc, {"b": 1})


def test_irregular_input_is_refused(abc):
    f = W(abc, 1, 2, 3)
    for op in (RegularFace(f, 0), RegularCoface(f, 0), RegularBoundary(f), RegularCoboundary(f)):
        with pytest.raises(DomainError):
            op(C(abc, {"aab": 1}))


def test_induced_needs_a_full_space_operator(abc):
    with pytest.raises(DomainError):
        Induced(RegularBoundary(W(abc, 1, 1, 1)))


# -- factorization through the full space

@settings(max_examples=50, deadline=None)
@given(st.data())
def test_regular_maps_factor_through_the_full_space(data):
    vs = data.draw(vertex_sets)
    f = data.draw(weightings(vs))
    n = data.draw(st.integers(0, 3))
    x = data.draw(regular_chains(vs, n))
    i = data.draw(st.integers(0, n))
    j = data.draw(st.integers(0, n + 1))
    assert RegularFace(f, i)(x) == project_regular(WeightedFace(f, i)(x))
    assert RegularCoface(f, j)(x) == project_regular(WeightedCoface(f, j)(x))
    assert RegularBoundary(f)(x) == project_regular(Boundary(f)(x))
    assert RegularCoboundary(f)(x) == project_regular(Coboundary(f)(x))


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_regular_matrices_agree_with_induced(abc, n):
    f = W(abc, 2, "-1/2", 3)
    assert materialize(RegularCoboundary(f), n) == materialize(induced(Coboundary(f)), n)
    assert materialize(RegularBoundary(f), n + 1) == oracle_matrix(RegularBoundary(f), n + 1)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_regular_boundary_squares_to_zero(data):
    vs = data.draw(vertex_sets)
    f = data.draw(weightings(vs))
    x = data.draw(regular_chains(vs, data.draw(st.integers(0, 3))))
    assert RegularBoundary(f)(RegularBoundary(f)(x)).is_zero()
    assert RegularCoboundary(f)(RegularCoboundary(f)(x)).is_zero()


# -- middle case of the regular face/co-face identity

def test_middle_case_picks_up_the_outside_vertex(abc):
    f = W(abc, 1, 2, 3)
    op = compose(RegularFace(f, 1), RegularCoface(f, 1))
    assert op(C(abc, {"ab": 1})) == C(abc, {"ab": 9})
    assert ExcludedInnerDiagonal(f, f, 1)(C(abc, {"ab": 1})) == C(abc, {"ab": 9})


def test_middle_case_vanishes_without_an_outside_vertex(ab):
    f = W(ab, 1, 2)
    op = compose(RegularFace(f, 1), RegularCoface(f, 1))
    assert op(C(ab, {"ab": 1})).is_zero()


# -- anticommutators of the reduced operators

def test_partial_closed_form_on_the_diagonal(abc):
    x = C(abc, {"abc": 1, "bab": 2})
    assert anticommutator_partial_closed(abc, "a", "a")(x).is_zero()
    assert anticommutator(reduced_partial(abc, "a"), reduced_partial(abc, "a"))(x).is_zero()


def test_partial_anticommutator_on_an_edge(abc):
    x = C(abc, {"ab": 1})
    direct = anticommutator(reduced_partial(abc, "a"), reduced_partial(abc, "b"))(x)
    assert direct.is_zero()
    assert anticommutator_partial_closed(abc, "a", "b", corrected=True)(x) == direct


def test_diff_closed_form(abc):
    assert anticommutator_diff_closed(abc, "a", "a")(C(abc, {"b": 1, "cb": 1})).is_zero()
    x = C(abc, {"c": 1})
    direct = anticommutator(reduced_diff(abc, "a"), reduced_diff(abc, "b"))(x)
    assert direct.is_zero()
    assert anticommutator_diff_closed(abc, "a", "b")(x) == direct


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_diff_closed_form_matches_composition(abc, n):
    for v in abc.labels:
        for u in abc.labels:
            direct = anticommutator(reduced_diff(abc, v), reduced_diff(abc, u))
            assert materialize(anticommutator_diff_closed(abc, v, u), n) == materialize(direct, n)


@pytest.mark.parametrize("n", [2, 3])
def test_corrected_partial_closed_form_matches_composition(abc, n):
    for v in abc.labels:
        for u in abc.labels:
            direct = anticommutator(reduced_partial(abc, v), reduced_partial(abc, u))
            closed = anticommutator_partial_closed(abc, v, u, corrected=True)
            assert materialize(closed, n) == materialize(direct, n)


def test_weighted_closed_form_with_characteristic_weightings(abc):
    a, b = characteristic(abc, "a"), characteristic(abc, "b")
    weighted = anticommutator_weighted_closed(a, b, "partial", corrected=True)
    pairwise = anticommutator_partial_closed(abc, "a", "b", corrected=True)
    for n in (1, 2, 3):
        assert materialize(weighted, n) == materialize(pairwise, n)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_weighted_diff_closed_form_matches_composition(data):
    vs = data.draw(vertex_sets)
    f, g = data.draw(weightings(vs)), data.draw(weightings(vs))
    n = data.draw(st.integers(0, 2))
    direct = anticommutator(RegularCoboundary(f), RegularCoboundary(g))
    assert materialize(anticommutator_weighted_closed(f, g, "diff"), n) == materialize(direct, n)


def test_weighted_closed_form_validates_its_arguments(ab, abc):
    with pytest.raises(DomainError):
        anticommutator_weighted_closed(W(ab, 1, 1), W(ab, 1, 1), "sideways")
    with pytest.raises(DomainError):
        anticommutator_weighted_closed(W(ab, 1, 1), W(abc, 1, 1, 1), "diff")


def test_regular_degree_minus_one(ab):
    assert RegularBoundary(W(ab, 1, 2))(C(ab, {"b": 1})) == Chain(ab, {(): 2})
