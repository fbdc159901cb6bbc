"""Hypothesis strategies for vertex sets, rationals, chains and weightings."""
from fractions import Fraction

from hypothesis import strategies as st

from pathcalc import Chain, VertexSet, Weighting

rationals = st.builds(
    Fraction,
    st.integers(-9, 9),
    st.integers(-9, 9).filter(bool),
)

vertex_sets = st.integers(1, 3).map(VertexSet.of_size)


def paths(vs, degree):
    return st.lists(st.integers(0, vs.size - 1), min_size=degree + 1, max_size=degree + 1).map(tuple)


def chains(vs, degree, max_terms=4):
    """Homogeneous chains of one degree."""
    return st.dictionaries(paths(vs, degree), rationals, max_size=max_terms).map(lambda d: Chain(vs, d))


def weightings(vs):
    return st.lists(rationals, min_size=vs.size, max_size=vs.size).map(lambda xs: Weighting(vs, xs))
