"""Small constructors shared by the tests."""
from pathcalc import Chain, VertexSet, Weighting


def V(text="a,b,c"):
    return VertexSet.parse(text)


def C(vs, terms):
    """Chain from {"ab": 2, "c": "1/3"}-style terms; single-letter labels."""
    return Chain(vs, terms)


def W(vs, *values):
    return Weighting(vs, list(values))
