"""Hypothesis strategies for exact-arithmetic objects."""

from fractions import Fraction

from hypothesis import strategies as st

from cobwebkit.distance_core import DistanceSpace
from cobwebkit.finite_topology import default_labels
from cobwebkit.graph_metric import Interior, Vertex


def rationals(lo=0, hi=1, max_den=24, *, open_lo=True, open_hi=True):
    lo, hi = Fraction(lo), Fraction(hi)

    def build(pair):
        den, u = pair
        k_lo = int(lo * den) + 1 if open_lo else -(-lo.numerator * den // lo.denominator)
        k_hi = -(-hi.numerator * den // hi.denominator) - 1 if open_hi else int(hi * den)
        if k_lo > k_hi:
            return None
        return Fraction(k_lo + u % (k_hi - k_lo + 1), den)

    return st.tuples(st.integers(1, max_den), st.integers(0, 10_000)).map(build).filter(lambda q: q is not None)


@st.composite
def distance_spaces(draw, min_n=1, max_n=6, *, symmetric=False, separating=False, max_value=Fraction(1)):
    n = draw(st.integers(min_n, max_n))
    pts = default_labels(n)
    values = st.one_of(st.just(Fraction(0)), rationals(0, max_value, open_hi=False)) if not separating else rationals(0, max_value, open_hi=False)
    dist = {}
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            if i == j:
                continue
            if symmetric and j < i:
                dist[(x, y)] = dist[(y, x)]
            else:
                dist[(x, y)] = draw(values)
    return DistanceSpace(pts, dist)


@st.composite
def metric_spaces(draw, min_n=1, max_n=6):
    space = draw(distance_spaces(min_n, max_n, symmetric=True, separating=True))
    pts, w = space.points, dict(space.dist)
    for k in pts:
        for x in pts:
            for y in pts:
                if w[(x, k)] + w[(k, y)] < w[(x, y)]:
                    w[(x, y)] = w[(x, k)] + w[(k, y)]
    return DistanceSpace(pts, w)


@st.composite
def gamma_points(draw, vertices):
    vs = list(vertices)
    if len(vs) < 2 or draw(st.booleans()) and draw(st.booleans()):
        return Vertex(draw(st.sampled_from(vs)))
    x = draw(st.sampled_from(vs))
    y = draw(st.sampled_from([v for v in vs if v != x]))
    return Interior(x, y, draw(rationals(0, 1)))
