import random
from fractions import Fraction as F

from hypothesis import given, strategies as st

from cobwebkit import generators as g
from cobwebkit.distance_core import check_axioms
from cobwebkit.graph_metric import Interior


@given(st.randoms(use_true_random=False), st.fractions(0, 2), st.fractions(0, 2))
def test_random_rational_in_range(rng, a, b):
    lo, hi = min(a, b), max(a, b)
    if lo == hi:
        return
    q = g.random_rational(rng, lo, hi)
    assert lo < q <= hi


@given(st.randoms(use_true_random=False), st.integers(1, 7))
def test_generator_contracts(rng, n):
    assert check_axioms(g.random_metric(rng, n)).is_metric
    assert check_axioms(g.random_separating_space(rng, n)).separating
    assert all(v >= 0 for v in g.random_distance_space(rng, n).dist.values())
    sys = g.random_neighborhood_system(rng, n, 3)
    sys.check()


def test_seeded_generators_repeat():
    a = g.random_distance_space(random.Random(11), 5)
    b = g.random_distance_space(random.Random(11), 5)
    assert a == b


def test_grid_gamma_points():
    rng = random.Random(0)
    for _ in range(100):
        p = g.random_gamma_point(rng, "abc", k=8)
        if isinstance(p, Interior):
            assert (p.t * 8).denominator == 1
