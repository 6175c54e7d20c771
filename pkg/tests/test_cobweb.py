from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cobwebkit.cobweb import Arc, ArcUnion, CobwebError, CobwebSpace, OutOfContract, is_star
from cobwebkit.distance_core import DistanceSpace, ball
from cobwebkit.graph_metric import Interior, Vertex, gamma_distance
from cobwebkit.suites import fiber_isometry_predicted
from strategies import distance_spaces, metric_spaces

RADII = [F(i, 20) for i in range(1, 11)]


def base(table, points=None):
    pts = points or tuple(sorted({p for pair in table for p in pair}))
    return DistanceSpace(pts, {(x, y): F(table.get((x, y), 1)) for x in pts for y in pts if x != y})


TWO = CobwebSpace(base({("a", "b"): F(3, 10), ("b", "a"): F(3, 10)}))


def test_contains_examples():
    assert TWO.contains(Interior("a", "b", F(7, 10)))
    assert not TWO.contains(Interior("a", "b", F(7, 10) + F(1, 100)))
    assert TWO.contains(Vertex("a")) and TWO.contains(Vertex("b"))
    far = CobwebSpace(base({("x", "y"): 1, ("y", "x"): 1}))
    assert far.contains(Interior("x", "y", F(1, 2)))
    assert not far.contains(Interior("x", "y", F(51, 100)))


def test_zero_distance_keeps_the_open_edge():
    cw = CobwebSpace(base({("a", "b"): 1, ("b", "a"): 0}))
    assert cw.contains(Interior("a", "b", F(99, 100)))
    F_a = cw.fiber("a")
    assert Vertex("b") not in F_a and Interior("a", "b", F(99, 100)) in F_a


def test_compress_examples():
    assert TWO.compress(Vertex("a")) == "a"
    assert TWO.compress(Interior("a", "b", F(1, 2))) == "a"
    assert TWO.compress(Interior("b", "a", F(1, 2))) == "b"
    with pytest.raises(CobwebError):
        TWO.compress(Interior("a", "b", F(4, 5)))


def _arc(x, y, lo, hi, lo_open=True, hi_open=True):
    return Arc((x, y), F(lo), F(hi), lo_open, hi_open)


def test_cob_ball_examples():
    B = TWO.cob_ball(Vertex("a"), F(2, 5))
    assert B == ArcUnion.make(["a"], [_arc("a", "b", 0, F(2, 5)), _arc("b", "a", F(3, 5), F(7, 10), True, False)])
    assert TWO.cob_ball(Vertex("a"), F(1, 5)) == ArcUnion.make(["a"], [_arc("a", "b", 0, F(1, 5))])
    assert TWO.cob_ball(Interior("a", "b", F(1, 2)), F(1, 4)) == ArcUnion.make([], [_arc("a", "b", F(1, 4), F(7, 10), True, False)])


def test_cob_ball_refuses_large_radii():
    with pytest.raises(OutOfContract):
        TWO.cob_ball(Vertex("a"), F(3, 5))
    with pytest.raises(OutOfContract):
        TWO.cob_ball(Interior("a", "b", F(1, 5)), F(1, 4))


def test_ball_image_examples():
    assert TWO.ball_image("a", F(2, 5)) == {"a", "b"}
    assert TWO.ball_image("a", F(1, 5)) == {"a"}
    half = CobwebSpace(base({("a", "b"): F(1, 2), ("b", "a"): F(1, 2)}))
    assert half.ball_image("a", F(1, 2)) == {"a"}


def test_fiber_examples():
    assert TWO.fiber("a") == ArcUnion.make(["a"], [_arc("a", "b", 0, F(7, 10), True, False)])
    one = CobwebSpace(DistanceSpace(("a",), {}))
    assert one.fiber("a") == ArcUnion.make(["a"], [])
    far = CobwebSpace(base({("a", "b"): 2, ("b", "a"): 2, ("a", "c"): 1, ("c", "a"): 1, ("b", "c"): 1, ("c", "b"): 1}))
    assert all(a.hi == F(1, 2) for a in far.fiber("a").arcs)


def test_fiber_hedgehog_examples():
    tri = CobwebSpace(base({("x", "y"): F(1, 4), ("y", "x"): F(1, 4), ("x", "z"): F(1, 3), ("z", "x"): F(1, 3), ("y", "z"): F(1, 2), ("z", "y"): F(1, 2)}))
    assert all(tri.fiber_hedgehog_check(x) for x in "xyz")
    assert all(TWO.fiber_hedgehog_check(x) for x in "ab")
    with pytest.raises(CobwebError):
        CobwebSpace(base({("a", "b"): 0})).fiber_hedgehog_check("a")


def test_fiber_shortcut_through_far_ends():
    # long spikes: going out to u, hopping to w and back in beats the route through x
    cw = CobwebSpace(base({("u", "x"): F(1, 10), ("w", "x"): F(1, 10)}, ("u", "w", "x")))
    p, q = Interior("x", "u", F(5, 8)), Interior("x", "w", F(9, 10))
    assert gamma_distance(p, q) == F(59, 40) < F(5, 8) + F(9, 10)
    assert not cw.fiber_hedgehog_check("x")
    assert not fiber_isometry_predicted(cw, "x")


def test_local_constancy_examples():
    cw = CobwebSpace(base({("a", "b"): 1, ("b", "a"): F(1, 10)}))
    assert cw.local_constancy_radius(Interior("a", "b", F(1, 2))) == F(1, 2)
    assert cw.local_constancy_radius(Interior("a", "b", F(1, 10))) == F(1, 10)
    assert cw.local_constancy_radius(Interior("a", "b", F(9, 10))) == F(1, 10)
    with pytest.raises(CobwebError):
        cw.local_constancy_radius(Vertex("a"))


def test_quotient_distance():
    assert TWO.quotient_distance("a", "b") == F(3, 10)
    assert TWO.quotient_distance("a", "a") == 0
    with pytest.raises(CobwebError):
        CobwebSpace(base({("a", "b"): F(1, 3), ("b", "a"): F(1, 2)})).quotient_distance("a", "b")


def test_arc_union_json_roundtrip():
    B = TWO.cob_ball(Vertex("a"), F(2, 5))
    assert ArcUnion.from_json(B.to_json()) == B
    assert B.to_json()["arcs"][0] == {"edge": ["a", "b"], "lo": "0", "hi": "2/5", "lo_open": True, "hi_open": True}


@given(distance_spaces(max_n=8))
def test_ball_image_identity(s):
    cw = CobwebSpace(s)
    for x in s.points:
        assert cw.compress(Vertex(x)) == x
        for r in RADII:
            assert cw.ball_image(x, r) == ball(s, x, r)
            assert cw.hq_identity_image(x, r) == ball(s, x, r)


@given(distance_spaces(max_n=3), st.sampled_from(RADII))
def test_cob_ball_matches_distance_sampling(s, r):
    cw = CobwebSpace(s)
    grid = cw.grid_points(20)
    centers = [Vertex(x) for x in s.points] + [p for p in grid if isinstance(p, Interior) and r <= min(p.t, 1 - p.t)][:6]
    for c in centers:
        B = cw.cob_ball(c, r)
        for q in grid:
            assert (q in B) == (gamma_distance(c, q) < r)
        for q in B.sample_points(30):
            assert cw.contains(q)


@given(distance_spaces(max_n=6))
def test_fibers_are_stars(s):
    cw = CobwebSpace(s)
    for x in s.points:
        F_x = cw.fiber(x)
        assert is_star(F_x, x)
        for p in F_x.sample_points(16):
            assert cw.contains(p) and cw.compress(p) == x


@settings(max_examples=30)
@given(distance_spaces(max_n=4))
def test_local_constancy(s):
    cw = CobwebSpace(s)
    grid = cw.grid_points(8)
    for p in grid:
        if isinstance(p, Interior):
            delta = cw.local_constancy_radius(p)
            assert all(cw.compress(q) == p.x for q in grid if gamma_distance(p, q) < delta)


@given(distance_spaces(min_n=2, max_n=6, separating=True))
def test_fiber_isometry_criterion(s):
    cw = CobwebSpace(s)
    for x in s.points:
        assert cw.fiber_hedgehog_check(x, F(1, 8)) == fiber_isometry_predicted(cw, x)


@given(metric_spaces(max_n=5))
def test_fiber_distance_is_base_distance(s):
    cw = CobwebSpace(s)
    for a in s.points:
        for b in s.points:
            assert cw.quotient_distance(a, b) == s.d(a, b) == cw.quotient_distance(b, a)
