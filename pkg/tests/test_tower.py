import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cobwebkit.distance_core import DistanceSpace
from cobwebkit.generators import random_metric, random_separating_space, random_thread_sample
from cobwebkit.graph_metric import Interior, Vertex
from cobwebkit.tower import (
    LevelPoint,
    Thread,
    Tower,
    TowerError,
    level_point_from_json,
    level_point_to_json,
    thread_from_json,
    thread_to_json,
)

BASE = DistanceSpace(("a", "b", "c"), {(x, y): F(1, 3) for x in "abc" for y in "abc" if x != y})
T = Tower(BASE, max_depth=6)
A, B, C = (T.base_point(x) for x in "abc")
A1, B1, C1 = T.vertex(A), T.vertex(B), T.vertex(C)


def test_level_compress_examples():
    assert T.level_compress(A1) == A
    assert T.level_compress(T.interior(A, B, F(1, 2))) == A
    inner = T.interior(A, B, F(1, 2))
    assert T.level_compress(T.vertex(inner)) == inner
    with pytest.raises(TowerError):
        T.level_compress(A)


def test_rho_examples():
    assert T.rho(A1, B1) == 1
    p, q = T.interior(A, B, F(1, 4)), T.interior(A, B, F(1, 2))
    assert T.rho(p, q) == F(1, 4)
    assert T.rho(T.vertex(p), T.vertex(q)) == 1
    assert T.rho(A, B) == F(1, 3)
    with pytest.raises(TowerError):
        T.rho(A1, A)


def test_membership_uses_previous_level():
    # cut on [a, b] at level 1 is 1 - min(d(b, a), 1/2) = 2/3
    assert T.is_member(T.interior(A, B, F(2, 3)))
    with pytest.raises(TowerError):
        T.interior(A, B, F(3, 4))
    # at level 2 distinct vertices are 1 apart, so the cut is 1/2
    assert T.cut(A1, B1) == F(1, 2)
    with pytest.raises(TowerError):
        T.interior(A1, B1, F(3, 5))


def test_depth_cap():
    shallow = Tower(BASE, max_depth=2)
    with pytest.raises(TowerError):
        shallow.embed(shallow.base_point("a"), 3)


def test_validate_thread_examples():
    assert T.validate_thread(T.lift("a"))
    assert T.validate_thread(Thread((T.interior(A, B, F(1, 2)),)))
    bad = Thread((B1, T.interior(A1, B1, F(1, 2))))
    assert not T.validate_thread(bad)
    with pytest.raises(TowerError):
        T.thread(bad.prefix)


def test_lift_examples():
    assert T.limit_compress(T.lift("b")) == "b"
    assert T.lift("a") == T.lift("a") != T.lift("b")
    # canonical tails are stripped, so an explicitly extended lift is the same thread
    assert Thread((A1, T.vertex(A1), T.vertex(T.vertex(A1)))) == T.lift("a")


def _split_at_four():
    x3 = T.embed(A, 3)
    x4 = T.interior(x3, T.embed(B, 3), F(1, 2))
    u4 = T.interior(x3, T.embed(C, 3), F(1, 2))
    pre = (T.embed(A, 1), T.embed(A, 2), x3)
    return T.thread(pre + (x4,)), T.thread(pre + (u4,))


def test_rho_infty_examples():
    assert T.rho_infty(T.lift("a"), T.lift("b")) == 1
    th = Thread((T.interior(A, B, F(1, 2)),))
    assert T.rho_infty(th, th) == 0
    a, b = _split_at_four()
    assert T.rho(a.coord(4), b.coord(4)) == 1
    assert T.rho_infty(a, b) == F(1, 4)
    for N in range(4, 12):
        assert F(1, 4) in T.rho_infty_interval(a, b, N)


def test_interval_examples():
    iv = T.rho_infty_interval(T.lift("a"), T.lift("b"), 1)
    assert (iv.lower, iv.upper) == (1, 1)
    th = T.lift("c")
    iv = T.rho_infty_interval(th, th, 4)
    assert (iv.lower, iv.upper) == (0, F(2, 5))
    a, b = _split_at_four()
    ivs = [T.rho_infty_interval(a, b, N) for N in range(1, 10)]
    assert all(later.within(earlier) for earlier, later in zip(ivs, ivs[1:]))


def test_limit_compress_examples():
    assert T.limit_compress(T.lift("a")) == "a"
    th = Thread((T.interior(B, C, F(1, 3)),))
    assert T.limit_compress(th) == "b" == T.level_compress(th.prefix[0]).body


def test_count_examples():
    lifts = [T.lift(x) for x in "abc"]
    rep = T.distinct_distance_count(lifts)
    assert rep.count == 2 and rep.values == (0, 1)
    assert T.distinct_distance_count([lifts[0]]).count == 1
    sample = random_thread_sample(T, random.Random(5), 20, 5)
    rep = T.distinct_distance_count(sample)
    assert rep.count <= rep.bound


def test_unrealized_radius_examples():
    center = T.lift("a")
    half = Thread((T.interior(A, B, F(1, 2)),))
    assert T.rho_infty(center, half) == F(1, 2)
    assert T.find_unrealized_radius([center, half, T.lift("b")], center, 1) == F(1, 4)
    assert T.find_unrealized_radius([], center, F(1, 3)) == F(1, 6)
    assert T.find_unrealized_radius([T.lift("b")], center, F(1, 20)) == F(1, 40)


def test_json_roundtrip():
    a, _ = _split_at_four()
    assert thread_from_json(thread_to_json(a)) == a
    p = a.coord(4)
    assert level_point_from_json(level_point_to_json(p)) == p
    assert level_point_to_json(A1) == {"lvl": 1, "vertex": {"lvl": 0, "base": "a"}}


towers = st.randoms(use_true_random=False).map(
    lambda rng: (rng, Tower((random_metric if rng.random() < 0.5 else random_separating_space)(rng, rng.randint(2, 4)), max_depth=5))
)


@settings(max_examples=40)
@given(towers)
def test_thread_sample_properties(arg):
    rng, tower = arg
    sample = random_thread_sample(tower, rng, 12, 5)
    assert all(tower.validate_thread(t) for t in sample)
    for a in sample:
        for b in sample:
            exact = tower.rho_infty(a, b)
            assert exact == tower.rho_infty(b, a)
            assert (exact == 0) == (a == b)
            L = max(len(a), len(b))
            prev = None
            for N in range(1, L + 3):
                iv = tower.rho_infty_interval(a, b, N)
                assert exact in iv and iv.width <= F(2, N + 1)
                assert prev is None or iv.within(prev)
                prev = iv
            assert tower.rho_infty_interval(a, b, L + 1).lower == exact
            for c in sample[:4]:
                assert tower.rho_infty(a, c) <= exact + tower.rho_infty(b, c)


@settings(max_examples=40)
@given(towers, st.integers(1, 30))
def test_count_bound_and_unrealized_radius(arg, size):
    rng, tower = arg
    sample = random_thread_sample(tower, rng, size, 5)
    rep = tower.distinct_distance_count(sample)
    assert rep.count <= rep.bound
    center = sample[0]
    r = F(rng.randint(1, 12), 12)
    eps = tower.find_unrealized_radius(sample, center, r)
    dists = {tower.rho_infty(center, s) for s in sample}
    assert 0 < eps < r and eps not in dists
