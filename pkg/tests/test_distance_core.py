from fractions import Fraction as F

import pytest
from hypothesis import given

from cobwebkit.distance_core import (
    DistanceSpace,
    DistanceSpaceError,
    ball,
    check_axioms,
    critical_radii,
    generated_topology,
    interior_in_generated,
    is_well_behaved,
    truncate_d1,
)
from cobwebkit.gallery import nonfu_truncation
from strategies import distance_spaces, metric_spaces


def space(pairs, points=None):
    pts = points or sorted({p for pair in pairs for p in pair})
    dist = {(x, y): F(1) for x in pts for y in pts if x != y}
    dist.update({k: F(v) for k, v in pairs.items()})
    return DistanceSpace(tuple(pts), dist)


def test_ball_examples():
    two = space({("a", "b"): F(1, 3), ("b", "a"): F(1, 3)})
    assert ball(two, "a", F(1, 2)) == {"a", "b"}
    assert ball(two, "a", F(1, 3)) == {"a"}
    three = space({("a", "b"): 0, ("a", "c"): 1})
    assert ball(three, "a", F(1, 10)) == {"a", "b"}


def test_ball_unknown_point():
    with pytest.raises(DistanceSpaceError):
        ball(space({("a", "b"): 1}), "z", 1)


def test_truncate():
    s = truncate_d1(space({("a", "b"): 2, ("b", "a"): F(1, 3)}))
    assert s.d("a", "b") == F(1, 2)
    assert s.d("b", "a") == F(1, 3)
    assert s.d("a", "a") == 0


def test_generated_topology_examples():
    assert len(generated_topology(space({("a", "b"): 1, ("b", "a"): 1})).open_masks) == 4
    T = generated_topology(space({("a", "b"): 0, ("b", "a"): 1}))
    assert T.opens == {frozenset(), frozenset({"b"}), frozenset({"a", "b"})}
    one = DistanceSpace(("a",), {})
    assert generated_topology(one).opens == {frozenset(), frozenset({"a"})}


def test_json_roundtrip_and_validation():
    doc = {"points": ["a", "b"], "dist": {"a,b": "1/3", "b,a": "1/3"}}
    s = DistanceSpace.from_json(doc)
    assert s.d("a", "b") == F(1, 3) and s.d("a", "a") == 0
    assert s.to_json() == doc
    with pytest.raises(DistanceSpaceError):
        DistanceSpace.from_json({"points": ["a", "b"], "dist": {"a,b": "1/3"}})
    with pytest.raises(DistanceSpaceError):
        DistanceSpace(("a", "b"), {("a", "b"): F(-1), ("b", "a"): F(1)})


def test_well_behaved_examples():
    assert is_well_behaved(DistanceSpace(("a",), {}))
    # zero distances that do not compose: b is forced into every open set around a, c is not
    bad = space({("a", "b"): 0, ("b", "c"): 0, ("a", "c"): 1})
    assert not is_well_behaved(bad)


def test_nonfu_truncation_is_discrete():
    # every finite separating space generates the discrete topology, so it is well-behaved
    S = nonfu_truncation(4)
    assert check_axioms(S).separating
    assert all(interior_in_generated(S, {p}) == {p} for p in S.points)
    assert is_well_behaved(S)


def test_check_axioms_examples():
    # Euclidean on 0, 1/2, 3/2 on a line
    xs = {"a": F(0), "b": F(1, 2), "c": F(3, 2)}
    e = DistanceSpace.from_function(tuple(xs), lambda p, q: abs(xs[p] - xs[q]))
    assert check_axioms(e).is_metric
    rep = check_axioms(space({("a", "b"): 0}))
    assert not rep.separating and not rep.is_metric


@given(distance_spaces(max_n=5))
def test_balls_contain_center_and_grow(s):
    radii = critical_radii(s)
    for x in s.points:
        prev = frozenset()
        for r in radii:
            B = ball(s, x, r)
            assert x in B and prev <= B
            prev = B


@given(distance_spaces(max_n=5))
def test_generated_topology_matches_definition(s):
    T = generated_topology(s)
    opens = set(T.open_masks)
    assert 0 in opens and T.full_mask in opens
    for U in opens:
        for V in opens:
            assert U | V in opens and U & V in opens
    # brute force over subsets: open iff each member has a ball inside
    for m in range(1 << len(s.points)):
        members = [p for i, p in enumerate(s.points) if m >> i & 1]
        inside = all(any(ball(s, x, r) <= set(members) for r in critical_radii(s)) for x in members)
        assert inside == (m in opens)


@given(distance_spaces(max_n=5))
def test_interior_shortcut_agrees(s):
    T = generated_topology(s)
    for m in range(1 << len(s.points)):
        A = T.subset(m)
        assert interior_in_generated(s, A) == T.subset(T.interior_mask(m))


@given(metric_spaces(max_n=6))
def test_metrics_are_well_behaved(s):
    assert check_axioms(s).is_metric
    assert is_well_behaved(s)
