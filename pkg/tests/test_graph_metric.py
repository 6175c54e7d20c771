from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from cobwebkit.graph_metric import (
    Center,
    Gamma,
    GammaError,
    Interior,
    Spike,
    Vertex,
    aux_r,
    gamma_distance,
    gamma_distance_oracle,
    grid_graph,
    hedgehog_distance,
    point_from_json,
    point_to_json,
    vertex_ball_to_hedgehog,
)
from strategies import gamma_points, rationals

V5 = ("a", "b", "c", "e", "x")


def test_point_validation():
    with pytest.raises(GammaError):
        Interior("a", "a", F(1, 2))
    for t in (F(0), F(1), F(3, 2)):
        with pytest.raises(GammaError):
            Interior("a", "b", t)


def test_aux_r_examples():
    assert aux_r(Vertex("x"), Vertex("y")) == 1
    assert aux_r(Vertex("x"), Vertex("x")) == 0
    assert aux_r(Interior("x", "y", F(1, 4)), Interior("x", "y", F(3, 4))) == F(1, 2)
    assert aux_r(Interior("x", "y", F(1, 4)), Interior("u", "v", F(1, 2))) is None
    assert aux_r(Vertex("y"), Interior("x", "y", F(1, 4))) == F(3, 4)
    # reversed edge is a different carrier
    assert aux_r(Interior("x", "y", F(1, 4)), Interior("y", "x", F(1, 4))) is None


def test_gamma_distance_examples():
    assert gamma_distance(Interior("x", "y", F(1, 4)), Interior("x", "y", F(3, 4))) == F(1, 2)
    assert gamma_distance(Interior("a", "b", F(1, 2)), Interior("c", "e", F(1, 2))) == 2
    assert gamma_distance(Interior("x", "y", F(3, 4)), Interior("y", "z", F(3, 4))) == 1
    assert gamma_distance(Vertex("a"), Vertex("b")) == 1
    # the antiparallel edge is reached through an endpoint
    assert gamma_distance(Interior("x", "y", F(1, 4)), Interior("y", "x", F(1, 4))) == 1


def test_gamma_universe_check():
    G = Gamma(["a", "b"])
    assert G.distance(Vertex("a"), Interior("a", "b", F(1, 3))) == F(1, 3)
    with pytest.raises(GammaError):
        G.distance(Vertex("a"), Vertex("z"))


def test_oracle_examples():
    assert gamma_distance_oracle(Interior("x", "y", F(1, 4)), Interior("x", "y", F(3, 4)), 4) == F(1, 2)
    assert gamma_distance_oracle(Interior("a", "b", F(1, 2)), Interior("c", "e", F(1, 2)), 64) == 2
    assert gamma_distance_oracle(Vertex("a"), Vertex("b"), 8) == 1
    with pytest.raises(GammaError):
        gamma_distance_oracle(Interior("a", "b", F(1, 3)), Vertex("a"), 4)


def test_hedgehog_examples():
    assert hedgehog_distance(Spike(0, F(1, 5)), Spike(0, F(2, 5)), F(1, 2)) == F(1, 5)
    assert hedgehog_distance(Spike(0, F(1, 5)), Spike(1, F(3, 10)), F(1, 2)) == F(1, 2)
    assert hedgehog_distance(Center(), Spike(3, F(1, 7)), F(1, 2)) == F(1, 7)
    with pytest.raises(GammaError):
        hedgehog_distance(Center(), Spike(0, F(3, 5)), F(1, 2))
    with pytest.raises(GammaError):
        hedgehog_distance(Center(), Spike("z", F(1, 5)), F(1, 2), spikes={0, 1})


@given(st.data())
def test_metric_axioms(data):
    n = data.draw(st.integers(1, 8))
    vs = V5[:n] if n <= 5 else V5 + tuple(f"v{i}" for i in range(n - 5))
    p, q, r = (data.draw(gamma_points(vs)) for _ in range(3))
    d = gamma_distance
    assert d(p, q) == d(q, p)
    assert (d(p, q) == 0) == (p == q)
    assert d(p, r) <= d(p, q) + d(q, r)
    assert d(p, q) <= 2


@given(st.data())
def test_closed_form_matches_oracle(data):
    k = data.draw(st.sampled_from([4, 8, 12]))
    vs = V5[: data.draw(st.integers(2, 4))]
    G = grid_graph(vs, k)

    def grid_point():
        if data.draw(st.booleans()):
            return Vertex(data.draw(st.sampled_from(vs)))
        x, y = data.draw(st.permutations(vs))[:2]
        return Interior(x, y, F(data.draw(st.integers(1, k - 1)), k))

    p, q = grid_point(), grid_point()
    assert gamma_distance(p, q) == gamma_distance_oracle(p, q, k, graph=G)


@given(rationals(0, 1), rationals(0, 1))
def test_edge_isometry(t, s):
    assert gamma_distance(Interior("a", "b", t), Interior("a", "b", s)) == abs(t - s)


@given(rationals(0, 1), rationals(0, 1))
def test_disjoint_edges_far_apart(t, s):
    assert gamma_distance(Interior("a", "b", t), Interior("c", "e", s)) > 1


@given(gamma_points(("a", "b", "c", "e")))
def test_midpoint_half_ball_is_the_open_edge(q):
    inside = gamma_distance(Interior("a", "b", F(1, 2)), q) < F(1, 2)
    assert inside == (isinstance(q, Interior) and q.edge == ("a", "b"))


@given(st.data())
def test_vertex_half_ball_is_hedgehog(data):
    vs = ("x", "a", "b", "c")

    def ball_point():
        kind = data.draw(st.sampled_from(["center", "out", "in"]))
        if kind == "center":
            return Vertex("x")
        u = data.draw(st.sampled_from(vs[1:]))
        t = data.draw(rationals(0, F(1, 2), open_hi=False))
        return Interior("x", u, t) if kind == "out" else Interior(u, "x", 1 - t)

    p, q = ball_point(), ball_point()
    assume(gamma_distance(Vertex("x"), p) <= F(1, 2))
    hp, hq = vertex_ball_to_hedgehog("x", p), vertex_ball_to_hedgehog("x", q)
    assert gamma_distance(p, q) == hedgehog_distance(hp, hq, F(1, 2))


@given(gamma_points(("a", "b", "c")))
def test_point_json_roundtrip(p):
    assert point_from_json(point_to_json(p)) == p
