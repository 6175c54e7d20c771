"""The complete oriented graph Γ(X) with its edge-path metric, and hedgehogs.

Points of Γ(X) are symbolic: a :class:`Vertex` or an :class:`Interior` point
``(x, y, t)`` of the oriented edge ``[x, y]`` at parameter ``0 < t < 1``
(``t`` is the distance from ``x``).  ``[x, y]`` and ``[y, x]`` are different
edges sharing only their endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Union

import networkx as nx

from cobwebkit.rationals import format_rational, parse_rational

ONE = Fraction(1)


class GammaError(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    x: Hashable

    def endpoints(self) -> tuple[tuple[Hashable, Fraction], ...]:
        return ((self.x, Fraction(0)),)


@dataclass(frozen=True)
class Interior:
    x: Hashable
    y: Hashable
    t: Fraction

    def __post_init__(self) -> None:
        t = parse_rational(self.t)
        if self.x == self.y:
            raise GammaError("an edge needs two distinct vertices")
        if not 0 < t < 1:
            raise GammaError(f"edge parameter must lie in (0, 1), got {t}")
        object.__setattr__(self, "t", t)

    @property
    def edge(self) -> tuple[Hashable, Hashable]:
        return (self.x, self.y)

    def endpoints(self) -> tuple[tuple[Hashable, Fraction], ...]:
        return ((self.x, self.t), (self.y, ONE - self.t))


GammaPoint = Union[Vertex, Interior]


def labels_of(p: GammaPoint) -> tuple:
    return (p.x,) if isinstance(p, Vertex) else (p.x, p.y)


def aux_r(p: GammaPoint, q: GammaPoint) -> Fraction | None:
    """The auxiliary edge-local distance; ``None`` when p and q share no edge."""
    if isinstance(p, Vertex) and isinstance(q, Vertex):
        return Fraction(0) if p.x == q.x else ONE
    if isinstance(p, Vertex):
        p, q = q, p
    if isinstance(q, Vertex):
        if q.x == p.x:
            return p.t
        if q.x == p.y:
            return ONE - p.t
        return None
    if p.edge == q.edge:
        return abs(p.t - q.t)
    return None


def gamma_distance(p: GammaPoint, q: GammaPoint) -> Fraction:
    """Closed form of the path-infimum metric on Γ(X).

    A path leaves an edge only through an endpoint and any two distinct
    vertices are one edge apart, so the infimum is a minimum over endpoint
    pairs, plus the direct route when both points sit on one edge.
    """
    best = None
    if isinstance(p, Interior) and isinstance(q, Interior) and p.edge == q.edge:
        best = abs(p.t - q.t)
    for a, ca in p.endpoints():
        for b, cb in q.endpoints():
            v = ca + cb + (0 if a == b else ONE)
            if best is None or v < best:
                best = v
    return best


class Gamma:
    """Γ over a fixed finite vertex set; validates labels before measuring."""

    def __init__(self, vertices: Iterable[Hashable]):
        self.vertices = tuple(vertices)
        self._vset = frozenset(self.vertices)
        if len(self._vset) != len(self.vertices):
            raise GammaError("duplicate vertices")

    def check(self, p: GammaPoint) -> None:
        for lab in labels_of(p):
            if lab not in self._vset:
                raise GammaError(f"point {p!r} uses vertex {lab!r} outside this graph")

    def distance(self, p: GammaPoint, q: GammaPoint) -> Fraction:
        self.check(p)
        self.check(q)
        return gamma_distance(p, q)

    def edges(self):
        return [(x, y) for x in self.vertices for y in self.vertices if x != y]


def _oracle_node(p: GammaPoint, k: int):
    if isinstance(p, Vertex):
        return ("v", p.x)
    i = p.t * k
    if i.denominator != 1:
        raise GammaError(f"t = {p.t} is not on the 1/{k} grid")
    return ("e", p.x, p.y, int(i))


def grid_graph(vertices: Iterable[Hashable], k: int) -> nx.Graph:
    """Γ discretised at multiples of 1/k; edge weights in units of 1/k."""
    if k < 2:
        raise GammaError("granularity must be at least 2")
    vs = list(vertices)
    G = nx.Graph()
    for x in vs:
        G.add_node(("v", x))
    for x in vs:
        for y in vs:
            if x == y:
                continue
            chain = [("v", x)] + [("e", x, y, i) for i in range(1, k)] + [("v", y)]
            for u, w in zip(chain, chain[1:]):
                G.add_edge(u, w, weight=1)
    return G


def gamma_distance_oracle(p: GammaPoint, q: GammaPoint, k: int, vertices: Iterable[Hashable] | None = None, graph: nx.Graph | None = None) -> Fraction:
    """Shortest path between grid points of the discretised graph."""
    if graph is None:
        if vertices is None:
            vertices = sorted(set(labels_of(p)) | set(labels_of(q)), key=repr)
        graph = grid_graph(vertices, k)
    src, dst = _oracle_node(p, k), _oracle_node(q, k)
    if src not in graph or dst not in graph:
        raise GammaError("point outside the oracle graph")
    steps = nx.dijkstra_path_length(graph, src, dst, weight="weight")
    return Fraction(steps, k)


def oracle_from_source(p: GammaPoint, k: int, graph: nx.Graph) -> dict:
    """All grid distances from ``p`` (in units of 1/k), for batched checks."""
    return nx.single_source_dijkstra_path_length(graph, _oracle_node(p, k), weight="weight")


# -- hedgehog ----------------------------------------------------------------


@dataclass(frozen=True)
class Center:
    pass


@dataclass(frozen=True)
class Spike:
    spike: Hashable
    t: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", parse_rational(self.t))


HedgehogPoint = Union[Center, Spike]


def _check_hedgehog_point(p: HedgehogPoint, eps: Fraction, spikes) -> None:
    if isinstance(p, Spike):
        if not 0 < p.t <= eps:
            raise GammaError(f"spike coordinate {p.t} outside (0, {eps}]")
        if spikes is not None and p.spike not in spikes:
            raise GammaError(f"unknown spike {p.spike!r}")


def hedgehog_distance(p: HedgehogPoint, q: HedgehogPoint, eps, spikes=None) -> Fraction:
    eps = parse_rational(eps)
    _check_hedgehog_point(p, eps, spikes)
    _check_hedgehog_point(q, eps, spikes)
    t = p.t if isinstance(p, Spike) else Fraction(0)
    s = q.t if isinstance(q, Spike) else Fraction(0)
    if isinstance(p, Spike) and isinstance(q, Spike) and p.spike == q.spike:
        return abs(t - s)
    return t + s


def vertex_ball_to_hedgehog(x: Hashable, p: GammaPoint) -> HedgehogPoint:
    """Correspondence from the closed 1/2-ball at vertex x onto a hedgehog.

    ``(x, u, t) ↦ spike((x, u), t)`` and ``(u, x, s) ↦ spike((u, x), 1 - s)``.
    """
    if isinstance(p, Vertex):
        if p.x != x:
            raise GammaError("only the center vertex lies in the closed 1/2-ball")
        return Center()
    if p.x == x and p.t <= Fraction(1, 2):
        return Spike((p.x, p.y), p.t)
    if p.y == x and ONE - p.t <= Fraction(1, 2):
        return Spike((p.x, p.y), ONE - p.t)
    raise GammaError(f"{p!r} is not in the closed 1/2-ball at {x!r}")


# -- JSON --------------------------------------------------------------------


def point_to_json(p: GammaPoint) -> dict:
    if isinstance(p, Vertex):
        return {"v": p.x}
    return {"e": [p.x, p.y], "t": format_rational(p.t)}


def point_from_json(doc: Mapping) -> GammaPoint:
    if "v" in doc:
        return Vertex(doc["v"])
    try:
        x, y = doc["e"]
        return Interior(x, y, parse_rational(doc["t"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise GammaError(f"bad Γ point {doc!r}: {exc}") from None
