"""Seeded random instances.  Every generator takes a ``random.Random`` so runs are reproducible."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Hashable, Sequence

from cobwebkit.distance_core import DistanceSpace
from cobwebkit.finite_topology import FiniteTopology, default_labels, topology_from_preorder
from cobwebkit.gallery import NeighborhoodSystem, OmilSpace
from cobwebkit.graph_metric import GammaPoint, Interior, Vertex
from cobwebkit.tower import LevelPoint, Thread, Tower, TowerError

MAX_DEN = 20


def random_rational(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int = MAX_DEN, *, open_lo: bool = True, open_hi: bool = False) -> Fraction:
    """A rational in the interval with denominator at most ``max_den`` (midpoint if none is found)."""
    lo, hi = Fraction(lo), Fraction(hi)
    for _ in range(32):
        den = rng.randint(1, max_den)
        k_lo = math.floor(lo * den) + 1 if open_lo else math.ceil(lo * den)
        k_hi = math.ceil(hi * den) - 1 if open_hi else math.floor(hi * den)
        if k_lo <= k_hi:
            return Fraction(rng.randint(k_lo, k_hi), den)
    return (lo + hi) / 2


def random_distance_space(rng: random.Random, n: int, *, zero_prob: float = 0.1, symmetric: bool = False, max_value: Fraction = Fraction(1)) -> DistanceSpace:
    """Arbitrary distance space: possibly asymmetric, possibly zero off the diagonal."""
    pts = default_labels(n)
    dist = {}
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            if i == j:
                continue
            if symmetric and j < i:
                dist[(x, y)] = dist[(y, x)]
                continue
            if rng.random() < zero_prob:
                dist[(x, y)] = Fraction(0)
            else:
                dist[(x, y)] = random_rational(rng, Fraction(0), max_value)
    return DistanceSpace(pts, dist, {"kind": "distance"})


def random_separating_space(rng: random.Random, n: int, **kw) -> DistanceSpace:
    return random_distance_space(rng, n, zero_prob=0.0, **kw)


def random_metric(rng: random.Random, n: int, max_value: Fraction = Fraction(1)) -> DistanceSpace:
    """Shortest-path closure of random positive symmetric weights."""
    pts = default_labels(n)
    w = {}
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            if i < j:
                w[(x, y)] = w[(y, x)] = random_rational(rng, Fraction(0), max_value)
            elif i == j:
                w[(x, y)] = Fraction(0)
    for k in pts:
        for x in pts:
            for y in pts:
                if w[(x, k)] + w[(k, y)] < w[(x, y)]:
                    w[(x, y)] = w[(x, k)] + w[(k, y)]
    return DistanceSpace(pts, w, {"kind": "metric"})


def random_topology(rng: random.Random, n: int, density: float = 0.3) -> FiniteTopology:
    """Alexandrov topology of a random preorder (every finite topology arises this way)."""
    pts = default_labels(n)
    below = {x: [y for y in pts if y != x and rng.random() < density] for x in pts}
    return topology_from_preorder(pts, below)


def random_neighborhood_system(rng: random.Random, n: int, levels: int) -> NeighborhoodSystem:
    pts = default_labels(n)
    sets = {}
    for x in pts:
        current = {x} | {y for y in pts if rng.random() < 0.7}
        seq = []
        for _ in range(levels):
            current = {x} | {y for y in current if y == x or rng.random() < 0.75}
            seq.append(frozenset(current))
        sets[x] = seq
    return NeighborhoodSystem(pts, sets)


def random_omil(rng: random.Random, n: int) -> OmilSpace:
    base = random_metric(rng, n)
    E = frozenset(x for x in base.points if rng.random() < 0.5)
    return OmilSpace(base, E)


def random_gamma_point(rng: random.Random, vertices: Sequence[Hashable], k: int | None = None, vertex_prob: float = 0.2) -> GammaPoint:
    if len(vertices) < 2 or rng.random() < vertex_prob:
        return Vertex(rng.choice(list(vertices)))
    x, y = rng.sample(list(vertices), 2)
    if k is not None:
        return Interior(x, y, Fraction(rng.randint(1, k - 1), k))
    return Interior(x, y, random_rational(rng, Fraction(0), Fraction(1), 24, open_hi=True))


def _random_preimage(tower: Tower, rng: random.Random, p: LevelPoint, pool: list[LevelPoint], vertex_prob: float) -> LevelPoint:
    """A random level-(n+1) point compressing onto the level-n point p."""
    others = [w for w in pool if w != p]
    if not others or rng.random() < vertex_prob:
        return tower.vertex(p)
    w = rng.choice(others)
    cut = tower.cut(p, w)
    t = random_rational(rng, Fraction(0), min(cut, Fraction(23, 24)), 24)
    return tower.interior(p, w, t)


def random_thread(tower: Tower, rng: random.Random, length: int, pools: dict[int, list[LevelPoint]] | None = None, vertex_prob: float = 0.4) -> Thread:
    """Random compatible prefix of the given length; ``pools`` collects points per level for reuse."""
    if length > tower.max_depth:
        raise TowerError("thread length exceeds the depth cap")
    if pools is None:
        pools = {}
    base_pts = [tower.base_point(x) for x in tower.base.points]
    pools.setdefault(0, list(base_pts))
    x0 = rng.choice(base_pts)
    prefix = []
    current = x0
    for n in range(1, length + 1):
        pool = pools.setdefault(n - 1, [])
        nxt = _random_preimage(tower, rng, current, pool, vertex_prob)
        pools.setdefault(n, [])
        if nxt not in pools[n]:
            pools[n].append(nxt)
        # keep embedded vertices around so deeper edges can reach them
        if current not in pool:
            pool.append(current)
        prefix.append(nxt)
        current = nxt
    return Thread(tuple(prefix))


def random_thread_sample(tower: Tower, rng: random.Random, size: int, max_length: int) -> list[Thread]:
    """Threads sharing pools so that projections overlap and branch."""
    pools: dict[int, list[LevelPoint]] = {}
    out = []
    for _ in range(size):
        out.append(random_thread(tower, rng, rng.randint(1, max_length), pools))
    return out
