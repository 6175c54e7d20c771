"""The cobweb over a finite distance space and its compression map.

The cobweb keeps, on every oriented edge ``[x, y]`` of Γ(X), the initial
sub-arc of parameters ``t <= 1 - d1(y, x)`` where ``d1 = min(d, 1/2)``; all
vertices stay.  Distances are the subspace metric inherited from Γ(X).
Subsets of Γ(X) that arise as balls and fibers are described exactly by
:class:`ArcUnion`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping

from cobwebkit.distance_core import HALF, DistanceSpace, check_axioms, truncate_d1
from cobwebkit.graph_metric import (
    Center,
    GammaPoint,
    Interior,
    Spike,
    Vertex,
    gamma_distance,
    hedgehog_distance,
)
from cobwebkit.rationals import RationalLike, format_rational, parse_rational

ZERO = Fraction(0)
ONE = Fraction(1)


class CobwebError(ValueError):
    pass


class OutOfContract(CobwebError):
    """Radius outside the range where the symbolic ball is proved; use the grid oracle."""


@dataclass(frozen=True)
class Arc:
    """Parameters ``t`` of edge ``[x, y]`` between ``lo`` and ``hi`` (interior points only)."""

    edge: tuple
    lo: Fraction
    hi: Fraction
    lo_open: bool = True
    hi_open: bool = True

    def __contains__(self, t: Fraction) -> bool:
        above = t > self.lo or (t == self.lo and not self.lo_open)
        below = t < self.hi or (t == self.hi and not self.hi_open)
        return above and below

    def is_empty(self) -> bool:
        return self.lo > self.hi or (self.lo == self.hi and (self.lo_open or self.hi_open))

    def to_json(self) -> dict:
        return {
            "edge": list(self.edge),
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "lo_open": self.lo_open,
            "hi_open": self.hi_open,
        }


def _normalize_arc(arc: Arc, vertices: set) -> Arc | None:
    # endpoints t=0 and t=1 are vertices, so they move into the vertex set
    x, y = arc.edge
    lo, hi, lo_open, hi_open = arc.lo, arc.hi, arc.lo_open, arc.hi_open
    if lo < 0 or hi > 1:
        raise CobwebError(f"arc parameters out of [0, 1]: {arc}")
    if lo == 0:
        if not lo_open and hi >= 0:
            vertices.add(x)
        lo_open = True
    if hi == 1:
        if not hi_open and lo <= 1:
            vertices.add(y)
        hi_open = True
    out = Arc(arc.edge, lo, hi, lo_open, hi_open)
    return None if out.is_empty() else out


def _merge(arcs: list[Arc]) -> list[Arc]:
    arcs = sorted(arcs, key=lambda a: (a.lo, a.lo_open))
    merged: list[Arc] = []
    for a in arcs:
        if merged:
            c = merged[-1]
            if a.lo < c.hi or (a.lo == c.hi and not (c.hi_open and a.lo_open)):
                if a.hi > c.hi:
                    hi, hi_open = a.hi, a.hi_open
                elif a.hi == c.hi:
                    hi, hi_open = c.hi, c.hi_open and a.hi_open
                else:
                    hi, hi_open = c.hi, c.hi_open
                merged[-1] = Arc(c.edge, c.lo, hi, c.lo_open, hi_open)
                continue
        merged.append(a)
    return merged


@dataclass(frozen=True)
class ArcUnion:
    """Finite set of vertices plus finitely many disjoint sub-arcs of edges."""

    vertices: frozenset
    arcs: tuple

    @classmethod
    def make(cls, vertices: Iterable[Hashable] = (), arcs: Iterable[Arc] = ()) -> "ArcUnion":
        vs = set(vertices)
        by_edge: dict[tuple, list[Arc]] = {}
        for a in arcs:
            n = _normalize_arc(a, vs)
            if n is not None:
                by_edge.setdefault(n.edge, []).append(n)
        out = []
        for edge in sorted(by_edge, key=repr):
            out.extend(_merge(by_edge[edge]))
        return cls(frozenset(vs), tuple(out))

    def __contains__(self, p: GammaPoint) -> bool:
        if isinstance(p, Vertex):
            return p.x in self.vertices
        return any(a.edge == p.edge and p.t in a for a in self.arcs)

    def union(self, other: "ArcUnion") -> "ArcUnion":
        return ArcUnion.make(self.vertices | other.vertices, self.arcs + other.arcs)

    def without_vertex(self, x: Hashable) -> "ArcUnion":
        return ArcUnion(self.vertices - {x}, self.arcs)

    def sample_points(self, k: int) -> Iterator[GammaPoint]:
        """Vertices, closed arc ends, and every parameter i/k inside an arc."""
        for v in sorted(self.vertices, key=repr):
            yield Vertex(v)
        for a in self.arcs:
            x, y = a.edge
            seen = set()
            cands = [Fraction(i, k) for i in range(1, k)]
            if not a.lo_open:
                cands.append(a.lo)
            if not a.hi_open:
                cands.append(a.hi)
            for t in cands:
                if t in a and t not in seen:
                    seen.add(t)
                    yield Interior(x, y, t)

    def to_json(self) -> dict:
        return {
            "vertices": sorted(self.vertices, key=repr),
            "arcs": [a.to_json() for a in self.arcs],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "ArcUnion":
        arcs = []
        for a in doc.get("arcs", []):
            arcs.append(
                Arc(
                    tuple(a["edge"]),
                    parse_rational(a["lo"]),
                    parse_rational(a["hi"]),
                    bool(a["lo_open"]),
                    bool(a["hi_open"]),
                )
            )
        return cls.make(doc.get("vertices", []), arcs)


class CobwebSpace:
    """Cob(X, d) as a membership-tested subspace of Γ(X)."""

    def __init__(self, base: DistanceSpace):
        self.base = base
        self.derived = truncate_d1(base)

    def d1(self, x: Hashable, y: Hashable) -> Fraction:
        return self.derived.d(x, y)

    def cut(self, x: Hashable, y: Hashable) -> Fraction:
        """Largest kept parameter on edge ``[x, y]``: the cut point sits at ``1 - d1(y, x)``."""
        return ONE - self.d1(y, x)

    def contains(self, p: GammaPoint) -> bool:
        if isinstance(p, Vertex):
            return p.x in self.base
        if p.x not in self.base or p.y not in self.base:
            return False
        return p.t <= self.cut(p.x, p.y)

    def require(self, p: GammaPoint) -> None:
        if not self.contains(p):
            raise CobwebError(f"{p!r} is not a point of the cobweb")

    def compress(self, p: GammaPoint) -> Hashable:
        self.require(p)
        return p.x

    def distance(self, p: GammaPoint, q: GammaPoint) -> Fraction:
        self.require(p)
        self.require(q)
        return gamma_distance(p, q)

    def others(self, x: Hashable) -> list:
        return [u for u in self.base.points if u != x]

    def cob_ball(self, center: GammaPoint, r: RationalLike) -> ArcUnion:
        r = parse_rational(r)
        self.require(center)
        if isinstance(center, Vertex):
            if not 0 < r <= HALF:
                raise OutOfContract(f"vertex balls are supported for 0 < r <= 1/2 (got {r}); use the grid oracle")
            x = center.x
            arcs = []
            for u in self.others(x):
                cut = self.cut(x, u)
                if r <= cut:
                    arcs.append(Arc((x, u), ZERO, r, True, True))
                else:
                    arcs.append(Arc((x, u), ZERO, cut, True, False))
                # (u, x, s) is at distance 1 - s from x; kept while s <= 1 - d1(x, u)
                back = self.cut(u, x)
                if ONE - r < back:
                    arcs.append(Arc((u, x), ONE - r, back, True, False))
            return ArcUnion.make([x], arcs)
        t = center.t
        if not 0 < r <= min(t, ONE - t):
            raise OutOfContract(
                f"interior balls are supported for 0 < r <= min(t, 1 - t) = {min(t, ONE - t)} (got {r}); use the grid oracle"
            )
        cut = self.cut(center.x, center.y)
        if t + r <= cut:
            arc = Arc(center.edge, t - r, t + r, True, True)
        else:
            arc = Arc(center.edge, t - r, cut, True, False)
        return ArcUnion.make([], [arc])

    def image(self, A: ArcUnion) -> frozenset:
        """π applied to a subset of the cobweb."""
        out = set(A.vertices)
        for a in A.arcs:
            x, y = a.edge
            if a.hi > self.cut(x, y):
                raise CobwebError(f"arc {a} leaves the cobweb")
            out.add(x)
        return frozenset(out)

    def ball_image(self, x: Hashable, r: RationalLike) -> frozenset:
        """π(B_ρ(x, r)); equals the base ball B_d(x, r)."""
        return self.image(self.cob_ball(Vertex(x), r))

    def fiber(self, x: Hashable) -> ArcUnion:
        self.base.require(x)
        # a cut at 1 keeps the whole open edge but not the far vertex
        arcs = [Arc((x, u), ZERO, self.cut(x, u), True, self.cut(x, u) == ONE) for u in self.others(x)]
        return ArcUnion.make([x], arcs)

    def hq_identity_image(self, x: Hashable, r: RationalLike) -> frozenset:
        """π(B_ρ(x, r) ∪ (π⁻¹(x) ∖ {x}))."""
        U = self.cob_ball(Vertex(x), r).union(self.fiber(x).without_vertex(x))
        return self.image(U)

    def fiber_grid(self, x: Hashable, step: Fraction) -> list[GammaPoint]:
        pts: list[GammaPoint] = [Vertex(x)]
        for u in self.others(x):
            cut = self.cut(x, u)
            ts = set()
            t = step
            while t <= cut and t < 1:
                ts.add(t)
                t += step
            if cut < 1:
                ts.add(cut)
            pts.extend(Interior(x, u, t) for t in sorted(ts))
        return pts

    def fiber_hedgehog_mismatch(self, x: Hashable, step: RationalLike = Fraction(1, 16)):
        """First pair in the fiber grid whose Γ distance differs from the hedgehog distance, else None."""
        step = parse_rational(step)
        if not check_axioms(self.base).separating:
            raise CobwebError("fiber/hedgehog correspondence needs d > 0 off the diagonal")
        pts = self.fiber_grid(x, step)
        eps = max((self.cut(x, u) for u in self.others(x)), default=ONE)

        def to_h(p):
            return Center() if isinstance(p, Vertex) else Spike(p.y, p.t)

        for i, p in enumerate(pts):
            hp = to_h(p)
            for q in pts[i:]:
                g = gamma_distance(p, q)
                h = hedgehog_distance(hp, to_h(q), eps)
                if g != h:
                    return (p, q, g, h)
        return None

    def fiber_hedgehog_check(self, x: Hashable, step: RationalLike = Fraction(1, 16)) -> bool:
        return self.fiber_hedgehog_mismatch(x, step) is None

    def local_constancy_radius(self, p: GammaPoint) -> Fraction:
        if isinstance(p, Vertex):
            raise CobwebError("π is not locally constant at vertices")
        self.require(p)
        return min(p.t, ONE - p.t)

    def quotient_distance(self, a: Hashable, b: Hashable) -> Fraction:
        """Distance between the fibers over a and b in the quotient by π."""
        if not check_axioms(self.base).symmetric:
            raise CobwebError("the fiber distance is defined for symmetric bases only")
        return self.base.d(a, b)

    def grid_points(self, k: int) -> list[GammaPoint]:
        """Every cobweb point with parameter in (1/k)ℤ, plus each cut point."""
        pts: list[GammaPoint] = [Vertex(x) for x in self.base.points]
        for x in self.base.points:
            for u in self.others(x):
                cut = self.cut(x, u)
                ts = {Fraction(i, k) for i in range(1, k) if Fraction(i, k) <= cut}
                if cut < 1:
                    ts.add(cut)
                pts.extend(Interior(x, u, t) for t in sorted(ts))
        return pts


def is_star(fiber: ArcUnion, x: Hashable) -> bool:
    """Every arc starts (open) at the vertex x."""
    return x in fiber.vertices and all(a.edge[0] == x and a.lo == 0 for a in fiber.arcs)
