"""Finite distance spaces: balls, the generated topology, and axiom predicates.

A distance space only promises ``d(x, x) = 0`` and ``d >= 0``; symmetry,
separation and the triangle inequality are reported by :func:`check_axioms`
rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, Iterable, Mapping, Sequence

from cobwebkit.finite_topology import FiniteTopology, _bits
from cobwebkit.rationals import RationalLike, format_rational, parse_rational

HALF = Fraction(1, 2)


class DistanceSpaceError(ValueError):
    pass


@dataclass(frozen=True)
class DistanceSpace:
    """Finite point set with a dense table of exact non-negative distances."""

    points: tuple
    dist: Mapping[tuple, Fraction]
    meta: Mapping[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        if len(set(pts)) != len(pts):
            raise DistanceSpaceError("duplicate point labels")
        table: dict[tuple, Fraction] = {}
        for x in pts:
            for y in pts:
                if (x, y) in self.dist:
                    v = parse_rational(self.dist[(x, y)])
                elif x == y:
                    v = Fraction(0)
                else:
                    raise DistanceSpaceError(f"missing distance for ({x!r}, {y!r})")
                if v < 0:
                    raise DistanceSpaceError(f"negative distance d({x!r}, {y!r}) = {v}")
                if x == y and v != 0:
                    raise DistanceSpaceError(f"d({x!r}, {x!r}) must be 0")
                table[(x, y)] = v
        extra = set(self.dist) - set(table)
        if extra:
            raise DistanceSpaceError(f"distances given for unknown pairs: {sorted(map(str, extra))[:3]}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "dist", table)

    def __hash__(self) -> int:
        return hash((self.points, frozenset(self.dist.items())))

    @classmethod
    def from_function(cls, points: Sequence[Hashable], d, **meta) -> "DistanceSpace":
        pts = tuple(points)
        return cls(pts, {(x, y): (Fraction(0) if x == y else d(x, y)) for x in pts for y in pts}, dict(meta))

    def d(self, x: Hashable, y: Hashable) -> Fraction:
        try:
            return self.dist[(x, y)]
        except KeyError:
            raise DistanceSpaceError(f"unknown point in ({x!r}, {y!r})") from None

    def __contains__(self, x: object) -> bool:
        return x in self._index

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {p: i for i, p in enumerate(self.points)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def require(self, x: Hashable) -> None:
        if x not in self._index:
            raise DistanceSpaceError(f"unknown point {x!r}")

    def values(self) -> set[Fraction]:
        return set(self.dist.values())

    def subspace(self, points: Iterable[Hashable]) -> "DistanceSpace":
        pts = tuple(points)
        for p in pts:
            self.require(p)
        return DistanceSpace(pts, {(x, y): self.dist[(x, y)] for x in pts for y in pts}, dict(self.meta))

    # -- JSON ----------------------------------------------------------------

    def to_json(self) -> dict:
        for p in self.points:
            if not isinstance(p, str) or "," in p:
                raise DistanceSpaceError(f"label {p!r} is not JSON-encodable (need a string without commas)")
        return {
            "points": list(self.points),
            "dist": {f"{x},{y}": format_rational(self.dist[(x, y)]) for x in self.points for y in self.points if x != y},
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "DistanceSpace":
        try:
            pts = list(doc["points"])
            raw = doc["dist"]
        except (KeyError, TypeError) as exc:
            raise DistanceSpaceError(f"malformed distance-space document: {exc}") from None
        table = {}
        for key, val in raw.items():
            parts = key.split(",")
            if len(parts) != 2:
                raise DistanceSpaceError(f"bad distance key {key!r}")
            table[(parts[0], parts[1])] = parse_rational(val)
        return cls(tuple(pts), table)


@dataclass(frozen=True)
class AxiomReport:
    symmetric: bool
    separating: bool
    triangle: bool

    @property
    def is_metric(self) -> bool:
        return self.symmetric and self.separating and self.triangle

    def as_dict(self) -> dict:
        return {"symmetric": self.symmetric, "separating": self.separating, "triangle": self.triangle, "is_metric": self.is_metric}


def ball(space: DistanceSpace, x: Hashable, r: RationalLike) -> frozenset:
    """Open ball ``{z : d(x, z) < r}``."""
    space.require(x)
    r = parse_rational(r)
    if r <= 0:
        raise DistanceSpaceError("radius must be positive")
    return frozenset(z for z in space.points if space.dist[(x, z)] < r)


def truncate_d1(space: DistanceSpace) -> DistanceSpace:
    """Pointwise ``min(d, 1/2)``."""
    return DistanceSpace(
        space.points,
        {k: min(v, HALF) for k, v in space.dist.items()},
        {**space.meta, "truncated_at": "1/2"},
    )


def _zero_masks(space: DistanceSpace) -> list[int]:
    """For each point x, the mask of ``{z : d(x, z) = 0}`` (its smallest ball)."""
    out = []
    for x in space.points:
        m = 0
        for j, z in enumerate(space.points):
            if space.dist[(x, z)] == 0:
                m |= 1 << j
        out.append(m)
    return out


def _reach_masks(space: DistanceSpace) -> list[int]:
    """Transitive closure of the zero-distance relation; ``reach[i]`` is the least open set containing point i."""
    reach = _zero_masks(space)
    changed = True
    while changed:
        changed = False
        for i, r in enumerate(reach):
            new = r
            for j in _bits(r):
                new |= reach[j]
            if new != r:
                reach[i] = new
                changed = True
    return reach


def generated_topology(space: DistanceSpace) -> FiniteTopology:
    """Topology generated by the distance: E open iff each x ∈ E has a ball inside E.

    In a finite space the smallest ball at x is ``{z : d(x, z) = 0}``, so E is
    open iff it is closed under the zero-distance relation.
    """
    reach = _reach_masks(space)
    opens = {0}
    frontier = [0]
    while frontier:
        U = frontier.pop()
        for r in reach:
            V = U | r
            if V not in opens:
                opens.add(V)
                frontier.append(V)
    return FiniteTopology.from_masks(space.points, opens, validate=False)


def interior_in_generated(space: DistanceSpace, A: Iterable[Hashable]) -> frozenset:
    """Interior of ``A`` in the generated topology, without listing every open set."""
    idx = space._index
    amask = 0
    for p in A:
        amask |= 1 << idx[p]
    reach = _reach_masks(space)
    return frozenset(p for i, p in enumerate(space.points) if reach[i] & ~amask == 0)


def critical_radii(space: DistanceSpace) -> list[Fraction]:
    vals = sorted({v for v in space.dist.values() if v > 0})
    top = (vals[-1] if vals else Fraction(0)) + 1
    return vals + [top]


def is_well_behaved(space: DistanceSpace) -> bool:
    """Every x lies in the interior of each of its balls ``B_d(x, r)``."""
    reach = _reach_masks(space)
    idx = space._index
    for r in critical_radii(space):
        for i, x in enumerate(space.points):
            bmask = 0
            for z in space.points:
                if space.dist[(x, z)] < r:
                    bmask |= 1 << idx[z]
            if reach[i] & ~bmask:
                return False
    return True


def check_axioms(space: DistanceSpace) -> AxiomReport:
    pts, d = space.points, space.dist
    symmetric = all(d[(x, y)] == d[(y, x)] for x in pts for y in pts)
    separating = all(d[(x, y)] > 0 for x in pts for y in pts if x != y)
    triangle = all(d[(x, z)] <= d[(x, y)] + d[(y, z)] for x in pts for y in pts for z in pts)
    return AxiomReport(symmetric, separating, triangle)
