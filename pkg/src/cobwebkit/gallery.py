"""Concrete instances: the locally extremal function, the Omiljanowski space,
neighborhood-system distances, the non-Fréchet-Urysohn example and the Cantor
cube metric.  Everything is exact; infinite bases are symbolic and only
finite sub-bases are ever materialised.
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from cobwebkit.cobweb import CobwebSpace
from cobwebkit.distance_core import DistanceSpace, ball, check_axioms
from cobwebkit.finite_topology import FiniteTopology
from cobwebkit.rationals import RationalLike, format_rational, parse_rational

ONE = Fraction(1)
ZERO = Fraction(0)
MAX_NONFU = 64
MAX_CANTOR = 64


class GalleryError(ValueError):
    pass


# -- locally extremal function ------------------------------------------------


@dataclass(frozen=True, order=True)
class ExtremalPoint:
    t: Fraction
    layer: int

    def __post_init__(self) -> None:
        t = parse_rational(self.t)
        if not 0 < t < 1:
            raise GalleryError(f"t must lie in (0, 1), got {t}")
        if self.layer not in (0, 1):
            raise GalleryError("layer must be 0 or 1")
        object.__setattr__(self, "t", t)
        # Fraction hashing dominates sub-base construction, so hash once
        object.__setattr__(self, "_hash", hash((t, self.layer)))

    def __hash__(self) -> int:
        return self._hash

    def label(self) -> str:
        return f"({format_rational(self.t)};{self.layer})"

    @classmethod
    def parse(cls, text: str) -> "ExtremalPoint":
        """Read ``"(t,layer)"`` or ``"(t;layer)"``."""
        body = text.strip().strip("()")
        sep = ";" if ";" in body else ","
        parts = body.rsplit(sep, 1)
        if len(parts) != 2:
            raise GalleryError(f"cannot read extremal point {text!r}")
        return cls(parse_rational(parts[0]), int(parts[1]))


@dataclass(frozen=True)
class HalfOpenInterval:
    """Rational interval with explicit endpoint flags."""

    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool

    def __contains__(self, s: Fraction) -> bool:
        return (s > self.lo or (self.lo_closed and s == self.lo)) and (s < self.hi or (self.hi_closed and s == self.hi))

    def __str__(self) -> str:
        return f"{'[' if self.lo_closed else '('}{self.lo}, {self.hi}{']' if self.hi_closed else ')'}"


def _shift_case(t: Fraction, eps: Fraction) -> bool:
    return 0 < eps < t and eps < 1 - t


def extremal_d(p: ExtremalPoint, q: ExtremalPoint) -> Fraction:
    """Symmetric distance on (0,1)×{0,1} whose cobweb carries a locally extremal map."""
    if p.t == q.t:
        return ZERO
    if p.layer == q.layer:
        return ONE
    lower, upper = (p, q) if p.layer == 0 else (q, p)
    # lower = (t, 0), upper = (s, 1): only s < t is ever closer than 1
    t, s = lower.t, upper.t
    eps = t - s
    if eps > 0 and (_shift_case(t, eps) or _shift_case(s, eps)):
        return eps
    return ONE


def _check_eps(p: ExtremalPoint, eps: Fraction) -> Fraction:
    eps = parse_rational(eps)
    if not 0 < eps < min(p.t, 1 - p.t):
        raise GalleryError(f"ε must lie in (0, min(t, 1 - t)) = (0, {min(p.t, 1 - p.t)}), got {eps}")
    return eps


def extremal_ball_image(p: ExtremalPoint, eps: RationalLike) -> HalfOpenInterval:
    """Projection of the ε-ball at p: ``(t-ε, t]`` on layer 0, ``[t, t+ε)`` on layer 1."""
    eps = _check_eps(p, eps)
    if p.layer == 0:
        return HalfOpenInterval(p.t - eps, p.t, False, True)
    return HalfOpenInterval(p.t, p.t + eps, True, False)


def extremal_sub_base(ts: Iterable[Fraction]) -> DistanceSpace:
    """Finite subspace of (0,1)×{0,1} on the given parameters, labelled by ExtremalPoint."""
    return _extremal_cobweb(tuple(sorted(set(map(parse_rational, ts))))).base


@lru_cache(maxsize=64)
def _extremal_cobweb(ts: tuple) -> CobwebSpace:
    pts = [ExtremalPoint(t, layer) for t in ts for layer in (0, 1)]
    return CobwebSpace(DistanceSpace.from_function(pts, extremal_d, construction="extremal"))


def extremal_projected_ball(p: ExtremalPoint, eps: RationalLike, grid: Iterable[Fraction]) -> frozenset:
    """t-values of the cobweb ball image at p over the finite sub-base on ``grid ∪ {t}``.

    Goes through the cobweb module: f = projection ∘ compression.
    """
    eps = _check_eps(p, eps)
    cw = _extremal_cobweb(tuple(sorted(set(map(parse_rational, grid)) | {p.t})))
    return frozenset(q.t for q in cw.ball_image(p, eps))


def extremal_check_local_extremum(p: ExtremalPoint, eps: RationalLike, grid: Iterable[Fraction] | None = None) -> str:
    """``"max"`` or ``"min"`` from the projected ball; the grid always gains the witnesses t ± ε/2."""
    eps = _check_eps(p, eps)
    if grid is None:
        grid = [Fraction(i, 40) for i in range(1, 40)]
    vals = extremal_projected_ball(p, eps, [*grid, p.t - eps / 2, p.t + eps / 2])
    below = any(v < p.t for v in vals)
    above = any(v > p.t for v in vals)
    if below and not above:
        return "max"
    if above and not below:
        return "min"
    return "none"


# -- Omiljanowski space ---------------------------------------------------------


@dataclass(frozen=True)
class OmilSpace:
    base: DistanceSpace
    E: frozenset

    def __post_init__(self) -> None:
        object.__setattr__(self, "E", frozenset(self.E))
        if not check_axioms(self.base).is_metric:
            raise GalleryError("the Omiljanowski base must be a metric space")
        for e in self.E:
            self.base.require(e)

    def r(self, p: tuple, q: tuple) -> Fraction:
        return omil_r(self, p, q)

    def doubled(self) -> DistanceSpace:
        """Y = X × {0, 1} with the non-symmetric distance r."""
        pts = [(x, a) for x in self.base.points for a in (0, 1)]
        return DistanceSpace.from_function(pts, self.r, construction="omiljanowski")

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "E": sorted(self.E, key=repr)}

    @classmethod
    def from_json(cls, doc: Mapping) -> "OmilSpace":
        return cls(DistanceSpace.from_json(doc["base"]), frozenset(doc["E"]))


def omil_r(space: OmilSpace, p: tuple, q: tuple) -> Fraction:
    (x, a), (y, b) = p, q
    space.base.require(x)
    space.base.require(y)
    if a not in (0, 1) or b not in (0, 1):
        raise GalleryError("flags must be 0 or 1")
    if x == y:
        return ZERO
    if b == 0 and a == 0 and y in space.E:
        return space.base.d(x, y)
    if b == 0 and a == 1 and y not in space.E:
        return space.base.d(x, y)
    return ONE


def omil_ball_image(space: OmilSpace, x: Hashable, flag: int, eps: RationalLike) -> frozenset:
    """Closed form: ``{x} ∪ (B_d(x,ε) ∩ E)`` for flag 0, ``{x} ∪ (B_d(x,ε) ∖ E)`` for flag 1."""
    eps = parse_rational(eps)
    if not 0 < eps < Fraction(1, 2):
        raise GalleryError("ε must lie in (0, 1/2)")
    B = ball(space.base, x, eps)
    part = B & space.E if flag == 0 else B - space.E
    return frozenset({x}) | part


def omil_ball_image_via_cobweb(space: OmilSpace, x: Hashable, flag: int, eps: RationalLike, cw: CobwebSpace | None = None) -> frozenset:
    """The same set computed as p(π(B_ρ((x, flag), ε))) inside Cob(Y, r)."""
    eps = parse_rational(eps)
    if not 0 < eps < Fraction(1, 2):
        raise GalleryError("ε must lie in (0, 1/2)")
    if cw is None:
        cw = CobwebSpace(space.doubled())
    return frozenset(y for (y, _) in cw.ball_image((x, flag), eps))


# -- neighborhood systems --------------------------------------------------------


@dataclass(frozen=True)
class NeighborhoodSystem:
    """Decreasing sets E_1(x) ⊇ ... ⊇ E_N(x) ∋ x.

    Past level N the system continues either as ``{x}`` (``tail="singleton"``,
    the default) or as E_N(x) forever (``tail="constant"``).
    """

    points: tuple
    sets: Mapping  # x -> tuple of frozensets, index n-1 holds E_n(x)
    tail: str = "singleton"
    validate: bool = field(default=True, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "sets", {x: tuple(frozenset(s) for s in self.sets[x]) for x in self.points})
        if self.tail not in ("singleton", "constant"):
            raise GalleryError("tail must be 'singleton' or 'constant'")
        if self.validate:
            self.check()

    @property
    def levels(self) -> int:
        return len(next(iter(self.sets.values()))) if self.sets else 0

    def E(self, x: Hashable, n: int) -> frozenset:
        if n < 1:
            raise GalleryError("levels start at 1")
        seq = self.sets[x]
        if n <= len(seq):
            return seq[n - 1]
        if self.tail == "constant" and seq:
            return seq[-1]
        return frozenset({x})

    def check(self) -> None:
        pts = set(self.points)
        N = self.levels
        for x in self.points:
            if len(self.sets[x]) != N:
                raise GalleryError("every point needs the same number of levels")
            for n in range(1, N + 1):
                if x not in self.E(x, n):
                    raise GalleryError(f"{x!r} ∉ E_{n}({x!r})")
                if not self.E(x, n) <= pts:
                    raise GalleryError("neighborhood leaves the point set")
                if not self.E(x, n + 1) <= self.E(x, n):
                    raise GalleryError(f"E_{n + 1}({x!r}) ⊄ E_{n}({x!r})")

    @classmethod
    def unchecked(cls, points: Sequence[Hashable], sets: Mapping, tail: str = "singleton") -> "NeighborhoodSystem":
        return cls(tuple(points), sets, tail, validate=False)

    def to_json(self) -> dict:
        return {
            "points": list(self.points),
            "levels": self.levels,
            "tail": self.tail,
            "sets": {str(x): [sorted(map(str, s)) for s in self.sets[x]] for x in self.points},
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "NeighborhoodSystem":
        return cls(
            tuple(doc["points"]),
            {x: [frozenset(s) for s in doc["sets"][x]] for x in doc["points"]},
            doc.get("tail", "singleton"),
        )


def neighborhood_to_distance(sys: NeighborhoodSystem) -> DistanceSpace:
    """d(x, y) = inf{1/n : y ∈ E_n(x)}, read as 1 when y ∉ E_1(x).

    With the singleton tail the infimum is 1/(largest n <= N with y ∈ E_n(x));
    with the constant tail, points of E_N(x) sit at distance 0.
    """
    N = sys.levels

    def d(x, y):
        if sys.tail == "constant" and N and y in sys.E(x, N):
            return ZERO
        best = 0
        for n in range(1, N + 1):
            if y in sys.E(x, n):
                best = n
        return Fraction(1, best) if best else ONE

    return DistanceSpace.from_function(sys.points, d, construction="neighborhood-system", tail=sys.tail)


def sandwich_check(sys: NeighborhoodSystem) -> bool:
    """E_{n+1}(x) ⊆ B_d(x, 1/n) ⊆ E_n(x) for every x and 1 <= n <= N."""
    dspace = neighborhood_to_distance(sys)
    for x in sys.points:
        for n in range(1, sys.levels + 1):
            B = ball(dspace, x, Fraction(1, n))
            if not (sys.E(x, n + 1) <= B <= sys.E(x, n)):
                return False
    return True


def neighborhood_topology(sys: NeighborhoodSystem) -> FiniteTopology:
    """U open iff every x ∈ U has some E_n(x) ⊆ U.

    The sets decrease, so the test only needs the eventual set E_{N+1}(x).
    """
    pts = sys.points
    idx = {p: i for i, p in enumerate(pts)}
    least = []
    for x in pts:
        m = 0
        for p in sys.E(x, sys.levels + 1):
            m |= 1 << idx[p]
        least.append(m)
    opens = [U for U in range(1 << len(pts)) if all(least[i] & ~U == 0 for i in range(len(pts)) if U >> i & 1)]
    return FiniteTopology.from_masks(pts, opens, validate=False)


def system_from_topology(top: FiniteTopology, levels: int = 3) -> NeighborhoodSystem:
    """Constant open system E_n(x) = least open set containing x."""
    sets = {}
    for i, x in enumerate(top.points):
        m = top.full_mask
        for U in top.open_masks:
            if U >> i & 1:
                m &= U
        sets[x] = [top.subset(m)] * levels
    return NeighborhoodSystem(top.points, sets, "constant")


# -- the non-Fréchet-Urysohn example ------------------------------------------------


def _point_label(p: tuple) -> str:
    return f"({format_rational(p[0])};{format_rational(p[1])})"


def _rational_sqrt(q: Fraction) -> Fraction | None:
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def nonfu_truncation(m: int) -> DistanceSpace:
    """{(0,0)} ∪ K_m×K_m ∪ K_m×{0} with K_m = {1/n : n <= m}.

    Euclidean distance where it is rational, the max-norm otherwise; the
    origin is at distance 1 from every point of K_m×K_m.
    """
    if m < 2:
        raise GalleryError("m must be at least 2")
    if m > MAX_NONFU:
        raise GalleryError(f"m is capped at {MAX_NONFU}")
    K = [Fraction(1, n) for n in range(1, m + 1)]
    origin = (ZERO, ZERO)
    coords = [origin] + [(a, b) for a in K for b in K] + [(a, ZERO) for a in K]
    grid = {(a, b) for a in K for b in K}
    substituted = []

    def d(p, q):
        if (p == origin and q in grid) or (q == origin and p in grid):
            return ONE
        dx, dy = abs(p[0] - q[0]), abs(p[1] - q[1])
        root = _rational_sqrt(dx * dx + dy * dy)
        if root is not None:
            return root
        substituted.append((p, q))
        return max(dx, dy)

    labels = [_point_label(p) for p in coords]
    by_label = dict(zip(labels, coords))
    space = DistanceSpace.from_function(labels, lambda a, b: d(by_label[a], by_label[b]), construction="nonfu", m=m)
    space.meta["max_norm_pairs"] = len(substituted)
    space.meta["origin"] = _point_label(origin)
    space.meta["grid"] = sorted(_point_label(p) for p in grid)
    space.meta["axis"] = [_point_label((a, ZERO)) for a in K]
    return space


# -- Cantor cube ---------------------------------------------------------------------


def _bits_of(x) -> tuple:
    if isinstance(x, str):
        if set(x) - {"0", "1"}:
            raise GalleryError(f"not a bit string: {x!r}")
        return tuple(int(c) for c in x)
    return tuple(int(b) for b in x)


def cantor_cube_distance(x, y, N: int | None = None) -> Fraction:
    """max_n |x(n) - y(n)| / n over coordinates 1..N."""
    xb, yb = _bits_of(x), _bits_of(y)
    if len(xb) != len(yb):
        raise GalleryError("bit strings must have equal length")
    if N is not None and N != len(xb):
        raise GalleryError(f"expected strings of length {N}")
    if len(xb) > MAX_CANTOR:
        raise GalleryError(f"length is capped at {MAX_CANTOR}")
    for n, (a, b) in enumerate(zip(xb, yb), start=1):
        if a != b:
            return Fraction(1, n)
    return ZERO
