"""Iterated cobwebs Cob^n(X, d), threads of the inverse limit, and the limit metric.

A level-n point (n >= 1) is a Γ point whose vertex labels are level-(n-1)
points; vertex equality is structural equality.  The metric on level n is the
Γ metric, and membership at level n is decided with ``min(ρ_{n-1}, 1/2)``.

Threads store a finite prefix ``(x_1, ..., x_N)`` and continue with the
canonical tail ``x_{n+1} = Vertex(x_n)``, which the compression maps fix.
That makes ``ρ_∞ = max_n ρ_n(x_n, u_n) / n`` exactly computable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from cobwebkit.distance_core import HALF, DistanceSpace
from cobwebkit.graph_metric import GammaError, Interior, Vertex, gamma_distance
from cobwebkit.rationals import RationalLike, format_rational, parse_rational

ONE = Fraction(1)
RHO_BOUND = Fraction(2)
DEFAULT_MAX_DEPTH = 6
MAX_COUNT_SAMPLE = 200


class TowerError(ValueError):
    pass


@dataclass(frozen=True)
class LevelPoint:
    level: int
    body: Hashable  # base label at level 0, otherwise a Vertex/Interior over level-1 points

    def __repr__(self) -> str:
        if self.level == 0:
            return f"L0({self.body!r})"
        if isinstance(self.body, Vertex):
            return f"L{self.level}<{self.body.x!r}>"
        b = self.body
        return f"L{self.level}({b.x!r},{b.y!r},{b.t})"


@dataclass(frozen=True)
class Interval:
    lower: Fraction
    upper: Fraction

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def __contains__(self, v: Fraction) -> bool:
        return self.lower <= v <= self.upper

    def within(self, other: "Interval") -> bool:
        return other.lower <= self.lower and self.upper <= other.upper


@dataclass(frozen=True)
class Thread:
    """Inverse-limit element given by a prefix with the canonical constant tail."""

    prefix: tuple

    def __post_init__(self) -> None:
        pre = list(self.prefix)
        if not pre:
            raise TowerError("a thread needs at least x_1")
        # strip redundant tail entries so equal threads compare equal
        while len(pre) > 1 and pre[-1].body == Vertex(pre[-2]):
            pre.pop()
        object.__setattr__(self, "prefix", tuple(pre))

    def __len__(self) -> int:
        return len(self.prefix)

    def coord(self, n: int) -> LevelPoint:
        """x_n for any n >= 1, following the canonical tail past the prefix."""
        if n < 1:
            raise TowerError("thread coordinates start at 1")
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        p = self.prefix[-1]
        for _ in range(n - len(self.prefix)):
            p = LevelPoint(p.level + 1, Vertex(p))
        return p


@dataclass(frozen=True)
class CountReport:
    count: int
    bound: int
    values: tuple


class Tower:
    """The sequence Cob^1, Cob^2, ... over a finite distance space."""

    def __init__(self, base: DistanceSpace, max_depth: int = DEFAULT_MAX_DEPTH):
        self.base = base
        self.max_depth = max_depth

    # -- construction -----------------------------------------------------

    def base_point(self, x: Hashable) -> LevelPoint:
        self.base.require(x)
        return LevelPoint(0, x)

    def _check_depth(self, level: int) -> None:
        if level > self.max_depth:
            raise TowerError(f"level {level} exceeds the configured depth cap {self.max_depth}")

    def vertex(self, p: LevelPoint) -> LevelPoint:
        self._check_depth(p.level + 1)
        return LevelPoint(p.level + 1, Vertex(p))

    def embed(self, p: LevelPoint, level: int) -> LevelPoint:
        if level < p.level:
            raise TowerError("cannot embed a point into a lower level")
        while p.level < level:
            p = self.vertex(p)
        return p

    def cut(self, a: LevelPoint, b: LevelPoint) -> Fraction:
        """Largest kept parameter on the level-(n+1) edge [a, b]."""
        return ONE - min(self.rho(b, a), HALF)

    def interior(self, a: LevelPoint, b: LevelPoint, t: RationalLike) -> LevelPoint:
        if a.level != b.level:
            raise TowerError("edge endpoints must live on the same level")
        self._check_depth(a.level + 1)
        try:
            body = Interior(a, b, parse_rational(t))
        except GammaError as exc:
            raise TowerError(str(exc)) from None
        if body.t > self.cut(a, b):
            raise TowerError(f"parameter {body.t} lies beyond the cut point {self.cut(a, b)} on [{a!r}, {b!r}]")
        return LevelPoint(a.level + 1, body)

    def is_member(self, p: LevelPoint) -> bool:
        if p.level == 0:
            return p.body in self.base
        b = p.body
        if isinstance(b, Vertex):
            return b.x.level == p.level - 1 and self.is_member(b.x)
        if not isinstance(b, Interior):
            return False
        if b.x.level != p.level - 1 or b.y.level != p.level - 1:
            return False
        if not (self.is_member(b.x) and self.is_member(b.y)):
            return False
        return b.t <= self.cut(b.x, b.y)

    # -- maps and metrics ----------------------------------------------------

    def level_compress(self, p: LevelPoint) -> LevelPoint:
        if p.level == 0:
            raise TowerError("level-0 points have nothing below them")
        return p.body.x

    def rho(self, p: LevelPoint, q: LevelPoint) -> Fraction:
        if p.level != q.level:
            raise TowerError(f"level mismatch: {p.level} vs {q.level}")
        if p.level == 0:
            return self.base.d(p.body, q.body)
        v = gamma_distance(p.body, q.body)
        if v > RHO_BOUND:
            raise AssertionError(f"graph metric exceeded 2: {v}")
        return v

    # -- threads -----------------------------------------------------------------

    def lift(self, x: Hashable) -> Thread:
        return Thread((self.vertex(self.base_point(x)),))

    def thread(self, prefix: Sequence[LevelPoint]) -> Thread:
        th = Thread(tuple(prefix))
        if not self.validate_thread(th):
            raise TowerError("prefix violates the compatibility equations")
        return th

    def validate_thread(self, th: Thread) -> bool:
        for n, p in enumerate(th.prefix, start=1):
            if p.level != n or not self.is_member(p):
                return False
        return all(self.level_compress(th.prefix[i + 1]) == th.prefix[i] for i in range(len(th.prefix) - 1))

    def limit_compress(self, th: Thread) -> Hashable:
        return self.level_compress(th.prefix[0]).body

    def rho_infty(self, a: Thread, b: Thread) -> Fraction:
        N = max(len(a), len(b))
        best = Fraction(0)
        for n in range(1, N + 1):
            best = max(best, self.rho(a.coord(n), b.coord(n)) / n)
        if a.coord(N) != b.coord(N):
            # beyond N both coordinates are distinct vertices, at distance exactly 1
            best = max(best, Fraction(1, N + 1))
        return best

    def rho_infty_interval(self, a: Thread, b: Thread, N: int) -> Interval:
        """Bounds on ρ_∞ from the first N coordinates; width at most 2/(N+1)."""
        if N < 1:
            raise TowerError("N must be at least 1")
        lower = Fraction(0)
        for n in range(1, N + 1):
            lower = max(lower, self.rho(a.coord(n), b.coord(n)) / n)
        return Interval(lower, max(lower, RHO_BOUND / (N + 1)))

    def distinct_distance_count(self, sample: Iterable[Thread]) -> CountReport:
        threads = list(dict.fromkeys(sample))
        if len(threads) > MAX_COUNT_SAMPLE:
            raise TowerError(f"sample capped at {MAX_COUNT_SAMPLE} threads")
        if not threads:
            return CountReport(0, 0, ())
        values = {self.rho_infty(a, b) for a in threads for b in threads}
        N = max(len(t) for t in threads)
        bound = sum(len({t.coord(n) for t in threads}) ** 2 for n in range(1, N + 2))
        return CountReport(len(values), bound, tuple(sorted(values)))

    def find_unrealized_radius(self, sample: Iterable[Thread], center: Thread, r: RationalLike) -> Fraction:
        """An ε in (0, r) that no sample point realizes as its distance to ``center``."""
        r = parse_rational(r)
        if r <= 0:
            raise TowerError("radius must be positive")
        realized = sorted({v for v in (self.rho_infty(center, s) for s in sample) if 0 < v < r})
        if not realized:
            return r / 2
        return realized[0] / 2


# -- JSON ------------------------------------------------------------------------


def level_point_to_json(p: LevelPoint) -> dict:
    if p.level == 0:
        return {"lvl": 0, "base": p.body}
    if isinstance(p.body, Vertex):
        return {"lvl": p.level, "vertex": level_point_to_json(p.body.x)}
    b = p.body
    return {
        "lvl": p.level,
        "interior": {"a": level_point_to_json(b.x), "b": level_point_to_json(b.y), "t": format_rational(b.t)},
    }


def level_point_from_json(doc: Mapping) -> LevelPoint:
    try:
        lvl = int(doc["lvl"])
        if lvl == 0:
            return LevelPoint(0, doc["base"])
        if "vertex" in doc:
            return LevelPoint(lvl, Vertex(level_point_from_json(doc["vertex"])))
        inner = doc["interior"]
        return LevelPoint(lvl, Interior(level_point_from_json(inner["a"]), level_point_from_json(inner["b"]), parse_rational(inner["t"])))
    except (KeyError, TypeError, GammaError) as exc:
        raise TowerError(f"bad level point {doc!r}: {exc}") from None


def thread_to_json(th: Thread) -> dict:
    return {"prefix": [level_point_to_json(p) for p in th.prefix]}


def thread_from_json(doc: Mapping) -> Thread:
    return Thread(tuple(level_point_from_json(p) for p in doc["prefix"]))
