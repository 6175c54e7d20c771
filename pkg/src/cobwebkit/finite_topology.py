"""Finite topological spaces and the quotient-map predicates between them.

Subsets are handled internally as integer bitmasks over the ordered point
tuple; the public surface speaks frozensets of labels.  Every predicate is a
direct quantifier check over the explicit open family, so answers are exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

MAX_ENUMERATION_POINTS = 4


class TopologyError(ValueError):
    pass


class SurjectivityError(ValueError):
    """Raised when a quotient-type predicate is asked about a non-surjection."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _is_union_intersection_closed(masks: set[int]) -> bool:
    ms = list(masks)
    for i, u in enumerate(ms):
        for v in ms[i + 1 :]:
            if (u | v) not in masks or (u & v) not in masks:
                return False
    return True


class FiniteTopology:
    """A finite point set together with its explicit family of open sets."""

    __slots__ = ("points", "_index", "_full", "_masks", "_open_list")

    def __init__(self, points: Sequence[Hashable], opens: Iterable[Iterable[Hashable]], *, validate: bool = True):
        pts = tuple(points)
        if len(set(pts)) != len(pts):
            raise TopologyError("duplicate point labels")
        self.points = pts
        self._index = {p: i for i, p in enumerate(pts)}
        self._full = (1 << len(pts)) - 1
        masks = set()
        for U in opens:
            masks.add(self.mask(U))
        self._set_masks(masks, validate)

    @classmethod
    def from_masks(cls, points: Sequence[Hashable], masks: Iterable[int], *, validate: bool = True) -> "FiniteTopology":
        top = cls.__new__(cls)
        pts = tuple(points)
        top.points = pts
        top._index = {p: i for i, p in enumerate(pts)}
        top._full = (1 << len(pts)) - 1
        top._set_masks(set(masks), validate)
        return top

    def _set_masks(self, masks: set[int], validate: bool) -> None:
        if validate:
            if 0 not in masks or self._full not in masks:
                raise TopologyError("open family must contain the empty set and the whole space")
            if any(m & ~self._full for m in masks):
                raise TopologyError("open set outside the point set")
            if not _is_union_intersection_closed(masks):
                raise TopologyError("open family is not closed under union and intersection")
        self._masks = frozenset(masks)
        self._open_list = tuple(sorted(masks, key=lambda m: (bin(m).count("1"), m)))

    # -- conversions ---------------------------------------------------

    def mask(self, subset: Iterable[Hashable]) -> int:
        m = 0
        for p in subset:
            try:
                m |= 1 << self._index[p]
            except KeyError:
                raise TopologyError(f"unknown point {p!r}") from None
        return m

    def subset(self, mask: int) -> frozenset:
        return frozenset(self.points[i] for i in _bits(mask))

    @property
    def full_mask(self) -> int:
        return self._full

    @property
    def open_masks(self) -> frozenset[int]:
        return self._masks

    @property
    def opens(self) -> frozenset[frozenset]:
        return frozenset(self.subset(m) for m in self._masks)

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteTopology):
            return NotImplemented
        return set(self.points) == set(other.points) and self.opens == other.opens

    def __hash__(self) -> int:
        return hash((frozenset(self.points), self.opens))

    def __repr__(self) -> str:
        fam = sorted((sorted(map(str, U)) for U in self.opens), key=lambda s: (len(s), s))
        return f"FiniteTopology(points={list(self.points)!r}, opens={fam!r})"

    # -- mask-level queries (hot paths for exhaustive search) -----------

    def is_open_mask(self, mask: int) -> bool:
        return mask in self._masks

    def interior_mask(self, mask: int) -> int:
        out = 0
        for U in self._open_list:
            if U & ~mask == 0:
                out |= U
        return out

    def is_connected_mask(self, mask: int) -> bool:
        if mask == 0:
            return True
        rel = {U & mask for U in self._open_list}
        for S in rel:
            if S and S != mask and (mask ^ S) in rel:
                return False
        return True

    # -- label-level API ---------------------------------------------------

    def is_open(self, A: Iterable[Hashable]) -> bool:
        return self.mask(A) in self._masks

    def to_json(self) -> dict:
        fam = sorted((sorted(self.subset(m), key=self._index.__getitem__) for m in self._masks), key=lambda s: (len(s), [self._index[p] for p in s]))
        return {"points": list(self.points), "opens": fam}

    @classmethod
    def from_json(cls, doc: Mapping) -> "FiniteTopology":
        try:
            return cls(doc["points"], doc["opens"])
        except KeyError as exc:
            raise TopologyError(f"missing field {exc}") from None


def discrete(points: Sequence[Hashable]) -> FiniteTopology:
    n = len(points)
    return FiniteTopology.from_masks(points, range(1 << n), validate=False)


def indiscrete(points: Sequence[Hashable]) -> FiniteTopology:
    return FiniteTopology.from_masks(points, {0, (1 << len(points)) - 1}, validate=False)


def sierpinski(open_point: Hashable = "a", closed_point: Hashable = "b") -> FiniteTopology:
    return FiniteTopology([open_point, closed_point], [[], [open_point], [open_point, closed_point]])


def interior(top: FiniteTopology, A: Iterable[Hashable]) -> frozenset:
    return top.subset(top.interior_mask(top.mask(A)))


def is_connected(top: FiniteTopology, A: Iterable[Hashable] | None = None) -> bool:
    """Connectedness of ``A`` (default: the whole space) in its subspace topology."""
    mask = top.full_mask if A is None else top.mask(A)
    return top.is_connected_mask(mask)


@dataclass(frozen=True)
class SpaceMap:
    domain: FiniteTopology
    codomain: FiniteTopology
    assignment: Mapping[Hashable, Hashable]

    def __post_init__(self) -> None:
        img = []
        for p in self.domain.points:
            if p not in self.assignment:
                raise TopologyError(f"map undefined at {p!r}")
            q = self.assignment[p]
            if q not in self.codomain._index:
                raise TopologyError(f"{p!r} maps outside the codomain: {q!r}")
            img.append(self.codomain._index[q])
        object.__setattr__(self, "_img", tuple(img))
        fibers = [0] * len(self.codomain)
        for i, j in enumerate(img):
            fibers[j] |= 1 << i
        object.__setattr__(self, "_fibers", tuple(fibers))

    @classmethod
    def from_indices(cls, domain: FiniteTopology, codomain: FiniteTopology, img: Sequence[int]) -> "SpaceMap":
        return cls(domain, codomain, {p: codomain.points[j] for p, j in zip(domain.points, img)})

    def __call__(self, p: Hashable) -> Hashable:
        return self.assignment[p]

    def preimage_mask(self, mask: int) -> int:
        out = 0
        for j in _bits(mask):
            out |= self._fibers[j]
        return out

    def image_mask(self, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= 1 << self._img[i]
        return out

    def fiber_mask(self, j: int) -> int:
        return self._fibers[j]

    def preimage(self, B: Iterable[Hashable]) -> frozenset:
        return self.domain.subset(self.preimage_mask(self.codomain.mask(B)))

    def image(self, A: Iterable[Hashable]) -> frozenset:
        return self.codomain.subset(self.image_mask(self.domain.mask(A)))

    def is_surjective(self) -> bool:
        return all(self._fibers)

    def compose_after(self, f: "SpaceMap") -> "SpaceMap":
        """Return ``self ∘ f``."""
        if f.codomain != self.domain:
            raise TopologyError("maps are not composable")
        return SpaceMap(f.domain, self.codomain, {p: self.assignment[f.assignment[p]] for p in f.domain.points})

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
            "map": {str(p): self.assignment[p] for p in self.domain.points},
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "SpaceMap":
        return cls(FiniteTopology.from_json(doc["domain"]), FiniteTopology.from_json(doc["codomain"]), dict(doc["map"]))


def _require_surjective(f: SpaceMap) -> None:
    if not f.is_surjective():
        raise SurjectivityError("quotient-type predicates are only defined for surjections")


def is_continuous(f: SpaceMap) -> bool:
    dom = f.domain
    return all(dom.is_open_mask(f.preimage_mask(V)) for V in f.codomain.open_masks)


def is_quotient(f: SpaceMap) -> bool:
    _require_surjective(f)
    dom, cod = f.domain, f.codomain
    for B in _submasks(cod.full_mask):
        if dom.is_open_mask(f.preimage_mask(B)) and not cod.is_open_mask(B):
            return False
    return True


def is_hereditarily_quotient(f: SpaceMap) -> bool:
    """``f⁻¹(y) ⊆ U`` open implies ``y ∈ Int f(U)``, for every point ``y``."""
    _require_surjective(f)
    cod = f.codomain
    for U in f.domain.open_masks:
        # y ranges over codomain points whose whole fiber sits inside U
        covered = 0
        for j, fib in enumerate(f._fibers):
            if fib & ~U == 0:
                covered |= 1 << j
        if covered and covered & ~cod.interior_mask(f.image_mask(U)):
            return False
    return True


def is_monotone(f: SpaceMap) -> bool:
    dom = f.domain
    return all(dom.is_connected_mask(fib) for fib in f._fibers)


def restriction_quotient_all(f: SpaceMap) -> bool:
    """Every restriction ``f⁻¹(Z) → Z`` (subspace topologies) is quotient."""
    _require_surjective(f)
    dom, cod = f.domain, f.codomain
    for Z in _submasks(cod.full_mask):
        if Z == 0:
            continue
        S = f.preimage_mask(Z)
        rel_dom = {U & S for U in dom.open_masks}
        rel_cod = {V & Z for V in cod.open_masks}
        for B in _submasks(Z):
            if f.preimage_mask(B) in rel_dom and B not in rel_cod:
                return False
    return True


def quotient_topology(
    assignment: Mapping[Hashable, Hashable],
    domain: FiniteTopology,
    codomain_points: Sequence[Hashable] | None = None,
) -> FiniteTopology:
    """Finest topology on the codomain making the assignment continuous."""
    if codomain_points is None:
        seen: dict = {}
        for p in domain.points:
            seen.setdefault(assignment[p], None)
        codomain_points = tuple(seen)
    cod_index = {q: j for j, q in enumerate(codomain_points)}
    fibers = [0] * len(codomain_points)
    for i, p in enumerate(domain.points):
        fibers[cod_index[assignment[p]]] |= 1 << i
    opens = []
    for B in _submasks((1 << len(codomain_points)) - 1):
        pre = 0
        for j in _bits(B):
            pre |= fibers[j]
        if domain.is_open_mask(pre):
            opens.append(B)
    return FiniteTopology.from_masks(codomain_points, opens, validate=False)


def default_labels(n: int) -> tuple[str, ...]:
    return tuple("abcdefghijklmnopqrstuvwxyz"[i] if n <= 26 else f"p{i}" for i in range(n))


def enumerate_topologies(n: int, labels: Sequence[Hashable] | None = None) -> Iterator[FiniteTopology]:
    """Yield every topology on ``n`` labelled points (``n ≤ 4``)."""
    if n > MAX_ENUMERATION_POINTS:
        raise ValueError(
            f"exhaustive enumeration is capped at {MAX_ENUMERATION_POINTS} points (got {n}); use random_topology instead"
        )
    if n < 0:
        raise ValueError("n must be non-negative")
    pts = tuple(labels) if labels is not None else default_labels(n)
    if len(pts) != n:
        raise ValueError("label count does not match n")
    full = (1 << n) - 1
    middle = [m for m in range(1, full)]
    for k in range(len(middle) + 1):
        for chosen in itertools.combinations(middle, k):
            fam = {0, full, *chosen}
            if _is_union_intersection_closed(fam):
                yield FiniteTopology.from_masks(pts, fam, validate=False)


def topology_from_preorder(points: Sequence[Hashable], below: Mapping[Hashable, Iterable[Hashable]]) -> FiniteTopology:
    """Alexandrov topology whose opens are the sets closed under ``below``.

    ``below[x]`` lists points that every open set containing ``x`` must
    contain; the relation is closed transitively first.
    """
    pts = tuple(points)
    idx = {p: i for i, p in enumerate(pts)}
    reach = [1 << i for i in range(len(pts))]
    for p, qs in below.items():
        for q in qs:
            reach[idx[p]] |= 1 << idx[q]
    changed = True
    while changed:
        changed = False
        for i in range(len(pts)):
            r = reach[i]
            for j in _bits(r):
                r |= reach[j]
            if r != reach[i]:
                reach[i] = r
                changed = True
    opens = {0}
    frontier = [0]
    while frontier:
        U = frontier.pop()
        for r in reach:
            V = U | r
            if V not in opens:
                opens.add(V)
                frontier.append(V)
    return FiniteTopology.from_masks(pts, opens, validate=False)


def maps_between(X: FiniteTopology, Y: FiniteTopology, *, surjective_only: bool = False) -> Iterator[SpaceMap]:
    for img in itertools.product(range(len(Y)), repeat=len(X)):
        if surjective_only and len(set(img)) != len(Y):
            continue
        yield SpaceMap.from_indices(X, Y, img)
