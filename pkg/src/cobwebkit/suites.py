"""Property suites behind ``cobweb verify`` and the acceptance tests.

Each suite is a function ``(config, rng) -> list[PropertyResult]``.  Property
ids are named after the theorem label they exercise so that a report doubles
as a coverage index.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable

from cobwebkit import distance_core as dc
from cobwebkit import finite_topology as ft
from cobwebkit import gallery, generators
from cobwebkit.cobweb import CobwebSpace, is_star
from cobwebkit.graph_metric import (
    Center,
    Interior,
    Spike,
    Vertex,
    gamma_distance,
    gamma_distance_oracle,
    grid_graph,
    hedgehog_distance,
    oracle_from_source,
    vertex_ball_to_hedgehog,
)
from cobwebkit.tower import Tower

HALF = Fraction(1, 2)

# Every in-scope anchor a full run must touch.
ANCHORS = (
    "construction",
    "hedgehog",
    "cobweb-definition",
    "summary",
    "summary2",
    "sepcomp",
    "abundance",
    "cobomega",
    "econo",
    "eco-p1",
    "complete_economical",
    "weakly",
    "beobachtung",
    "1stcountablewell",
    "nonfu-example",
    "limitprojection",
    "extremal",
    "Omiljanowski",
    "defs",
    "eng121",
    "ZconnectedifXconnected",
    "supermonotone",
    "stillmonotone",
    "herquocompo",
    "cantor-cube",
)


@dataclass
class VerifyConfig:
    seed: int = 7
    max_points: int = 8
    depth: int = 6
    gamma_spaces: int = 200
    gamma_pairs: int = 50
    oracle_pairs: int = 1000
    oracle_k: int = 64
    oracle_max_points: int = 5
    construction_samples: int = 1000
    ball_bases: int = 100
    ball_oracle_bases: int = 10
    fiber_step: Fraction = Fraction(1, 16)
    fiber_bases: int = 30
    fiber_max_points: int = 6
    random_maps_4: int = 10_000
    tower_pairs: int = 500
    tower_metric_samples: int = 10
    tower_metric_size: int = 50
    econ_samples: int = 100
    econ_size: int = 50
    omil_max_points: int = 6
    omil_random_bases: int = 10
    beob_systems: int = 1000
    beob_max_points: int = 8
    beob_levels: int = 6
    cantor_max_n: int = 10

    def caps(self) -> dict:
        return {"max_points": self.max_points, "depth": self.depth}


@dataclass
class PropertyResult:
    id: str
    anchor: str
    cases: int = 0
    failures: int = 0
    counterexample: Any = None

    def check(self, ok: bool, witness: Callable[[], Any] | Any = None) -> bool:
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = witness() if callable(witness) else witness
        return ok

    def to_json(self) -> dict:
        d = asdict(self)
        if d["counterexample"] is not None:
            d["counterexample"] = _jsonable(d["counterexample"])
        return d


def _jsonable(x: Any) -> Any:
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    return repr(x)


def _sizes(rng: random.Random, lo: int, hi: int) -> int:
    return rng.randint(lo, max(lo, hi))


# -- Γ metric ------------------------------------------------------------------------


def suite_gamma_metric(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    sym = PropertyResult("construction-rho-symmetric", "construction")
    ident = PropertyResult("construction-rho-identity", "construction")
    tri = PropertyResult("construction-rho-triangle", "construction")
    for _ in range(cfg.gamma_spaces):
        n = _sizes(rng, 2, min(8, cfg.max_points))
        vs = dc.DistanceSpace.from_function(ft.default_labels(n), lambda a, b: 1).points
        for _ in range(cfg.gamma_pairs):
            p, q, r = (generators.random_gamma_point(rng, vs) for _ in range(3))
            dpq, dqp = gamma_distance(p, q), gamma_distance(q, p)
            sym.check(dpq == dqp, lambda: (p, q, dpq, dqp))
            ident.check((dpq == 0) == (p == q) and gamma_distance(p, p) == 0, lambda: (p, q, dpq))
            dpr, dqr = gamma_distance(p, r), gamma_distance(q, r)
            tri.check(dpr <= dpq + dqr, lambda: (p, q, r, dpr, dpq, dqr))
    return [sym, ident, tri]


def suite_gamma_oracle(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    k = cfg.oracle_k
    close = PropertyResult("construction-rho-oracle-bound", "construction")
    exact = PropertyResult("construction-rho-oracle-exact", "construction")
    groups = max(1, cfg.oracle_pairs // 50)
    done = 0
    for gi in range(groups):
        n = _sizes(rng, 2, min(cfg.oracle_max_points, cfg.max_points))
        vs = ft.default_labels(n)
        G = grid_graph(vs, k)
        per = (cfg.oracle_pairs - done) // (groups - gi)
        sources: dict = {}
        for _ in range(per):
            p = generators.random_gamma_point(rng, vs, k)
            q = generators.random_gamma_point(rng, vs, k)
            if p not in sources:
                sources[p] = oracle_from_source(p, k, G)
            node = ("v", q.x) if isinstance(q, Vertex) else ("e", q.x, q.y, int(q.t * k))
            o = Fraction(sources[p][node], k)
            g = gamma_distance(p, q)
            close.check(abs(g - o) <= Fraction(2, k), lambda: (p, q, g, o))
            # grid endpoints: every geodesic waypoint is a vertex, hence a grid node
            exact.check(g == o, lambda: (p, q, g, o))
        done += per
    return [close, exact]


def suite_gamma_construction(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    iso = PropertyResult("construction-item1-edge-isometry", "construction")
    disj = PropertyResult("construction-item3-disjoint-edges", "construction")
    opened = PropertyResult("construction-item2-open-edge", "construction")
    for _ in range(cfg.construction_samples):
        n = _sizes(rng, 2, min(8, cfg.max_points))
        vs = ft.default_labels(n)
        x, y = rng.sample(vs, 2)
        t = generators.random_rational(rng, Fraction(0), Fraction(1), 30, open_hi=True)
        s = generators.random_rational(rng, Fraction(0), Fraction(1), 30, open_hi=True)
        p, q = Interior(x, y, t), Interior(x, y, s)
        iso.check(gamma_distance(p, q) == abs(t - s), lambda: (p, q))
    for _ in range(cfg.construction_samples):
        n = _sizes(rng, 4, max(4, min(8, cfg.max_points)))
        vs = ft.default_labels(n)
        a, b, c, e = rng.sample(vs, 4)
        p = Interior(a, b, generators.random_rational(rng, Fraction(0), Fraction(1), 30, open_hi=True))
        q = Interior(c, e, generators.random_rational(rng, Fraction(0), Fraction(1), 30, open_hi=True))
        dd = gamma_distance(p, q)
        disj.check(dd > 1, lambda: (p, q, dd))
    # exhaustive grid over Γ on up to 4 vertices
    k = 16
    for n in range(2, 5):
        vs = ft.default_labels(n)
        grid = [Vertex(v) for v in vs] + [Interior(a, b, Fraction(i, k)) for a in vs for b in vs if a != b for i in range(1, k)]
        for a in vs:
            for b in vs:
                if a == b:
                    continue
                mid = Interior(a, b, HALF)
                for q in grid:
                    inside = gamma_distance(mid, q) < HALF
                    on_edge = isinstance(q, Interior) and q.edge == (a, b)
                    opened.check(inside == on_edge, lambda: (mid, q))
    return [iso, disj, opened]


def suite_hedgehog(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    axioms = PropertyResult("hedgehog-metric-axioms", "hedgehog")
    balliso = PropertyResult("construction-vertex-ball-is-hedgehog", "hedgehog")
    for _ in range(cfg.construction_samples):
        eps = generators.random_rational(rng, Fraction(0), Fraction(2), 12)
        spikes = list(range(rng.randint(1, 5)))

        def pt():
            if rng.random() < 0.15:
                return Center()
            return Spike(rng.choice(spikes), generators.random_rational(rng, Fraction(0), eps, 24))

        p, q, r = pt(), pt(), pt()
        dpq = hedgehog_distance(p, q, eps)
        ok = (
            dpq == hedgehog_distance(q, p, eps)
            and (dpq == 0) == (p == q)
            and hedgehog_distance(p, r, eps) <= dpq + hedgehog_distance(q, r, eps)
        )
        axioms.check(ok, lambda: (p, q, r, eps))
    k = 16
    for n in range(2, min(cfg.max_points, 6) + 1):
        vs = ft.default_labels(n)
        x = vs[0]
        ball_pts = [Vertex(x)]
        for u in vs[1:]:
            ball_pts += [Interior(x, u, Fraction(i, k)) for i in range(1, k // 2 + 1)]
            ball_pts += [Interior(u, x, Fraction(i, k)) for i in range(k // 2, k)]
        for i, p in enumerate(ball_pts):
            hp = vertex_ball_to_hedgehog(x, p)
            for q in ball_pts[i:]:
                hq = vertex_ball_to_hedgehog(x, q)
                balliso.check(gamma_distance(p, q) == hedgehog_distance(hp, hq, HALF), lambda: (p, q))
    return [axioms, balliso]


# -- cobweb ----------------------------------------------------------------------------


def _random_base(rng: random.Random, cfg: VerifyConfig, hi: int = 8) -> dc.DistanceSpace:
    n = _sizes(rng, 1, min(hi, cfg.max_points))
    kind = rng.random()
    if kind < 0.4:
        return generators.random_metric(rng, n)
    return generators.random_distance_space(rng, n, zero_prob=0.15)


RADII = tuple(Fraction(i, 20) for i in range(1, 10))


def suite_ball_image(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    contain = PropertyResult("summary-1-2-vertices-fixed", "summary")
    image = PropertyResult("summary-6-ball-image", "summary")
    member = PropertyResult("cobweb-definition-membership", "cobweb-definition")
    for _ in range(cfg.ball_bases):
        base = _random_base(rng, cfg)
        cw = CobwebSpace(base)
        for x in base.points:
            contain.check(cw.contains(Vertex(x)) and cw.compress(Vertex(x)) == x, x)
            for r in RADII:
                lhs, rhs = cw.ball_image(x, r), dc.ball(base, x, r)
                image.check(lhs == rhs, lambda: {"base": base.to_json(), "x": x, "r": r, "image": lhs, "ball": rhs})
    # symbolic balls against brute-force distance sampling over the cobweb grid
    for _ in range(cfg.ball_oracle_bases):
        base = _random_base(rng, cfg, hi=4)
        cw = CobwebSpace(base)
        grid = cw.grid_points(20)
        centers = [Vertex(x) for x in base.points] + [p for p in grid if isinstance(p, Interior)][:: max(1, len(grid) // 8)]
        for c in centers:
            for r in RADII:
                if isinstance(c, Interior) and r > min(c.t, 1 - c.t):
                    continue
                B = cw.cob_ball(c, r)
                for q in grid:
                    member.check((q in B) == (gamma_distance(c, q) < r), lambda: (c, r, q))
                for q in B.sample_points(40):
                    member.check(cw.contains(q), lambda: ("outside cobweb", c, r, q))
    return [contain, image, member]


def suite_hq_identity(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    res = PropertyResult("summary2-hq-identity", "summary2")
    for _ in range(cfg.ball_bases):
        base = _random_base(rng, cfg)
        cw = CobwebSpace(base)
        for x in base.points:
            for r in RADII:
                lhs, rhs = cw.hq_identity_image(x, r), dc.ball(base, x, r)
                res.check(lhs == rhs, lambda: {"x": x, "r": r, "image": lhs, "ball": rhs})
    return [res]


def suite_fiber(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    star = PropertyResult("summary-3-fiber-star", "summary")
    openfib = PropertyResult("summary-4-fiber-minus-vertex-open", "summary")
    for _ in range(cfg.fiber_bases):
        base = _random_base(rng, cfg, hi=6)
        cw = CobwebSpace(base)
        for x in base.points:
            F = cw.fiber(x)
            star.check(is_star(F, x), lambda: F.to_json())
            for p in F.without_vertex(x).sample_points(12):
                delta = cw.local_constancy_radius(p)
                B = cw.cob_ball(p, delta)
                ok = all(q in F and q != Vertex(x) for q in B.sample_points(48))
                openfib.check(ok, lambda: (p, delta))
    return [star, openfib]


def fiber_isometry_predicted(cw: CobwebSpace, x) -> bool:
    """Fiber distances are hedgehog distances iff no two spikes can be shortcut through their far ends."""
    others = cw.others(x)
    return all(cw.cut(x, u) + cw.cut(x, w) <= Fraction(3, 2) for u, w in itertools.combinations(others, 2))


def suite_fiber_hedgehog(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    """Fibers against hedgehogs: the closed-1/2 part is always isometric; the whole fiber exactly when predicted."""
    trunc = PropertyResult("summary-remark-fiber-half-ball-hedgehog", "hedgehog")
    charac = PropertyResult("summary-remark-fiber-isometry-criterion", "hedgehog")
    for _ in range(cfg.fiber_bases):
        n = _sizes(rng, 2, min(cfg.fiber_max_points, cfg.max_points))
        base = generators.random_separating_space(rng, n)
        cw = CobwebSpace(base)
        for x in base.points:
            pts = [p for p in cw.fiber_grid(x, cfg.fiber_step) if isinstance(p, Vertex) or p.t <= HALF]
            for i, p in enumerate(pts):
                hp = Center() if isinstance(p, Vertex) else Spike(p.y, p.t)
                for q in pts[i:]:
                    hq = Center() if isinstance(q, Vertex) else Spike(q.y, q.t)
                    trunc.check(gamma_distance(p, q) == hedgehog_distance(hp, hq, HALF), lambda: (p, q))
            got = cw.fiber_hedgehog_check(x, cfg.fiber_step)
            charac.check(got == fiber_isometry_predicted(cw, x), lambda: {"base": base.to_json(), "x": x, "check": got})
    return [trunc, charac]


def suite_fiber_isometry_literal(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    """Whole-fiber isometry with a hedgehog on arbitrary separating bases (fails in general)."""
    res = PropertyResult("summary-remark-fiber-isometry-literal", "hedgehog")
    for _ in range(cfg.fiber_bases):
        n = _sizes(rng, 2, min(cfg.fiber_max_points, cfg.max_points))
        base = generators.random_separating_space(rng, n)
        cw = CobwebSpace(base)
        for x in base.points:
            bad = cw.fiber_hedgehog_mismatch(x, cfg.fiber_step)
            res.check(bad is None, lambda: {"x": x, "pair": bad, "base": base.to_json()})
    return [res]


def suite_sepcomp(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    const = PropertyResult("sepcomp-local-constancy", "sepcomp")
    discrete = PropertyResult("sepcomp-vertices-unit-apart", "sepcomp")
    for _ in range(cfg.fiber_bases):
        base = _random_base(rng, cfg)
        cw = CobwebSpace(base)
        grid = cw.grid_points(16)
        interior_pts = [p for p in grid if isinstance(p, Interior)]
        sample = rng.sample(interior_pts, min(40, len(interior_pts)))
        for p in sample:
            delta = cw.local_constancy_radius(p)
            for q in grid:
                if gamma_distance(p, q) < delta:
                    const.check(cw.compress(q) == cw.compress(p), lambda: (p, q, delta))
        for a, b in itertools.combinations(base.points, 2):
            discrete.check(gamma_distance(Vertex(a), Vertex(b)) == 1, (a, b))
    return [const, discrete]


def suite_abundance(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    res = PropertyResult("abundance-fiber-distance", "abundance")
    for _ in range(cfg.fiber_bases):
        n = _sizes(rng, 1, cfg.max_points)
        base = generators.random_metric(rng, n)
        cw = CobwebSpace(base)
        for a in base.points:
            for b in base.points:
                D = cw.quotient_distance(a, b)
                res.check(D == base.d(a, b) == cw.quotient_distance(b, a), (a, b))
        # the fiber distance generates the same topology on the fibers as d on X
        fib = dc.DistanceSpace.from_function(base.points, cw.quotient_distance)
        res.check(dc.generated_topology(fib) == dc.generated_topology(base), "topology")
    return [res]


def suite_distance_core(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    balls = PropertyResult("distance-space-balls", "summary")
    topo = PropertyResult("distance-space-generated-topology", "summary2")
    wb = PropertyResult("distance-space-metric-well-behaved", "summary2")
    for _ in range(cfg.ball_bases):
        base = _random_base(rng, cfg, hi=5)
        radii = sorted(set(dc.critical_radii(base)) | set(RADII))
        for x in base.points:
            prev = frozenset()
            for r in radii:
                B = dc.ball(base, x, r)
                balls.check(x in B and prev <= B, (x, r))
                prev = B
        T = dc.generated_topology(base)
        opens = T.open_masks
        ok = 0 in opens and T.full_mask in opens and all((U | V) in opens and (U & V) in opens for U in opens for V in opens)
        brute = {
            m
            for m in range(1 << len(base.points))
            if all(
                any(_mask_of(base, dc.ball(base, x, r)) & ~m == 0 for r in dc.critical_radii(base))
                for i, x in enumerate(base.points)
                if m >> i & 1
            )
        }
        topo.check(ok and brute == set(opens), lambda: base.to_json())
        if dc.check_axioms(base).is_metric:
            wb.check(dc.is_well_behaved(base), lambda: base.to_json())
    return [balls, topo, wb]


def _mask_of(space: dc.DistanceSpace, S) -> int:
    m = 0
    for i, p in enumerate(space.points):
        if p in S:
            m |= 1 << i
    return m


# -- finite topology ----------------------------------------------------------------


@dataclass
class _MapFacts:
    f: ft.SpaceMap
    surjective: bool
    monotone: bool
    quotient: bool = False
    hq: bool = False


def _facts(f: ft.SpaceMap) -> _MapFacts:
    s = f.is_surjective()
    facts = _MapFacts(f, s, ft.is_monotone(f))
    if s:
        facts.quotient = ft.is_quotient(f)
        facts.hq = ft.is_hereditarily_quotient(f)
    return facts


def _compose_monotone(f: ft.SpaceMap, g: ft.SpaceMap) -> bool:
    X = f.domain
    return all(X.is_connected_mask(f.preimage_mask(g.fiber_mask(j))) for j in range(len(g.codomain)))


def _compose(f: ft.SpaceMap, g: ft.SpaceMap) -> ft.SpaceMap:
    img = [g._img[j] for j in f._img]
    return ft.SpaceMap.from_indices(f.domain, g.codomain, img)


def _appendix_checks(facts: list[_MapFacts], results: dict[str, PropertyResult], triples) -> None:
    zc, sm, eng = results["zc"], results["sm"], results["eng"]
    for m in facts:
        f = m.f
        if not m.surjective:
            continue
        if m.monotone and m.quotient and f.codomain.is_connected_mask(f.codomain.full_mask):
            zc.check(f.domain.is_connected_mask(f.domain.full_mask), lambda: f.to_json())
        if m.monotone and m.hq:
            Y = f.codomain
            for E in ft._submasks(Y.full_mask):
                if Y.is_connected_mask(E):
                    sm.check(f.domain.is_connected_mask(f.preimage_mask(E)), lambda: (f.to_json(), sorted(Y.subset(E))))
        if m.hq:
            eng.check(ft.restriction_quotient_all(f), lambda: f.to_json())
    still, hqc = results["still"], results["hqc"]
    for f, g in triples["still"]:
        still.check(_compose_monotone(f, g), lambda: (f.to_json(), g.to_json()))
    for f, g in triples["hqc"]:
        hqc.check(ft.is_hereditarily_quotient(_compose(f, g)), lambda: (f.to_json(), g.to_json()))


def _appendix_results() -> dict[str, PropertyResult]:
    return {
        "zc": PropertyResult("ZconnectedifXconnected-lemma", "ZconnectedifXconnected"),
        "sm": PropertyResult("supermonotone-lemma", "supermonotone"),
        "still": PropertyResult("stillmonotone-lemma", "stillmonotone"),
        "hqc": PropertyResult("herquocompo-lemma", "herquocompo"),
        "eng": PropertyResult("eng121-restriction-quotient", "eng121"),
    }


def appendix_exhaustive(max_n: int = 3) -> dict[str, PropertyResult]:
    """All topologies on at most ``max_n`` points and all maps between them."""
    results = _appendix_results()
    tops = {n: [ft.FiniteTopology.from_masks(ft.default_labels(n), T.open_masks, validate=False) for T in ft.enumerate_topologies(n)] for n in range(1, max_n + 1)}
    all_tops = [T for n in tops for T in tops[n]]
    facts = [_facts(f) for X in all_tops for Y in all_tops for f in ft.maps_between(X, Y)]
    into: dict[int, list[_MapFacts]] = defaultdict(list)
    out_of: dict[int, list[_MapFacts]] = defaultdict(list)
    for m in facts:
        into[id(m.f.codomain)].append(m)
        out_of[id(m.f.domain)].append(m)
    still, hqc = [], []
    for key, fs in into.items():
        gs = out_of[key]
        for m in fs:
            if not m.surjective:
                continue
            for g in gs:
                if m.monotone and m.hq and g.monotone:
                    still.append((m.f, g.f))
                if m.hq and g.surjective and g.hq:
                    hqc.append((m.f, g.f))
    _appendix_checks(facts, results, {"still": still, "hqc": hqc})
    return results


def appendix_random(n_maps: int, rng: random.Random, n: int = 4) -> dict[str, PropertyResult]:
    """Random maps between random topologies on ``n`` points (plus random composites)."""
    results = _appendix_results()
    tops = [ft.FiniteTopology.from_masks(ft.default_labels(n), T.open_masks, validate=False) for T in ft.enumerate_topologies(n)]
    facts = []
    for _ in range(n_maps):
        X, Y = rng.choice(tops), rng.choice(tops)
        m = rng.randint(1, n)
        Ym = ft.FiniteTopology.from_masks(ft.default_labels(m), _restrict_random(rng, n, m), validate=False) if m < n else Y
        img = list(range(len(Ym))) + [rng.randrange(len(Ym)) for _ in range(n - len(Ym))]
        rng.shuffle(img)
        facts.append(_facts(ft.SpaceMap.from_indices(X, Ym, img)))
    still, hqc = [], []
    # composites: follow each sampled map with a random map out of its codomain
    for m in facts:
        Y = m.f.codomain
        Z = rng.choice(tops)
        k = rng.randint(1, len(Y))
        Zk = ft.FiniteTopology.from_masks(ft.default_labels(k), _restrict_random(rng, n, k), validate=False) if k < n else Z
        img = list(range(k)) + [rng.randrange(k) for _ in range(len(Y) - k)]
        rng.shuffle(img)
        g = _facts(ft.SpaceMap.from_indices(Y, Zk, img))
        if m.surjective and m.monotone and m.hq and g.monotone:
            still.append((m.f, g.f))
        if m.surjective and m.hq and g.surjective and g.hq:
            hqc.append((m.f, g.f))
    _appendix_checks(facts, results, {"still": still, "hqc": hqc})
    return results


def _restrict_random(rng: random.Random, n: int, m: int) -> set[int]:
    return set(generators.random_topology(rng, m, density=rng.random()).open_masks)


def find_non_hq_witness(max_n: int = 4) -> ft.SpaceMap | None:
    """Search for a continuous monotone quotient surjection that is not hereditarily quotient."""
    for n in range(1, max_n + 1):
        for m in range(1, n + 1):
            cods = list(ft.enumerate_topologies(m, [f"y{i}" for i in range(m)]))
            for X in ft.enumerate_topologies(n):
                for Y in cods:
                    for f in ft.maps_between(X, Y, surjective_only=True):
                        if ft.is_continuous(f) and ft.is_monotone(f) and ft.is_quotient(f) and not ft.is_hereditarily_quotient(f):
                            return f
    return None


def suite_appendix(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    ex = appendix_exhaustive(3)
    rnd = appendix_random(cfg.random_maps_4, rng, 4)
    out = []
    for key in ex:
        a, b = ex[key], rnd[key]
        merged = PropertyResult(a.id, a.anchor, a.cases + b.cases, a.failures + b.failures, a.counterexample or b.counterexample)
        out.append(merged)
    wit = PropertyResult("defs-non-hq-witness", "defs")
    f = find_non_hq_witness(4)
    wit.check(f is not None, "no continuous monotone quotient non-hereditarily-quotient surjection on <= 4 points")
    if f is not None:
        # the witness must also fail the restriction form of the definition
        wit.check(not ft.restriction_quotient_all(f), lambda: f.to_json())
    out.append(wit)
    return out


# -- tower ------------------------------------------------------------------------------


def _tower(cfg: VerifyConfig, rng: random.Random, lo: int = 2) -> Tower:
    n = _sizes(rng, lo, min(cfg.max_points, 5))
    base = generators.random_metric(rng, n) if rng.random() < 0.5 else generators.random_separating_space(rng, n)
    return Tower(base, max_depth=cfg.depth)


def suite_tower(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    compat = PropertyResult("cobomega-thread-compatibility", "cobomega")
    width = PropertyResult("complete_economical-interval-width", "complete_economical")
    nest = PropertyResult("complete_economical-interval-nesting", "complete_economical")
    agree = PropertyResult("complete_economical-exact-vs-interval", "complete_economical")
    sep = PropertyResult("cobomega-distinct-threads-separated", "cobomega")
    lifts = PropertyResult("limitprojection-lift", "limitprojection")
    metric = PropertyResult("complete_economical-metric-axioms", "complete_economical")
    done = 0
    while done < cfg.tower_pairs:
        T = _tower(cfg, rng)
        sample = generators.random_thread_sample(T, rng, 10, cfg.depth)
        for th in sample:
            compat.check(T.validate_thread(th), th)
        for a, b in zip(sample, sample[1:]):
            done += 1
            exact = T.rho_infty(a, b)
            L = max(len(a), len(b))
            prev = None
            for N in range(1, L + 3):
                iv = T.rho_infty_interval(a, b, N)
                width.check(iv.width <= Fraction(2, N + 1), (a, b, N))
                agree.check(exact in iv, lambda: (a, b, N, exact, iv))
                if prev is not None:
                    nest.check(iv.within(prev), lambda: (a, b, N, iv, prev))
                prev = iv
            agree.check(T.rho_infty_interval(a, b, L + 1).lower == exact, lambda: (a, b, exact))
            sep.check((exact > 0) == (a != b), lambda: (a, b, exact))
        for x in T.base.points:
            lifts.check(T.limit_compress(T.lift(x)) == x, x)
            for y in T.base.points:
                if x != y:
                    lifts.check(T.rho_infty(T.lift(x), T.lift(y)) == 1, (x, y))
        for th in sample:
            lifts.check(T.limit_compress(th) == T.level_compress(th.prefix[0]).body, th)
    for _ in range(cfg.tower_metric_samples):
        T = _tower(cfg, rng)
        sample = generators.random_thread_sample(T, rng, cfg.tower_metric_size, cfg.depth)
        D = {(i, j): T.rho_infty(a, b) for i, a in enumerate(sample) for j, b in enumerate(sample)}
        m = len(sample)
        for i in range(m):
            for j in range(m):
                metric.check(D[i, j] == D[j, i] and (D[i, j] == 0) == (sample[i] == sample[j]), (i, j))
        for _ in range(m * 20):
            i, j, k = rng.randrange(m), rng.randrange(m), rng.randrange(m)
            metric.check(D[i, k] <= D[i, j] + D[j, k], lambda: (sample[i], sample[j], sample[k]))
    return [compat, width, nest, agree, sep, lifts, metric]


def suite_economical(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    count = PropertyResult("econo-distinct-distance-bound", "econo")
    radius = PropertyResult("eco-p1-unrealized-radius", "eco-p1")
    for _ in range(cfg.econ_samples):
        T = _tower(cfg, rng)
        size = rng.randint(1, cfg.econ_size)
        sample = generators.random_thread_sample(T, rng, size, cfg.depth)
        rep = T.distinct_distance_count(sample)
        count.check(rep.count <= rep.bound, lambda: (rep.count, rep.bound))
        center = rng.choice(sample)
        r = generators.random_rational(rng, Fraction(0), Fraction(1), 12)
        eps = T.find_unrealized_radius(sample, center, r)
        ds = [T.rho_infty(center, s) for s in sample]
        inside = {i for i, v in enumerate(ds) if v < eps}
        closed = {i for i, v in enumerate(ds) if v <= eps}
        radius.check(0 < eps < r and eps not in ds and inside == closed, lambda: (r, eps))
    return [count, radius]


# -- gallery ---------------------------------------------------------------------------


def suite_extremal(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    img = PropertyResult("extremal-ball-image", "extremal")
    verdict = PropertyResult("extremal-local-extremum", "extremal")
    grid = [Fraction(i, 40) for i in range(1, 40)]
    for i in range(1, 10):
        t = Fraction(i, 10)
        for j in range(1, 20):
            eps = Fraction(j, 40)
            if not eps < min(t, 1 - t):
                continue
            for layer in (0, 1):
                p = gallery.ExtremalPoint(t, layer)
                closed = gallery.extremal_ball_image(p, eps)
                raw = {s for s in grid if any(gallery.extremal_d(p, gallery.ExtremalPoint(s, l)) < eps for l in (0, 1))} | {t}
                expect = {s for s in grid if s in closed} | {t}
                img.check(raw == expect, lambda: (p, eps, sorted(raw ^ expect)))
                via = gallery.extremal_projected_ball(p, eps, grid)
                img.check(via == expect, lambda: (p, eps, "cobweb", sorted(via ^ expect)))
                v = gallery.extremal_check_local_extremum(p, eps, grid)
                verdict.check(v == ("max" if layer == 0 else "min"), (p, eps, v))
    return [img, verdict]


def suite_omiljanowski(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    res = PropertyResult("Omiljanowski-ball-image", "Omiljanowski")
    eps_grid = [Fraction(i, 20) for i in range(1, 10)]

    def run(space):
        cw = CobwebSpace(space.doubled())
        for x in space.base.points:
            for flag in (0, 1):
                for eps in eps_grid:
                    a = gallery.omil_ball_image(space, x, flag, eps)
                    b = gallery.omil_ball_image_via_cobweb(space, x, flag, eps, cw)
                    res.check(a == b, lambda: {"E": space.E, "x": x, "flag": flag, "eps": eps, "closed": a, "cobweb": b})

    for n in range(1, min(4, cfg.omil_max_points, cfg.max_points) + 1):
        base = generators.random_metric(rng, n)
        for k in range(n + 1):
            for E in itertools.combinations(base.points, k):
                run(gallery.OmilSpace(base, frozenset(E)))
    for _ in range(cfg.omil_random_bases):
        n = _sizes(rng, 5, min(cfg.omil_max_points, cfg.max_points))
        if n < 5:
            break
        run(generators.random_omil(rng, n))
    return [res]


def suite_beobachtung(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    sand = PropertyResult("beobachtung-sandwich", "beobachtung")
    weak = PropertyResult("weakly-distance-generates-topology", "weakly")
    first = PropertyResult("1stcountablewell-open-system-well-behaved", "1stcountablewell")
    for _ in range(cfg.beob_systems):
        n = _sizes(rng, 1, min(cfg.beob_max_points, cfg.max_points))
        sys = generators.random_neighborhood_system(rng, n, rng.randint(1, cfg.beob_levels))
        sand.check(gallery.sandwich_check(sys), lambda: sys.to_json())
    for _ in range(max(1, cfg.beob_systems // 10)):
        n = _sizes(rng, 1, min(6, cfg.max_points))
        base_sys = generators.random_neighborhood_system(rng, n, rng.randint(1, 4))
        sys = gallery.NeighborhoodSystem(base_sys.points, base_sys.sets, "constant")
        d = gallery.neighborhood_to_distance(sys)
        weak.check(dc.generated_topology(d) == gallery.neighborhood_topology(sys), lambda: sys.to_json())
        sand.check(gallery.sandwich_check(sys), lambda: sys.to_json())
        T = generators.random_topology(rng, n, density=rng.random())
        osys = gallery.system_from_topology(T)
        od = gallery.neighborhood_to_distance(osys)
        first.check(dc.is_well_behaved(od) and dc.generated_topology(od) == T, lambda: T.to_json())
    return [sand, weak, first]


def suite_nonfu(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    res = PropertyResult("nonfu-example-distances", "nonfu-example")
    for m in range(2, 7):
        S = gallery.nonfu_truncation(m)
        a = S.meta["origin"]
        grid = S.meta["grid"]
        res.check(all(S.d(a, g) == 1 == S.d(g, a) for g in grid), m)
        res.check(dc.check_axioms(S).symmetric, m)
        Z = {a, *grid}
        res.check(dc.ball(S, a, Fraction(9, 10)) & Z == {a}, m)
        res.check(all(p in dc.ball(S, a, Fraction(9, 10)) for p in S.meta["axis"][1:]), m)
    return [res]


def suite_cantor(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    res = PropertyResult("cantor-cube-distinct-values", "cantor-cube")
    for N in range(1, cfg.cantor_max_n + 1):
        strings = ["".join(bits) for bits in itertools.product("01", repeat=N)]
        vals = {gallery.cantor_cube_distance(x, y, N) for x in strings for y in strings}
        res.check(len(vals) <= N + 1, (N, len(vals)))
    for _ in range(20):
        N = rng.randint(11, 64)
        strings = ["".join(rng.choice("01") for _ in range(N)) for _ in range(60)]
        vals = {gallery.cantor_cube_distance(x, y, N) for x in strings for y in strings}
        res.check(len(vals) <= N + 1, (N, len(vals)))
    return [res]


def suite_corrupted(cfg: VerifyConfig, rng: random.Random) -> list[PropertyResult]:
    """Negative control: the sandwich property run on deliberately broken systems."""
    res = PropertyResult("beobachtung-sandwich-corrupted", "beobachtung")
    for _ in range(50):
        n = _sizes(rng, 2, min(6, cfg.max_points))
        sys = generators.random_neighborhood_system(rng, n, rng.randint(2, 4))
        x = rng.choice(sys.points)
        y = rng.choice([p for p in sys.points if p != x])
        sets = {p: list(sys.sets[p]) for p in sys.points}
        sets[x][0] = sets[x][0] - {y}
        sets[x][1] = sets[x][1] | {y}
        broken = gallery.NeighborhoodSystem.unchecked(sys.points, sets)
        res.check(gallery.sandwich_check(broken), lambda: broken.to_json())
    return [res]


SUITES: dict[str, Callable[[VerifyConfig, random.Random], list[PropertyResult]]] = {
    "gamma-metric": suite_gamma_metric,
    "gamma-oracle": suite_gamma_oracle,
    "gamma-construction": suite_gamma_construction,
    "hedgehog": suite_hedgehog,
    "ball-image": suite_ball_image,
    "hq-identity": suite_hq_identity,
    "fiber": suite_fiber,
    "fiber-hedgehog": suite_fiber_hedgehog,
    "sepcomp": suite_sepcomp,
    "abundance": suite_abundance,
    "distance-core": suite_distance_core,
    "appendix": suite_appendix,
    "tower": suite_tower,
    "economical": suite_economical,
    "extremal": suite_extremal,
    "omiljanowski": suite_omiljanowski,
    "beobachtung": suite_beobachtung,
    "nonfu": suite_nonfu,
    "cantor": suite_cantor,
}

# run by name only; never part of "all"
EXTRA_SUITES = {
    "corrupted": suite_corrupted,
    "fiber-isometry-literal": suite_fiber_isometry_literal,
}


def suite_rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def run_suite(name: str, cfg: VerifyConfig) -> list[PropertyResult]:
    fn = SUITES.get(name) or EXTRA_SUITES.get(name)
    if fn is None:
        raise KeyError(name)
    return fn(cfg, suite_rng(cfg.seed, name))


def build_report(selector: str, cfg: VerifyConfig) -> dict:
    if selector == "all":
        names = list(SUITES)
    elif selector in SUITES or selector in EXTRA_SUITES:
        names = [selector]
    else:
        raise KeyError(selector)
    start = time.perf_counter()
    props: list[PropertyResult] = []
    for name in names:
        props.extend(run_suite(name, cfg))
    props.sort(key=lambda p: p.id)
    covered = sorted({p.anchor for p in props})
    failures = sum(p.failures for p in props)
    return {
        "suite": selector,
        "seed": cfg.seed,
        "caps": cfg.caps(),
        "properties": [p.to_json() for p in props],
        "cases": sum(p.cases for p in props),
        "failures": failures,
        "coverage": {
            "anchors": covered,
            "missing": [a for a in ANCHORS if a not in covered] if selector == "all" else [],
        },
        "runtime": round(time.perf_counter() - start, 3),
    }
