"""``cobweb``: distances, balls, generators and property verification from the shell.

Exit codes: 0 success, 1 property failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Hashable

from cobwebkit import distance_core as dc
from cobwebkit import gallery, generators, suites
from cobwebkit.cobweb import ArcUnion, CobwebError, CobwebSpace
from cobwebkit.finite_topology import TopologyError
from cobwebkit.graph_metric import GammaError, Interior, Vertex, gamma_distance
from cobwebkit.rationals import RationalParseError, format_rational, parse_rational
from cobwebkit.tower import Tower, TowerError, thread_from_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MODES = ("base", "gamma", "cobweb", "tower")
GEN_KINDS = ("distance", "metric", "topology", "neighborhood-system", "omil")
EXTREMAL_GRID = tuple(Fraction(i, 40) for i in range(1, 40))


class UsageError(Exception):
    pass


@dataclass
class LoadedSpace:
    """A finite distance space plus how to read and print its labels."""

    space: dc.DistanceSpace
    name: str
    symbolic_d: Callable[[Any, Any], Fraction] | None = None  # infinite bases evaluate d directly
    parse_label: Callable[[str], Hashable] | None = None

    def label_text(self, p: Hashable) -> str:
        if isinstance(p, gallery.ExtremalPoint):
            return p.label()
        if isinstance(p, tuple):
            return f"{p[0]}@{p[1]}"
        return str(p)

    def label(self, text: str) -> Hashable:
        if self.parse_label is not None:
            return self.parse_label(text)
        for p in self.space.points:
            if self.label_text(p) == text:
                return p
        raise UsageError(f"unknown point {text!r}; known: {', '.join(self.label_text(p) for p in self.space.points)}")


# -- loading -----------------------------------------------------------------------


def _builtin(name: str, args) -> LoadedSpace:
    F = Fraction
    if name == "two-point":
        return LoadedSpace(dc.DistanceSpace(("a", "b"), {("a", "b"): F(3, 10), ("b", "a"): F(3, 10)}), name)
    if name == "three-point":
        d = {("x", "y"): F(1, 4), ("x", "z"): F(1, 3), ("y", "z"): F(1, 2)}
        d.update({(b, a): v for (a, b), v in list(d.items())})
        return LoadedSpace(dc.DistanceSpace(("x", "y", "z"), d), name)
    if name == "nonfu":
        return LoadedSpace(gallery.nonfu_truncation(max(2, min(args.max_points, gallery.MAX_NONFU))), name)
    if name == "extremal":
        return LoadedSpace(gallery.extremal_sub_base(EXTREMAL_GRID), name, gallery.extremal_d, _extremal_label)
    raise UsageError(f"unknown builtin {name!r}; choose from extremal, two-point, three-point, nonfu")


def _extremal_label(text: str) -> gallery.ExtremalPoint:
    try:
        return gallery.ExtremalPoint.parse(text)
    except (gallery.GalleryError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _from_document(doc: dict, name: str) -> LoadedSpace:
    if "E" in doc and "base" in doc:
        return LoadedSpace(gallery.OmilSpace.from_json(doc).doubled(), name)
    if "sets" in doc:
        return LoadedSpace(gallery.neighborhood_to_distance(gallery.NeighborhoodSystem.from_json(doc)), name)
    if "dist" in doc:
        return LoadedSpace(dc.DistanceSpace.from_json(doc), name)
    raise UsageError(f"{name}: not a distance space, neighborhood system or Omiljanowski document")


def load_space(args) -> LoadedSpace:
    if args.space and args.builtin:
        raise UsageError("give either --space or --builtin, not both")
    if args.builtin:
        return _builtin(args.builtin, args)
    if not args.space:
        raise UsageError("a space is required (--space FILE or --builtin NAME)")
    try:
        with open(args.space, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.space}: {exc}") from None
    return _from_document(doc, args.space)


def _with_center(ls: LoadedSpace, extra: list) -> LoadedSpace:
    """Symbolic bases only materialise a grid; make sure the named points are in it."""
    if ls.symbolic_d is None or all(p in ls.space for p in extra):
        return ls
    ts = list(EXTREMAL_GRID) + [p.t for p in extra]
    return LoadedSpace(gallery.extremal_sub_base(ts), ls.name, ls.symbolic_d, ls.parse_label)


def parse_point(ls: LoadedSpace, text: str, mode: str):
    """Base label, or a Γ point written ``x``, ``x:y:t`` or as JSON."""
    if mode == "base":
        return ls.label(text)
    s = text.strip()
    if s.startswith("{"):
        try:
            doc = json.loads(s)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad point JSON {text!r}: {exc}") from None
        if "v" in doc:
            return Vertex(ls.label(str(doc["v"])))
        x, y = doc["e"]
        return Interior(ls.label(str(x)), ls.label(str(y)), parse_rational(doc["t"]))
    parts = s.rsplit(":", 2)
    if len(parts) == 3:
        return Interior(ls.label(parts[0]), ls.label(parts[1]), parse_rational(parts[2]))
    return Vertex(ls.label(s))


def parse_thread(tower: Tower, ls: LoadedSpace, text: str):
    s = text.strip()
    if s.startswith("{"):
        try:
            th = thread_from_json(json.loads(s))
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad thread JSON: {exc}") from None
        if not tower.validate_thread(th):
            raise UsageError("thread prefix violates the compatibility equations")
        return th
    return tower.lift(ls.label(s))


# -- output ------------------------------------------------------------------------


def _emit(args, payload: Any, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _points_json(ls: LoadedSpace, pts) -> list[str]:
    return sorted(ls.label_text(p) for p in pts)


def _arcs_json(ls: LoadedSpace, U: ArcUnion) -> dict:
    return {
        "vertices": _points_json(ls, U.vertices),
        "arcs": [
            {**a.to_json(), "edge": [ls.label_text(a.edge[0]), ls.label_text(a.edge[1])]}
            for a in sorted(U.arcs, key=lambda a: (ls.label_text(a.edge[0]), ls.label_text(a.edge[1]), a.lo))
        ],
    }


def _arcs_text(ls: LoadedSpace, U: ArcUnion) -> str:
    parts = ["{" + ", ".join(_points_json(ls, U.vertices)) + "}"] if U.vertices else []
    for a in U.arcs:
        lo = "(" if a.lo_open else "["
        hi = ")" if a.hi_open else "]"
        x, y = (ls.label_text(v) for v in a.edge)
        parts.append(f"({x},{y},{lo}{format_rational(a.lo)},{format_rational(a.hi)}{hi})")
    return " ∪ ".join(parts) if parts else "∅"


# -- commands ----------------------------------------------------------------------


def cmd_dist(args) -> int:
    ls = load_space(args)
    if args.mode == "tower":
        tower = Tower(ls.space, max_depth=args.depth)
        v = tower.rho_infty(parse_thread(tower, ls, args.a), parse_thread(tower, ls, args.b))
    elif args.mode == "base":
        p, q = parse_point(ls, args.a, "base"), parse_point(ls, args.b, "base")
        v = ls.symbolic_d(p, q) if ls.symbolic_d else ls.space.d(p, q)
    else:
        p, q = parse_point(ls, args.a, args.mode), parse_point(ls, args.b, args.mode)
        ls = _with_center(ls, [e for pt in (p, q) for e in ([pt.x] if isinstance(pt, Vertex) else [pt.x, pt.y])])
        v = CobwebSpace(ls.space).distance(p, q) if args.mode == "cobweb" else gamma_distance(p, q)
    _emit(args, {"distance": format_rational(v), "mode": args.mode}, format_rational(v))
    return EXIT_OK


def cmd_ball(args) -> int:
    ls = load_space(args)
    r = parse_rational(args.r)
    if args.mode == "base":
        x = parse_point(ls, args.center, "base")
        ls = _with_center(ls, [x])
        B = dc.ball(ls.space, x, r)
        _emit(args, {"center": args.center, "r": format_rational(r), "ball": _points_json(ls, B)}, "{" + ", ".join(_points_json(ls, B)) + "}")
        return EXIT_OK
    if args.mode not in ("cobweb", "gamma"):
        raise UsageError("ball supports --mode base or cobweb")
    c = parse_point(ls, args.center, "cobweb")
    ls = _with_center(ls, [c.x] if isinstance(c, Vertex) else [c.x, c.y])
    U = CobwebSpace(ls.space).cob_ball(c, r)
    _emit(args, {"center": args.center, "r": format_rational(r), "ball": _arcs_json(ls, U)}, _arcs_text(ls, U))
    return EXIT_OK


def cmd_ball_image(args) -> int:
    ls = load_space(args)
    x = parse_point(ls, args.center, "base")
    ls = _with_center(ls, [x])
    r = parse_rational(args.r)
    cw = CobwebSpace(ls.space)
    img, B = cw.ball_image(x, r), dc.ball(ls.space, x, r)
    payload = {"center": args.center, "r": format_rational(r), "image": _points_json(ls, img), "ball": _points_json(ls, B), "equal": img == B}
    text = "{" + ", ".join(_points_json(ls, img)) + "}" + ("" if img == B else "  (differs from the base ball)")
    _emit(args, payload, text)
    return EXIT_OK if img == B else EXIT_FAIL


def cmd_verify(args) -> int:
    cfg = suites.VerifyConfig(seed=args.seed, max_points=args.max_points, depth=args.depth)
    try:
        report = suites.build_report(args.suite, cfg)
    except KeyError:
        names = ", ".join(["all", *suites.SUITES, *suites.EXTRA_SUITES])
        raise UsageError(f"unknown suite {args.suite!r}; choose from {names}") from None
    out = json.dumps(report, sort_keys=True, indent=None if args.compact else 2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    print(out)
    return EXIT_OK if report["failures"] == 0 else EXIT_FAIL


def cmd_gen(args) -> int:
    seed = args.seed_pos if args.seed_pos is not None else args.seed
    rng = random.Random(f"gen:{args.kind}:{seed}")
    n = args.size
    if n < 1:
        raise UsageError("size must be positive")
    if args.kind == "distance":
        doc = generators.random_distance_space(rng, n).to_json()
    elif args.kind == "metric":
        doc = generators.random_metric(rng, n).to_json()
    elif args.kind == "topology":
        doc = generators.random_topology(rng, n).to_json()
    elif args.kind == "neighborhood-system":
        doc = generators.random_neighborhood_system(rng, n, rng.randint(1, 4)).to_json()
    else:
        doc = generators.random_omil(rng, n).to_json()
    print(json.dumps(doc, sort_keys=True))
    return EXIT_OK


def cmd_report(args) -> int:
    """Summarise a saved verification report as a table."""
    try:
        with open(args.file, encoding="utf-8") as fh:
            report = json.load(fh)
        props = report["properties"]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read report {args.file}: {exc}") from None
    width = max((len(p["id"]) for p in props), default=10)
    lines = [f"suite {report.get('suite')}  seed {report.get('seed')}  runtime {report.get('runtime')}s"]
    for p in props:
        status = "ok" if p["failures"] == 0 else "FAIL"
        lines.append(f"{p['id']:<{width}}  {p['anchor']:<24} {p['cases']:>8} cases  {p['failures']:>6} failures  {status}")
    missing = report.get("coverage", {}).get("missing", [])
    if missing:
        lines.append("missing anchors: " + ", ".join(missing))
    print("\n".join(lines))
    return EXIT_OK if report.get("failures", 0) == 0 else EXIT_FAIL


# -- parser ------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, space: bool = True) -> None:
    if space:
        p.add_argument("--space", metavar="FILE", help="JSON distance space, neighborhood system or Omiljanowski document")
        p.add_argument("--builtin", metavar="NAME", help="extremal, two-point, three-point or nonfu")
        p.add_argument("--mode", choices=MODES, default="base", help="which distance to use (default: base)")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--max-points", type=int, default=6)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cobweb", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="distance between two points")
    _common(p)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("ball", help="open ball in the base space or the cobweb")
    _common(p)
    p.add_argument("center")
    p.add_argument("r")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("ball-image", help="compression image of a cobweb vertex ball")
    _common(p)
    p.add_argument("center")
    p.add_argument("r")
    p.set_defaults(func=cmd_ball_image)

    p = sub.add_parser("verify", help="run property suites and print a JSON report")
    _common(p, space=False)
    p.add_argument("--suite", default="all")
    p.add_argument("--output", metavar="FILE", help="also write the report here")
    p.add_argument("--compact", action="store_true", help="single-line JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="seeded random instance as JSON")
    _common(p, space=False)
    p.add_argument("kind", choices=GEN_KINDS)
    p.add_argument("size", type=int)
    p.add_argument("seed_pos", type=int, nargs="?", metavar="seed")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("report", help="tabulate a saved verification report")
    _common(p, space=False)
    p.add_argument("file")
    p.set_defaults(func=cmd_report)
    return ap


INPUT_ERRORS = (
    UsageError,
    RationalParseError,
    dc.DistanceSpaceError,
    GammaError,
    CobwebError,
    TowerError,
    TopologyError,
    gallery.GalleryError,
)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"cobweb {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
