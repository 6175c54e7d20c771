"""Where fibers stop being isometric to hedgehogs.

Prints the smallest hand-checkable counterexample, then measures on random
separating bases how often the whole-fiber isometry fails and whether the
failures are exactly the bases with two spikes whose cut points sum past 3/2.
"""

import argparse
import random
from fractions import Fraction

from cobwebkit.cobweb import CobwebSpace
from cobwebkit.distance_core import DistanceSpace
from cobwebkit.generators import random_separating_space
from cobwebkit.graph_metric import Interior, gamma_distance, hedgehog_distance, Spike
from cobwebkit.suites import fiber_isometry_predicted


def handmade() -> None:
    pts = ("u", "w", "x")
    d = {(a, b): Fraction(1) for a in pts for b in pts if a != b}
    d[("u", "x")] = d[("w", "x")] = Fraction(1, 10)
    cw = CobwebSpace(DistanceSpace(pts, d))
    p, q = Interior("x", "u", Fraction(5, 8)), Interior("x", "w", Fraction(9, 10))
    eps = max(cw.cut("x", "u"), cw.cut("x", "w"))
    print("base: d(u,x) = d(w,x) = 1/10, all other distances 1")
    print(f"cut points on [x,u] and [x,w]: {cw.cut('x', 'u')}, {cw.cut('x', 'w')}")
    print(f"Γ distance  {p} -> {q}: {gamma_distance(p, q)}")
    print(f"hedgehog distance (t + s):            {hedgehog_distance(Spike('u', p.t), Spike('w', q.t), eps)}")
    print(f"first grid mismatch: {cw.fiber_hedgehog_mismatch('x')}")


def sweep(seed: int, bases: int, max_points: int, step: Fraction) -> None:
    rng = random.Random(seed)
    fibers = failed = agree = 0
    for _ in range(bases):
        cw = CobwebSpace(random_separating_space(rng, rng.randint(2, max_points)))
        for x in cw.base.points:
            fibers += 1
            ok = cw.fiber_hedgehog_check(x, step)
            failed += not ok
            agree += ok == fiber_isometry_predicted(cw, x)
    print(f"\n{bases} random separating bases, {fibers} fibers, grid step {step}")
    print(f"whole-fiber isometry fails on {failed} fibers ({failed / fibers:.1%})")
    print(f"criterion cut(x,u) + cut(x,w) <= 3/2 predicts the outcome on {agree}/{fibers} fibers")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--bases", type=int, default=200)
    ap.add_argument("--max-points", type=int, default=6)
    ap.add_argument("--step", default="1/16")
    args = ap.parse_args()
    handmade()
    sweep(args.seed, args.bases, args.max_points, Fraction(args.step))


if __name__ == "__main__":
    main()
