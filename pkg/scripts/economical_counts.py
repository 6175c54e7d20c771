"""Distinct ρ_∞ values against the Σ|pr_n|² bound as samples grow."""

import argparse
import random

from cobwebkit.generators import random_metric, random_thread_sample
from cobwebkit.tower import Tower


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--points", type=int, default=4)
    ap.add_argument("--depth", type=int, default=6)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    tower = Tower(random_metric(rng, args.points), max_depth=args.depth)
    print(f"{'threads':>8} {'distinct':>9} {'bound':>7} {'ratio':>7}")
    for size in (5, 10, 20, 50, 100, 200):
        for _ in range(args.repeats):
            sample = random_thread_sample(tower, rng, size, args.depth)
            rep = tower.distinct_distance_count(sample)
            print(f"{len(set(sample)):>8} {rep.count:>9} {rep.bound:>7} {rep.count / rep.bound:>7.3f}")


if __name__ == "__main__":
    main()
