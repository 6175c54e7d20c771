"""Census of finite topologies and maps behind the appendix lemmas.

Counts topologies on up to four labelled points, tallies map classes on up to
three points, and prints the first continuous monotone quotient surjection
that is not hereditarily quotient.
"""

import argparse
import time

from cobwebkit import finite_topology as ft
from cobwebkit.suites import appendix_exhaustive, find_non_hq_witness


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=3, help="points for the exhaustive map census")
    args = ap.parse_args()

    for n in range(1, 5):
        print(f"topologies on {n} points: {sum(1 for _ in ft.enumerate_topologies(n))}")

    tops = [T for n in range(1, args.max_n + 1) for T in ft.enumerate_topologies(n)]
    tally = dict.fromkeys(["maps", "surjective", "continuous", "quotient", "hereditarily quotient", "monotone"], 0)
    for X in tops:
        for Y in tops:
            for f in ft.maps_between(X, Y):
                tally["maps"] += 1
                tally["continuous"] += ft.is_continuous(f)
                tally["monotone"] += ft.is_monotone(f)
                if f.is_surjective():
                    tally["surjective"] += 1
                    tally["quotient"] += ft.is_quotient(f)
                    tally["hereditarily quotient"] += ft.is_hereditarily_quotient(f)
    print(f"\nmaps between topologies on <= {args.max_n} points")
    for k, v in tally.items():
        print(f"  {k:<22} {v}")

    start = time.perf_counter()
    results = appendix_exhaustive(args.max_n)
    print(f"\nlemma checks ({time.perf_counter() - start:.1f}s)")
    for r in results.values():
        print(f"  {r.id:<32} cases={r.cases:<8} failures={r.failures}")

    f = find_non_hq_witness(4)
    print("\nnon-hereditarily-quotient witness:")
    print(f"  X = {f.domain!r}\n  Y = {f.codomain!r}\n  f = {dict(f.assignment)}")


if __name__ == "__main__":
    main()
