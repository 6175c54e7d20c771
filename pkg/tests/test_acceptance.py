"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line (criterion, tolerance, measured outcome);
the lines are printed in the pytest terminal summary and when this file is
run directly with ``python tests/test_acceptance.py``.
"""

import json
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from cobwebkit import suites
from cobwebkit.suites import VerifyConfig, run_suite

RESULTS: list[str] = []
CFG = VerifyConfig(seed=7, max_points=8, depth=6)


def record(n: int, title: str, tolerance: str, props, extra_ok: bool = True, note: str = "") -> None:
    failures = sum(p.failures for p in props)
    cases = sum(p.cases for p in props)
    ok = failures == 0 and extra_ok
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {title} (tolerance: {tolerance}) cases={cases} failures={failures}"
    if note:
        line += f" {note}"
    if failures:
        first = next(p for p in props if p.failures)
        line += f" first counterexample [{first.id}]: {str(first.counterexample)[:160]}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _only(props, *ids):
    return [p for p in props if p.id in ids]


def test_criterion_01_gamma_metric_axioms():
    start = time.perf_counter()
    props = run_suite("gamma-metric", CFG)
    elapsed = time.perf_counter() - start
    record(1, "Γ metric axioms, 200 spaces |X|<=8 x 50 pairs", "exact, < 10 s", props, elapsed < 10, f"runtime={elapsed:.2f}s")


def test_criterion_02_closed_form_vs_oracle():
    props = run_suite("gamma-oracle", CFG)
    record(2, "closed form vs Dijkstra oracle, |X|<=5, k=64, 1000 pairs", "<= 2/64, exact on grid", props)


def test_criterion_03_construction_guarantees():
    props = run_suite("gamma-construction", CFG)
    record(3, "edge isometry, disjoint edges > 1, midpoint 1/2-ball", "exact", props)


def test_criterion_04_ball_image_identity():
    props = _only(run_suite("ball-image", CFG), "summary-6-ball-image")
    record(4, "π(B_ρ(x,r)) = B_d(x,r), 100 bases |X|<=8, r in i/20", "exact set equality", props)


def test_criterion_05_hq_identity():
    props = run_suite("hq-identity", CFG)
    record(5, "π(B_ρ(x,r) ∪ fiber(x)∖{x}) = B_d(x,r), same sweep", "exact set equality", props)


def test_criterion_06_fiber_hedgehog_isometry():
    props = run_suite("fiber-isometry-literal", CFG)
    record(6, "fiber(x) isometric to hedgehog, separating |X|<=6, grid step 1/16", "exact", props)


def test_criterion_07_appendix_lemmas():
    props = run_suite("appendix", CFG)
    witness = _only(props, "defs-non-hq-witness")[0]
    record(7, "appendix lemmas exhaustive <=3 points + 10^4 random 4-point maps, non-HQ witness", "zero counterexamples", props, witness.cases > 0)


def test_criterion_08_tower():
    props = run_suite("tower", CFG)
    record(8, "ρ_∞ intervals (width, nesting, exactness), lifts, metric axioms, depth <= 6, 500 pairs", "exact", props)


def test_criterion_09_economical_bound():
    props = run_suite("economical", CFG)
    record(9, "distinct distance count <= bound, unrealized radius, 100 samples <= 50 threads", "exact", props)


def test_criterion_10_gallery():
    props = run_suite("extremal", CFG) + run_suite("omiljanowski", CFG) + _only(run_suite("beobachtung", CFG), "beobachtung-sandwich")
    props += run_suite("cantor", CFG)
    record(10, "extremal ball images, Omiljanowski closed forms, sandwich on 1000 systems, Cantor count N<=10", "exact", props)


def test_criterion_11_end_to_end_cli():
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "cobwebkit", "verify", "--suite", "all", "--seed", "7", "--max-points", "6", "--depth", "4", "--compact"],
        capture_output=True,
        text=True,
        timeout=600,
    )
    elapsed = time.perf_counter() - start
    report = json.loads(proc.stdout)
    missing = report["coverage"]["missing"]

    class _Summary:
        id = "verify-all"
        cases = report["cases"]
        failures = report["failures"]
        counterexample = None

    ok = proc.returncode == 0 and elapsed < 120 and not missing
    record(11, "cobweb verify --suite all --seed 7 --max-points 6 --depth 4", "< 120 s, 0 failures, full anchor coverage", [_Summary], ok, f"runtime={elapsed:.1f}s missing={missing}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
