"""Benchmark the compiled instance-checking kernel against the pure one.

Builds seeded random ontologies of increasing size, evaluates a fixed batch
of random class expressions with both backends (caches disabled by using
fresh expressions), and reports wall time plus speedup.  Run from the repo
root:

    python benchmarks/bench_eval.py [--sizes 200,1000,4000] [--exprs 300]
"""

from __future__ import annotations

import argparse
import random
import time

from dlforest.fixtures import random_expression, random_ontology
from dlforest.reasoner import materialize


def bench(n_individuals: int, n_exprs: int, seed: int = 7) -> tuple[float, float]:
    rng = random.Random(seed)
    onto = random_ontology(
        rng,
        n_classes=24,
        n_properties=4,
        n_individuals=n_individuals,
        assertion_rate=3.0,
        link_rate=4.0,
    )
    exprs = [random_expression(random.Random(seed + i), onto, depth=4) for i in range(n_exprs)]

    timings = {}
    results = {}
    for backend in ("pure", "compiled"):
        try:
            _, ext = materialize(onto, backend=backend)
        except RuntimeError:
            print(f"  {backend} backend unavailable, skipping")
            timings[backend] = float("nan")
            continue
        t0 = time.perf_counter()
        results[backend] = [ext.instance_set(e) for e in exprs]
        timings[backend] = time.perf_counter() - t0
    if "pure" in results and "compiled" in results:
        assert results["pure"] == results["compiled"], "backends disagree"
    return timings["pure"], timings["compiled"]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="200,1000,4000")
    parser.add_argument("--exprs", type=int, default=300)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"{'individuals':>12} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for n in sizes:
        pure_t, comp_t = bench(n, args.exprs)
        speedup = pure_t / comp_t if comp_t and comp_t == comp_t else float("nan")
        print(f"{n:>12} {pure_t:>10.3f} {comp_t:>13.3f} {speedup:>7.1f}x")


if __name__ == "__main__":
    main()
