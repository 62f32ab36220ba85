"""Time the compiled and pure-Python mining kernels on the same inputs.

    python benchmarks/bench_kernels.py --repeat 3
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from quadrec.ingest import DEFAULT_BUCKETING
from quadrec.miner import KERNELS, mine
from quadrec.model import SupportThresholds, build_pfolksonomy
from quadrec.synthetic import planted_affinity, random_pfolksonomy


def planted(seed, n_users):
    taggings, rows = planted_affinity(seed, n_users=n_users)
    demo = {u: {f"gender:{g}", f"age:{DEFAULT_BUCKETING.label(a)}", f"occ:{o}"} for u, g, a, o in rows}
    return build_pfolksonomy(taggings, demo)


def workloads(seed):
    rng = random.Random(seed)
    yield "planted-50", planted(seed, 50), SupportThresholds(2, 2, 2, 2)
    yield "planted-200", planted(seed, 200), SupportThresholds(2, 2, 2, 2)
    yield "random-sparse", random_pfolksonomy(rng, (60, 30, 30, 4), 0.08), SupportThresholds(2, 2, 2, 1)
    yield "random-dense", random_pfolksonomy(rng, (12, 10, 10, 3), 0.5), SupportThresholds(2, 2, 2, 2)


def timed(f, th, kernel, repeat):
    samples = []
    for _ in range(repeat):
        start = time.perf_counter()
        cs = mine(f, th, kernel=kernel)
        samples.append(time.perf_counter() - start)
    return statistics.median(samples), len(cs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    kernels = sorted(KERNELS)
    print("workload\tquadruples\tconcepts\t" + "\t".join(f"{k}_s" for k in kernels) + "\tspeedup")
    for name, f, th in workloads(args.seed):
        times, counts = {}, set()
        for k in kernels:
            times[k], n = timed(f, th, k, args.repeat)
            counts.add(n)
        if len(counts) != 1:
            raise SystemExit(f"{name}: kernels disagree on concept count {counts}")
        speedup = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        cols = "\t".join(f"{times[k]:.4f}" for k in kernels)
        print(f"{name}\t{len(f)}\t{counts.pop()}\t{cols}\t{speedup:.1f}x")


if __name__ == "__main__":
    main()
