"""Timing experiments for the exact solver.

Two tables:

* pipeline: solve_klcp on one random-gnm(n, m) instance for each k. On sparse
  random graphs the kernel is usually large, so the size bound answers
  straight away and this mostly times kernelization.
* dp: for each k, random graphs small enough that the pipeline has to fall
  through to the dynamic program. Reports width and table size next to the
  time so the 2^(t+1)(k+1)^2 growth is visible.

Usage: python3 scripts/scaling.py [--n 200] [--m 400] [--kmax 6] [--samples 40] [--seed 1]
"""
import argparse
import random
import statistics
import time

from loadcolor import generate, solve_klcp


def pipeline_table(n, m, kmax, seed):
    g = generate("random-gnm", n, m, seed=seed)
    print(f"pipeline on random-gnm({n}, {m}), seed {seed}")
    print(f"{'k':>3} {'verdict':>8} {'decided_by':>22} {'kernel_n':>9} {'ms':>9}")
    for k in range(1, kmax + 1):
        t0 = time.perf_counter()
        res = solve_klcp(g, k)
        ms = (time.perf_counter() - t0) * 1e3
        print(f"{k:>3} {str(res.verdict):>8} {res.decided_by:>22} {res.stats.get('kernel_n', '-'):>9} {ms:>9.2f}")


def dp_instances(k, samples, rng, tries=4000):
    """Random graphs whose solve goes through the DP."""
    found = []
    for _ in range(tries):
        n = rng.randint(2 * k, 7 * k)
        m = rng.randint(k, min(n * (n - 1) // 2, 2 * n))
        g = generate("random-gnm", n, m, seed=rng.randrange(2**31))
        res = solve_klcp(g, k, want_witness=False)
        if res.decided_by == "dp":
            found.append(g)
            if len(found) == samples:
                break
    return found


def dp_table(kmax, samples, seed):
    rng = random.Random(seed)
    print(f"\ndp path, up to {samples} instances per k")
    print(f"{'k':>3} {'found':>6} {'max width':>10} {'median entries':>15} {'median ms':>10} {'max ms':>9}")
    for k in range(1, kmax + 1):
        graphs = dp_instances(k, samples, rng)
        if not graphs:
            print(f"{k:>3} {0:>6}")
            continue
        times, widths, entries = [], [], []
        for g in graphs:
            t0 = time.perf_counter()
            res = solve_klcp(g, k)
            times.append((time.perf_counter() - t0) * 1e3)
            widths.append(res.stats["width"])
            entries.append(res.stats["table_entries"])
        print(f"{k:>3} {len(graphs):>6} {max(widths):>10} {int(statistics.median(entries)):>15} "
              f"{statistics.median(times):>10.2f} {max(times):>9.2f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--m", type=int, default=400)
    ap.add_argument("--kmax", type=int, default=6)
    ap.add_argument("--samples", type=int, default=40)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    pipeline_table(args.n, args.m, args.kmax, args.seed)
    dp_table(args.kmax, args.samples, args.seed)


if __name__ == "__main__":
    main()
