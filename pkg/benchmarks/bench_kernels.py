"""Compare the compiled and pure-Python kernels on the three hot paths.

    python benchmarks/bench_kernels.py [--repeat 3]

Prints one row per workload with the best-of-N wall time of each backend
and the speedup.  Both backends are also checked to agree on every result.
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from rainbowtri import _pycore
from rainbowtri.coloring import num_pairs
from rainbowtri.constructions import theorem1_construction

try:
    from rainbowtri import _core
except ImportError:  # extension not built
    _core = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def workloads():
    big = theorem1_construction(120, 95)
    yield "find_rainbow n=120 (clean scan)", lambda m: m.find_rainbow(120, big.masks)

    rng = random.Random(3)
    canon = [bytes(rng.randrange(8) for _ in range(num_pairs(7))) for _ in range(20)]
    yield "canonical_masks n=7 x20", lambda m: [m.canonical_masks(7, c) for c in canon]

    def dfs(m, n, fully):
        shared = np.zeros(2, np.int64) if m is _core else [0, 0]
        r = m.dfs_search(n, fully, b"", 0, shared, True, 0, 3)
        return r[0], sorted(r[1]), r[2]

    yield "dfs_search n=4 all masks", lambda m: dfs(m, 4, False)
    yield "dfs_search n=5 fully colored", lambda m: dfs(m, 5, True)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _core is None:
        print("compiled core not available; build with `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'workload':36s} {'cython s':>10s} {'python s':>10s} {'speedup':>9s}")
    for name, fn in workloads():
        tc, rc = best_of(lambda: fn(_core), args.repeat)
        tp, rp = best_of(lambda: fn(_pycore), args.repeat)
        if rc != rp:
            raise SystemExit(f"backend mismatch on {name}")
        print(f"{name:36s} {tc:10.4f} {tp:10.4f} {tp / tc:8.0f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
