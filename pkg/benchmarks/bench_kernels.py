"""Compiled vs pure-Python orbit kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Prints one line per workload with both timings and the speedup. Outputs of
the two backends are compared before timing.
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time

import numpy as np

from cohinv import _pykernels
from cohinv.rootdata import SimpleType, cartan_matrix

try:
    from cohinv import _ckernels
except ImportError:
    _ckernels = None


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    # the cached Cartan matrices are read-only; the compiled kernel wants a writable buffer
    e7 = np.array(cartan_matrix(SimpleType.E7))
    e6 = np.array(cartan_matrix(SimpleType.E6))
    d6 = np.array(cartan_matrix(SimpleType.D6))
    yield "orbit_stats E7 w1+w7", "orbit_stats", e7, np.array([1, 0, 0, 0, 0, 0, 1])
    yield "orbit_stats E6 w1+w6", "orbit_stats", e6, np.array([1, 0, 0, 0, 0, 1])
    yield "orbit_stats D6 rho", "orbit_stats", d6, np.ones(6, dtype=np.int64)
    box = np.array(list(itertools.product(range(-2, 3), repeat=7)), dtype=np.int64)
    yield f"dominant_batch E7 box B=2 ({len(box)} wts)", "dominant_batch", e7, box


def main(argv=None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'workload':44s} {'compiled':>10s} {'python':>10s} {'speedup':>8s}")
    for name, fn, cartan, arg in workloads():
        fc, fp = getattr(_ckernels, fn), getattr(_pykernels, fn)
        a, b = fc(cartan, arg), fp(cartan, arg)
        same = (a[0] == b[0] and np.array_equal(a[1], b[1])) if fn == "orbit_stats" else np.array_equal(a, b)
        if not same:
            print(f"{name}: backends disagree")
            return 1
        tc = _best(lambda: fc(cartan, arg), args.repeat)
        tp = _best(lambda: fp(cartan, arg), max(1, args.repeat // 3))
        print(f"{name:44s} {tc * 1e3:8.2f}ms {tp * 1e3:8.1f}ms {tp / tc:7.0f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
