#!/usr/bin/env python3
"""Benchmark the jitted kernels against the pure fallbacks.

Runs the three hot loops on realistic workloads and prints a timing table
comparing the numba backend with the plain implementations in one
process.  Use ``RELSEM_NO_NUMBA=1 relsem ...`` to force the fallback
package-wide; this script calls both flavours directly.
"""

import time

import numpy as np

from relsem import _accel


def _time(fn, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_rgs(m, maxk):
    """Enumerate all restricted growth strings of length m."""
    def run(fill):
        a = np.zeros(m, dtype=np.uint8)
        b = np.zeros(m, dtype=np.uint8)
        out = np.empty((65536, m), dtype=np.uint8)
        total = 0
        done = False
        while not done:
            count, done = fill(a, b, maxk, out)
            total += count
        return total
    return run


def bench_scan(n, maxk, target_size):
    """Closure-filter every partition of the n*n pair set."""
    rows = np.concatenate(list(_accel.rgs_batches(n * n, maxk)), axis=0)
    admissible = 0
    for k in range(1, maxk + 1):
        admissible |= 1 << k
    def run(scan):
        flags = np.empty(rows.shape[0], dtype=np.uint8)
        return scan(rows, n, admissible, target_size, 1, 2, 0, flags)
    return rows.shape[0], run


def bench_equal(rows_count, m):
    rng = np.random.default_rng(0)
    rows = rng.integers(0, 4, size=(rows_count, m)).astype(np.uint8)
    i0 = np.arange(m - 1, dtype=np.int64)
    i1 = np.arange(1, m, dtype=np.int64)
    def run(fn):
        return int(fn(rows, i0, i1).sum())
    return run


def main():
    print(f"active backend: {_accel.backend()}")
    rows = []

    run = bench_rgs(12, 4)
    if _accel.NUMBA_ENABLED:
        tj, nj = _time(lambda: run(_accel.rgs_fill))
    else:
        tj = nj = None
    tp, np_ = _time(lambda: run(_accel.rgs_fill_py))
    rows.append(("rgs enumeration (m=12, maxk=4)", f"{np_} strings", tj, tp))

    count, run = bench_scan(3, 4, 4)
    if _accel.NUMBA_ENABLED:
        tj, _ = _time(lambda: run(_accel.scan_candidates))
    else:
        tj = None
    tp, _ = _time(lambda: run(_accel.scan_candidates_py), repeat=1)
    rows.append((f"closure scan (n=3, {count} partitions)", "", tj, tp))

    run = bench_equal(200_000, 9)
    if _accel.NUMBA_ENABLED:
        tj, _ = _time(lambda: run(_accel.equal_on_pairs))
    else:
        tj = None
    tp, _ = _time(lambda: run(_accel.equal_on_pairs_py))
    rows.append(("label comparison (200k rows)", "", tj, tp))

    width = max(len(r[0]) for r in rows) + 2
    print(f"{'kernel':<{width}}{'numba':>12}{'fallback':>12}{'speedup':>10}")
    for name, note, tj, tp in rows:
        jit = f"{tj * 1e3:.1f} ms" if tj is not None else "-"
        ratio = f"{tp / tj:.0f}x" if tj else "-"
        print(f"{name:<{width}}{jit:>12}{tp * 1e3:>9.1f} ms{ratio:>10}")
        if note:
            print(f"  {note}")


if __name__ == "__main__":
    main()
