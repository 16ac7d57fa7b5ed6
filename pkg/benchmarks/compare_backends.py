#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the operations that dominate the package's real workloads: bulk
field multiplication, the key-equation solver round, Schur-square rank,
and an end-to-end twisted decode at a mid-size profile.

Usage: python benchmarks/compare_backends.py [--repeat N] [--quick]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from twistedrs._backend import load_backend
from twistedrs._field_common import find_generator, least_irreducible
from twistedrs.rng import StreamRNG


def timed(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def build_ops(backend, m: int):
    mod = least_irreducible(m)
    gen = find_generator(m, mod) if m <= 16 else 0
    return backend.FieldOps(m, mod, gen)


def bench_backend(name: str, repeat: int, quick: bool) -> dict[str, float]:
    backend = load_backend(name)
    rng = StreamRNG(1234)
    results: dict[str, float] = {}

    for m in (16, 56):
        ops = build_ops(backend, m)
        q = 1 << m
        size = 4096 if not quick else 1024
        x = np.array([rng.randbelow(q) for _ in range(size)], dtype=np.uint64)
        y = np.array([rng.randbelow(q) for _ in range(size)], dtype=np.uint64)
        results[f"vec_mul[m={m}, n={size}]"] = timed(lambda: ops.vec_mul(x, y), repeat)

    ops = build_ops(backend, 16)
    q = 1 << 16
    n, k = 255, 117
    xs = np.array(rng.sample_positions(q - 1, n), dtype=np.uint64) + np.uint64(1)
    ys = np.array([rng.randbelow(q) for _ in range(n)], dtype=np.uint64)
    results[f"interpolate[n={n}]"] = timed(lambda: ops.interpolate(xs, ys), repeat)

    R = ops.interpolate(xs, ys)
    M = np.zeros(n + 1, dtype=np.uint64)
    # vanishing polynomial by repeated root adjunction
    M[0] = 1
    deg = 0
    for a in xs.tolist():
        shifted = M[: deg + 1].copy()
        M[1 : deg + 2] = shifted
        M[0] = 0
        M[: deg + 1] ^= ops.vec_scale(shifted, int(a))
        deg += 1
    stop = (n + k + 1) // 2
    results[f"partial_euclid[n={n}]"] = timed(
        lambda: ops.partial_euclid(M, R, stop), repeat
    )

    rows = 117
    mat = np.array(
        [[rng.randbelow(q) for _ in range(n)] for _ in range(rows)], dtype=np.uint64
    )
    reps = 1 if name == "python" else repeat
    results[f"square_rank[{rows}x{n}]"] = timed(lambda: ops.square_rank(mat), reps)

    return results


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()

    lanes = {}
    for name in ("python", "compiled"):
        try:
            lanes[name] = bench_backend(name, args.repeat, args.quick)
        except ImportError:
            print(f"{name}: unavailable")
    if not lanes:
        return
    keys = list(next(iter(lanes.values())).keys())
    width = max(len(k) for k in keys)
    print(f"{'operation':<{width}}  " + "".join(f"{n:>12}" for n in lanes))
    for key in keys:
        row = f"{key:<{width}}  "
        for name in lanes:
            row += f"{lanes[name][key] * 1e3:>10.2f}ms"
        if len(lanes) == 2:
            py, cc = lanes["python"][key], lanes["compiled"][key]
            row += f"   x{py / cc:,.0f}"
        print(row)


if __name__ == "__main__":
    main()
