#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the three hot operations (functional evaluation, analytic gradient,
one descent step) over a range of grid sizes on the tilted torus family.

    python benchmarks/bench_kernels.py [--sizes 32 64 128] [--repeat 20]
"""

import argparse
import time
from fractions import Fraction

import numpy as np

from leafstab.leaffinder import (
    DiscreteSection,
    Grid,
    functional,
    gradient,
    make_family,
    set_backend,
)
from leafstab.leaffinder.kernels import HAS_NUMBA


def smooth_section(grid, seed=0, scale=0.1):
    rng = np.random.default_rng(seed)
    x1, x2 = grid.mesh()
    f = np.zeros(grid.shape)
    for _ in range(4):
        k1, k2 = rng.integers(-3, 4), rng.integers(-3, 4)
        f += rng.normal() * np.cos(k1 * x1 + k2 * x2)
    return DiscreteSection(grid, (scale * f / max(1.0, np.abs(f).max()))[None, :, :])


def time_op(fn, repeat):
    fn()  # warmup (includes JIT compilation on the numba path)
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench(backend, sizes, repeat):
    set_backend(backend)
    rows = []
    for n in sizes:
        grid = Grid(n, n)
        triple = make_family("torus-epsilon", grid, {"eps": Fraction(1, 10)})
        s = smooth_section(grid, seed=1)
        t_fun = time_op(lambda: functional(triple, s), repeat)
        t_grad = time_op(lambda: gradient(triple, s), repeat)

        def step():
            g = gradient(triple, s)
            functional(triple, s.replace(s.values - 1e-3 * g))

        t_step = time_op(step, repeat)
        rows.append((n, t_fun, t_grad, t_step))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[32, 64, 128])
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()

    backends = ["numpy"] + (["numba"] if HAS_NUMBA else [])
    results = {b: bench(b, args.sizes, args.repeat) for b in backends}

    header = f"{'grid':>6} {'op':>10}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    ops = ["functional", "gradient", "step"]
    for i, n in enumerate(args.sizes):
        for k, op in enumerate(ops):
            line = f"{n:>6} {op:>10}"
            times = [results[b][i][k + 1] for b in backends]
            for t in times:
                line += f"{t * 1e3:>10.3f}ms"
            if len(times) == 2:
                line += f"{times[0] / times[1]:>9.1f}x"
            print(line)


if __name__ == "__main__":
    main()
