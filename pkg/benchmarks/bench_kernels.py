"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5] [--samples 1000000]

Prints one row per kernel and size: best wall time for each backend, the
speed-up, and the largest relative difference between the two outputs.
JIT compilation is triggered once before timing.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from sympullback._accel import HAVE_NUMBA
from sympullback.archimedean import _kernels
from sympullback.archimedean.numeric import zeta_integral_mc


def best_time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def max_rel(a, b):
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


def cases(samples):
    rng = np.random.default_rng(0)
    for n in (1, 2, 3):
        a = rng.exponential(1.0, size=(samples, n))
        yield f"zeta_weights n={n} N={samples}", "zeta_weights", (a, 1.5, 3.5 * n, 4 * n)
    for m in (200, 800):
        v = np.linspace(0.0, 10.0, m)
        yield f"selberg2_grid {m}x{m}", "selberg2_grid", (v, v.copy(), 4.0)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--samples", type=int, default=10 ** 6)
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'kernel':34s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speed-up':>9s} {'max rel diff':>13s}")
    for label, name, call_args in cases(args.samples):
        f_np = _kernels.get(name, "numpy")
        f_nb = _kernels.get(name, "numba")
        f_nb(*call_args)  # compile
        t_np, r_np = best_time(lambda: f_np(*call_args), args.repeat)
        t_nb, r_nb = best_time(lambda: f_nb(*call_args), args.repeat)
        print(f"{label:34s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}x {max_rel(r_nb, r_np):13.2e}")

    # end to end: the Monte-Carlo estimate used by the acceptance suite
    for backend in ("numpy", "numba"):
        zeta_integral_mc(1, 4, 0.5, samples=1000, seed=0, backend=backend)
        t, est = best_time(lambda: zeta_integral_mc(1, 4, 0.5, samples=args.samples, seed=1,
                                                    backend=backend), max(1, args.repeat // 2))
        print(f"{'zeta_integral_mc (' + backend + ')':34s} {t:10.4f} s  value {est.value.real:.8f}")


if __name__ == "__main__":
    main()
