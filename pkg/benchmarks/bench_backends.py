"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_backends.py [--repeat 5] [--end-to-end]

Kernel timings call both implementations in-process.  ``--end-to-end``
also times one beta quadrature per backend in a fresh interpreter, since
the backend is fixed at import.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from rindler_dicke import _backend

LD = np.longdouble


def cases():
    rng = np.random.default_rng(0)
    x = np.geomspace(1.0, 800.0, 24 * 400).astype(LD)
    v = np.linspace(0.01, 45.0, 24 * 45).astype(LD)
    cr = rng.normal(size=(400, 24)).astype(LD)
    ci = rng.normal(size=(400, 24)).astype(LD)
    t = rng.uniform(-1, 1, 20000).astype(LD)
    idx = rng.integers(0, 400, 20000)
    s = rng.normal(size=20000).astype(LD)
    return [
        ("power_osc (9600 pts)", "power_osc", (x, 0.0, 1.0, 1, 0.05)),
        ("log_reg (1080 pts)", "log_reg", (v, 0.0, 1.0, 1, 0.05)),
        ("legendre_antideriv (20000 pts)", "legendre_antideriv", (t, idx, cr, ci)),
        ("compensated_cumsum (20000)", "compensated_cumsum", (s, s)),
        ("hyp_series 1F2", "hyp_series", ((1j,), (1 + 1j, 1 + 2j), 0.25, 1e-15, 10000)),
        ("incgamma_series", "incgamma_series", (1 + 2j, 3.0, 1e-15, 10000)),
    ]


def time_call(fn, args, repeat):
    number = 1
    while timeit.timeit(lambda: fn(*args), number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def end_to_end(backend):
    code = (
        "import time; from rindler_dicke import beta_numeric, DimensionlessParams;"
        "t = time.perf_counter(); beta_numeric('RL', DimensionlessParams(1.0, 0.1));"
        "print(time.perf_counter() - t)"
    )
    env = dict(os.environ, RINDLER_DICKE_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args()

    if _backend.compiled_kernels is None:
        print("compiled kernels not built; nothing to compare")
        return 1
    py, cy = _backend.python_kernels, _backend.compiled_kernels
    print(f"{'kernel':34s} {'python/s':>11s} {'compiled/s':>11s} {'speedup':>8s}")
    for label, name, a in cases():
        tp = time_call(getattr(py, name), a, args.repeat)
        tc = time_call(getattr(cy, name), a, args.repeat)
        print(f"{label:34s} {tp:11.3e} {tc:11.3e} {tp / tc:8.1f}")
    if args.end_to_end:
        tp, tc = end_to_end("python"), end_to_end("compiled")
        print(f"{'beta_numeric RL, xi=1 kappa=0.1':34s} {tp:11.3e} {tc:11.3e} {tp / tc:8.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
