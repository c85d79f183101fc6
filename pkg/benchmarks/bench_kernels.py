"""Time the numeric kernels under both backends.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The numba column includes a warm-up call so JIT compilation is excluded.
"""

import argparse
import time

import numpy as np

from rho_fourier import kernels

CASES = {
    "cell_counts(q=3, total=8)": ("cell_counts", (3, 8)),
    "char_sum(p=3, e=3, M=10)": ("char_sum", (3, 3, 10)),
    "torus_means(M=256, 9 terms)": (
        "torus_means",
        (np.array([(a, 4 - a) for a in range(5)] + [(a, -a) for a in range(4)], dtype=np.int64),
         np.linspace(0.5, 1.5, 9).astype(complex), 3.0, 256, True),
    ),
}


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = sorted(next(iter(kernels.IMPLEMENTATIONS.values())))
    print("kernel\t" + "\t".join(f"{b} [s]" for b in backends))
    for label, (name, call_args) in CASES.items():
        row = [label]
        for b in backends:
            fn = kernels.IMPLEMENTATIONS[name][b]
            fn(*call_args)  # warm-up / compile
            row.append(f"{best_of(fn, call_args, args.repeat):.4g}")
        print("\t".join(row))


if __name__ == "__main__":
    main()
