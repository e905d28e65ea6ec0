"""Compare the compiled and numpy series kernels on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Reports best-of-repeat wall time per workload, the speed-up and the largest
absolute difference between the two backends' sums.
"""
import argparse
import json
import sys
import timeit

import numpy as np

from kerrparity import _series_py
from kerrparity.series import DEFAULT_POLICY, log_term_weights, truncation_bound

try:
    from kerrparity._series_ext import series_sums as compiled_sums
except ImportError:
    compiled_sums = None

# (label, mean photon number, order, phase points)
WORKLOADS = [
    ("signal trace N=10", 10.0, 2, 2001),
    ("sensitivity scan N=10", 10.0, 2, 20000),
    ("sensitivity scan N=20", 20.0, 2, 40000),
    ("linear trace N=20", 20.0, 1, 2001),
    ("single point N=30", 30.0, 2, 1),
]


def workload(n, order, points):
    x = n / 2
    weights = log_term_weights(x, truncation_bound(2 * x, DEFAULT_POLICY), shift=x)
    phases = np.linspace(1e-4, np.pi, points)
    return weights, phases, order


def best_time(fn, args, repeat):
    number = 1
    while timeit.timeit(lambda: fn(*args), number=number) < 0.05 and number < 10_000:
        number *= 4
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", help="also write results to this path")
    args = parser.parse_args(argv)

    if compiled_sums is None:
        print("compiled extension not built; only the numpy kernel is available", file=sys.stderr)

    rows = []
    print(f"{'workload':<24}{'terms':>7}{'points':>8}{'numpy [ms]':>12}{'cython [ms]':>13}{'speed-up':>10}{'max |diff|':>12}")
    for label, n, order, points in WORKLOADS:
        wl = workload(n, order, points)
        t_py = best_time(_series_py.series_sums, wl, args.repeat)
        row = {"workload": label, "terms": len(wl[0]), "points": points, "numpy_s": t_py}
        if compiled_sums is not None:
            t_c = best_time(compiled_sums, wl, args.repeat)
            diff = max(float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
                       for a, b in zip(_series_py.series_sums(*wl), compiled_sums(*wl)))
            row.update(cython_s=t_c, speedup=t_py / t_c, max_abs_diff=diff)
            print(f"{label:<24}{row['terms']:>7}{points:>8}{1e3 * t_py:>12.3f}{1e3 * t_c:>13.3f}"
                  f"{t_py / t_c:>9.1f}x{diff:>12.1e}")
        else:
            print(f"{label:<24}{row['terms']:>7}{points:>8}{1e3 * t_py:>12.3f}{'-':>13}{'-':>10}{'-':>12}")
        rows.append(row)

    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
