"""Time the scoring kernels on the compiled and NumPy backends.

Usage: python benchmarks/bench_backends.py [--instances N] [--dim D] [--repeats R]

Times each hot kernel on a synthetic dataset of the benchmark's shape
(default 202 x 18, the size of the gesture evaluation) plus a full
leave-one-out run per measure, and prints one row per (kernel, backend).
"""

import argparse
import time

import numpy as np

from bregsim import LabeledDataset, get_measure, leave_one_out
from bregsim import _kernels


def best_of(repeats, fn, *args):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_cases(X, P):
    G = _kernels.get_backend("python").grad_sq_l2(X)
    FX = _kernels.get_backend("python").value_neg_entropy(P)
    GP = _kernels.get_backend("python").grad_neg_entropy(P)
    return [
        ("grad_neg_entropy", lambda mod: mod.grad_neg_entropy(P)),
        ("grad_modified_entropy", lambda mod: mod.grad_modified_entropy(X)),
        ("subgrad_tv", lambda mod: mod.subgrad_tv(X, 0.0, -1.0)),
        ("normal_cosine", lambda mod: mod.normal_cosine(G, G)),
        ("cosine", lambda mod: mod.cosine(X, X)),
        ("euclidean", lambda mod: mod.euclidean(X, X)),
        ("bregman_div", lambda mod: mod.bregman_div(FX, FX, GP, P, P)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--instances", type=int, default=202)
    parser.add_argument("--dim", type=int, default=18)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = _kernels.available()
    if "c" not in backends:
        print("note: compiled backend not built, timing the NumPy backend only")

    rng = np.random.default_rng(0)
    X = np.ascontiguousarray(rng.normal(0.0, 2.0, (args.instances, args.dim)))
    P = np.ascontiguousarray(rng.uniform(0.05, 5.0, (args.instances, args.dim)))

    header = f"{'kernel':<26}" + "".join(f"{name + ' (ms)':>14}" for name in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(f"shape: {args.instances} x {args.dim}, best of {args.repeats}")
    print(header)
    print("-" * len(header))
    for name, call in kernel_cases(X, P):
        times = {b: best_of(args.repeats, call, mod) for b, mod in backends.items()}
        row = f"{name:<26}" + "".join(f"{times[b] * 1e3:>14.3f}" for b in backends)
        if len(times) == 2:
            row += f"{times['python'] / times['c']:>10.1f}x"
        print(row)

    ds = LabeledDataset(
        vectors=P, labels=[str(i % 2) for i in range(args.instances)], name="bench"
    )
    print()
    for measure_name in ("cosine", "euclidean", "bregman-angle-entropy", "bregman-angle-tv"):
        measure = get_measure(measure_name)
        times = {}
        for b, mod in backends.items():
            _kernels.active = mod
            times[b] = best_of(args.repeats, leave_one_out, ds, measure)
        _kernels.active = _kernels._select()
        row = f"{'loo ' + measure_name:<26}" + "".join(
            f"{times[b] * 1e3:>14.3f}" for b in backends
        )
        if len(times) == 2:
            row += f"{times['python'] / times['c']:>10.1f}x"
        print(row)


if __name__ == "__main__":
    main()
