"""Time the numba and NumPy elimination kernels side by side.

    python benchmarks/bench_kernels.py [--repeat 5]

Compilation is excluded: each numba kernel is called once before timing.
"""

import argparse
import timeit

import numpy as np

from bvpnewton import _kernels, problems
from bvpnewton.bvp import make_mesh, solve_bvp


def tridiagonal_case(n, rng):
    sub = rng.uniform(-1, 1, n - 1)
    sup = rng.uniform(-1, 1, n - 1)
    diag = rng.uniform(2.5, 4, n)
    return sub, diag, sup, rng.normal(size=n)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)

    cases = []
    for n in (100, 10_000, 1_000_000):
        sub, diag, sup, b = tridiagonal_case(n, rng)
        cases.append((f"thomas n={n}", 0, (sub, diag, sup, b, 0.0)))
    for n in (20, 100, 400):
        a = rng.normal(size=(n, n)) + n * np.eye(n)
        cases.append((f"dense  n={n}", 1, (a, rng.normal(size=n), 0.0)))

    backends = sorted(_kernels.BACKENDS)
    print(f"{'case':<20s}" + "".join(f"{b:>14s}" for b in backends) + "   speedup")
    for label, which, call_args in cases:
        times = {}
        for name in backends:
            fn = _kernels.BACKENDS[name][which]
            fn(*call_args)
            number = max(1, int(0.2 / max(timeit.timeit(lambda: fn(*call_args), number=1), 1e-7)))
            best = min(timeit.repeat(lambda: fn(*call_args), number=number, repeat=args.repeat))
            times[name] = best / number
        row = f"{label:<20s}" + "".join(f"{times[b] * 1e3:>12.4f}ms" for b in backends)
        if len(times) == 2:
            row += f"   x{times['numpy'] / times['numba']:.1f}"
        print(row)

    # end-to-end: the whole solve, dominated by Python-level assembly at these sizes
    p = problems.get_problem("paper-eq1")
    for n in (20, 1000, 20000):
        mesh = make_mesh(1.0, 3.0, n)
        t = min(timeit.repeat(lambda: solve_bvp(p, mesh), number=1, repeat=args.repeat))
        print(f"solve_bvp paper-eq1 n={n:<7d} {t * 1e3:10.3f}ms  (backend {_kernels.BACKEND})")


if __name__ == "__main__":
    main()
