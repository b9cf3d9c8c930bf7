"""Compare the compiled and numpy kernels on rotated monomial sums.

    python3 benchmarks/bench_kernels.py [--n 8] [--repeat 5]
"""
from __future__ import annotations

import argparse
import timeit

from matchgates import kernels, randomize
from matchgates.clifford_algebra import jordan_wigner


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    gen = randomize.rng(args.seed)
    rep = jordan_wigner(args.n)
    bloch = randomize.product_state(gen, args.n).bloch_table()
    backends = sorted(kernels.BACKENDS)
    print(f"n={args.n}, backends: {', '.join(backends)} (default {kernels.BACKEND})")
    print(f"{'d':>3} {'terms':>10} " + " ".join(f"{b + ' [ms]':>14}" for b in backends) + "  speedup")
    for d in (2, 4, 6):
        rows = gen.standard_normal((d, 2 * args.n))
        values, times = {}, {}
        for b in backends:
            values[b] = kernels.rotated_monomial_sum(rows, rep, bloch, b)
            runs = 1 if d == 6 else 3
            t = min(timeit.repeat(lambda: kernels.rotated_monomial_sum(rows, rep, bloch, b), number=runs, repeat=args.repeat))
            times[b] = 1e3 * t / runs
        ref = values["python"]
        assert all(abs(v - ref) <= 1e-9 * max(1.0, abs(ref)) for v in values.values()), values
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{d:>3} {(2 * args.n) ** d:>10} " + " ".join(f"{times[b]:>14.3f}" for b in backends) + f"  {speed:6.2f}x")


if __name__ == "__main__":
    main()
