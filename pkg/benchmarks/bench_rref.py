"""Compare the compiled and pure-Python RREF kernels.

    python benchmarks/bench_rref.py [--reps 20] [--suite]

Times rref on random (k x r) matrices over GF(p^n) for each backend and,
with --suite, the filtration sweep at reduced size.
"""

import argparse
import time

import numpy as np

from k3degen import _backend, verify
from k3degen.gf import make_field

CASES = [
    # p, n, rows, cols
    (2, 2, 4, 4),
    (3, 6, 6, 6),
    (2, 20, 20, 20),
    (7, 20, 20, 20),
    (5, 8, 22, 22),
]


def time_rref(backend, p, n, k, r, reps, seed=0):
    F = make_field(p, n)
    rng = np.random.default_rng(seed)
    mats = [rng.integers(0, p, size=(k, r, n), dtype=np.int64) for _ in range(reps)]
    prev = _backend.use(backend)
    try:
        start = time.perf_counter()
        for m in mats:
            _backend.rref(m, p, F.modulus_array)
        return (time.perf_counter() - start) / reps
    finally:
        _backend.use(prev)


def time_suite(backend, trials):
    prev = _backend.use(backend)
    try:
        cfg = verify.VerifyConfig(p_list=[2, 3, 5], sigma0_list=[1, 2, 3, 4, 5], trials=trials)
        res = verify.run_suite("filtration", cfg)
        assert res.passed, res.failures
        return res.elapsed
    finally:
        _backend.use(prev)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=20)
    ap.add_argument("--suite", action="store_true", help="also time the filtration suite")
    ap.add_argument("--trials", type=int, default=5)
    args = ap.parse_args()

    backends = _backend.available()
    print(f"backends: {', '.join(backends)}")
    header = f"{'case':<22}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(header)
    for p, n, k, r in CASES:
        times = [time_rref(b, p, n, k, r, args.reps) for b in backends]
        row = f"{f'GF({p}^{n}) {k}x{r}':<22}" + "".join(f"{t * 1e3:>10.3f}ms" for t in times)
        if len(backends) > 1:
            row += f"{times[backends.index('python')] / times[backends.index('cython')]:>9.1f}x"
        print(row)
    if args.suite:
        for b in backends:
            print(f"filtration suite ({args.trials} trials) [{b}]: {time_suite(b, args.trials):.2f}s")


if __name__ == "__main__":
    main()
