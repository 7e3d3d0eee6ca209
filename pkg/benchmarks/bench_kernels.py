"""Compare the compiled and pure-Python Laurent kernels.

Run: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from skein import _ckernels, _pykernels


def random_poly(rng, terms, spread=40, bits=40):
    acc = {}
    for _ in range(terms):
        acc[rng.randint(-spread, spread)] = rng.randint(-(1 << bits), 1 << bits)
    return tuple(sorted((e, c) for e, c in acc.items() if c))


def kernel_rows(repeat):
    rng = random.Random(1)
    pairs = [(random_poly(rng, 12), random_poly(rng, 12)) for _ in range(200)]
    alpha = ((-2, 1), (2, 1))
    multiples = [_pykernels.poly_mul(a, alpha) for a, _ in pairs]
    rows = []
    for name, work in [
        ("poly_add", lambda mod: [mod.poly_add(a, b) for a, b in pairs]),
        ("poly_mul", lambda mod: [mod.poly_mul(a, b) for a, b in pairs]),
        ("poly_div_alpha", lambda mod: [mod.poly_div_alpha(m) for m in multiples]),
    ]:
        assert work(_pykernels) == work(_ckernels)
        py = min(timeit.repeat(lambda: work(_pykernels), number=20, repeat=repeat))
        cy = min(timeit.repeat(lambda: work(_ckernels), number=20, repeat=repeat))
        rows.append((name, py, cy))
    return rows


WORKLOAD = """
import time
from skein import _kernels
from skein.rewrite import ruleset_for, spanning_check
ruleset_for(5)
t0 = time.perf_counter()
for md in [(1, 1, 2, 1, 1), (1, 1, 1, 1, 1), (2, 1, 2, 1)]:
    spanning_check(md)
print(_kernels.BACKEND, time.perf_counter() - t0)
"""


def workload(pure):
    env = {"SKEIN_PURE_PYTHON": "1"} if pure else {"SKEIN_PURE_PYTHON": "0"}
    out = subprocess.run([sys.executable, "-c", WORKLOAD], capture_output=True, text=True,
                         env={**os.environ, **env}, check=True).stdout.split()
    return out[0], float(out[1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':16s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, py, cy in kernel_rows(args.repeat):
        print(f"{name:16s} {py:10.4f} {cy:10.4f} {py / cy:8.2f}")
    for pure in (True, False):
        backend, secs = workload(pure)
        print(f"spanning workload ({backend}): {secs:.2f} s")


if __name__ == "__main__":
    main()
