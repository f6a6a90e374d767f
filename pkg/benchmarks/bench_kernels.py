"""Compare the compiled and pure-Python HNF/SNF kernels.

    python benchmarks/bench_kernels.py [--sizes 4 8 16] [--repeat 5] [--json out.json]

Each case times ``hnf`` and ``snf`` on the same seeded random integer
matrices under both backends and checks that the results coincide.  The
``int64`` column counts inputs the compiled kernel finishes without
overflow; the rest are rerun on the bigint fallback, so the compiled path
only pays off while intermediate entries stay within 64 bits.
"""

from __future__ import annotations

import argparse
import json
import random
import statistics
import sys
import time

import numpy as np

from semiexact import intmat
from semiexact.errors import ArithmeticOverflow


def random_matrix(rng, m, n, bound):
    return np.array([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)], dtype=object)


def time_call(fn, mats, repeat):
    runs = []
    for _ in range(repeat):
        start = time.perf_counter()
        for a in mats:
            fn(a)
        runs.append((time.perf_counter() - start) / len(mats))
    return statistics.median(runs)


def bench(sizes, repeat, count, bound, seed):
    rng = random.Random(seed)
    rows = []
    for size in sizes:
        mats = [random_matrix(rng, size, size, bound) for _ in range(count)]
        for name, fn in (("hnf", intmat.hnf), ("snf", intmat.snf)):
            with intmat.use_backend("python"):
                ref = [fn(a) for a in mats]
                t_py = time_call(fn, mats, repeat)
            with intmat.use_backend("cython"):
                got = [fn(a) for a in mats]
                t_cy = time_call(fn, mats, repeat)
            same = all(_same(x, y) for x, y in zip(ref, got))
            rows.append({"kernel": name, "size": size, "python_s": t_py, "cython_s": t_cy,
                         "speedup": t_py / t_cy if t_cy else float("inf"), "agree": same,
                         "int64_fits": _fits(fn, mats), "count": len(mats)})
    return rows


def _fits(fn, mats):
    """How many inputs the compiled kernel finishes without overflowing int64."""
    ok = 0
    with intmat.use_backend("cython"), intmat.fixed_width():
        for a in mats:
            try:
                fn(a)
            except ArithmeticOverflow:
                continue
            ok += 1
    return ok


def _same(x, y):
    if isinstance(x, tuple):
        return all((a == b).all() for a, b in zip(x, y))
    return (x.s == y.s).all() and (x.u == y.u).all() and (x.v == y.v).all()


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[3, 6, 12, 24])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--count", type=int, default=20, help="matrices per size")
    p.add_argument("--bound", type=int, default=9, help="entries drawn from [-bound, bound]")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", help="also write the rows to this file")
    args = p.parse_args(argv)

    if intmat.BACKEND != "cython":
        print("compiled kernel not built; run `pip install --no-build-isolation -e .` first", file=sys.stderr)
        return 1
    rows = bench(args.sizes, args.repeat, args.count, args.bound, args.seed)
    print(f"{'kernel':6} {'size':>4} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8} {'int64':>7}  agree")
    for r in rows:
        print(f"{r['kernel']:6} {r['size']:>4} {1e3 * r['python_s']:>12.3f} {1e3 * r['cython_s']:>12.3f} "
              f"{r['speedup']:>7.1f}x {r['int64_fits']:>3}/{r['count']:<3}  {r['agree']}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)
    return 0 if all(r["agree"] for r in rows) else 2


if __name__ == "__main__":
    sys.exit(main())
