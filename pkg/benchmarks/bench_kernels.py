"""Time the compiled and pure-Python box kernels on identical inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import sys
import time

from wpscount import kernels
from wpscount.enumeration import _rational_layout
from wpscount.weighted_space import Radical, Weight

CASES = [
    ("P(1,1)", "1,1", 400),
    ("P(1,2)", "1,2", 60),
    ("P(1,1,2)", "1,1,2", 12),
    ("P(1,2,3)", "1,2,3", 5),
]


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.BACKEND != "cython":
        print("compiled kernels unavailable; rebuild with `pip install --no-build-isolation -e .`", file=sys.stderr)
        return 1
    print(f"{'case':<10} {'T':>5} {'box':>12} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for label, W, T in CASES:
        w, b, z = _rational_layout(Weight.parse(W), Radical(T), ())
        lo = 0 if w[0] % 2 else -b[0]
        box = 1
        for n in b:
            box *= 2 * n + 1
        tc, nc = _best(lambda: kernels.count_box(w, b, z, lo, b[0], backend="cython"), args.repeat)
        tp, np_ = _best(lambda: kernels.count_box(w, b, z, lo, b[0], backend="python"), 1)
        assert nc == np_, (label, nc, np_)
        print(f"{label:<10} {T:>5} {box:>12} {tc:>10.4f} {tp:>10.4f} {tp / tc:>7.0f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
