"""Compare the compiled and pure-Python kernels on realistic workloads.

Run from the repository root after building the extension::

    python benchmarks/bench_kernels.py [--repeat 3]

Each workload is timed on both backends and the results are checked for
equality before the timings are reported.
"""

from __future__ import annotations

import argparse
import sys
import time

from closure_descent import enumeration as en
from closure_descent.descent import data_shapes
from closure_descent.kernels import _pykernels
from closure_descent.maps import descent_conditions

try:
    from closure_descent.kernels import _ckernels
except ImportError:
    _ckernels = None


def _workloads():
    families4 = _pykernels.moore_families(4)
    spaces3 = en.spaces_upto(3)
    maps3 = [f for E in spaces3 for B in spaces3 for f in en.enumerate_maps(E, B)]
    cospans = {
        id(B): tuple(
            (A.n, A.closed, a.image)
            for A in en.spaces_upto(3, True)
            for a in en.enumerate_maps(A, B)
        )
        for B in spaces3
    }
    sample = maps3[::20]
    descent = [f for f in maps3 if descent_conditions(f).verdict][::4]
    shapes = [(f, s) for f in descent for s in data_shapes(f, f.dom.n)]

    def closure(k):
        return [k.closure_table(4, fam) for fam in families4]

    def moore(k):
        return k.moore_families(4)

    def canonical(k):
        return [k.canonical_family(4, fam) for fam in families4]

    def pullbacks(k):
        return [
            k.pullback_flags_all(f.dom.n, f.dom.closed, f.image, cospans[id(f.cod)])
            for f in sample
        ]

    def descent_search(k):
        return [
            k.descent_data_search(f.dom.n, f.dom.closed, f.image, tuple(s), False)
            for f, s in shapes
        ]

    return [
        (f"closure tables ({len(families4)} families on 4 points)", closure),
        ("Moore family enumeration on 4 points", moore),
        (f"canonical forms ({len(families4)} families on 4 points)", canonical),
        (f"pullback flags ({len(sample)} maps, all cospans)", pullbacks),
        (f"descent-data search ({len(shapes)} shapes)", descent_search),
    ]


def _time(fn, kernel, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(kernel)
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; only the Python backend is available", file=sys.stderr)
        return 1
    print(f"{'workload':<50} {'python':>10} {'cython':>10} {'speedup':>8}")
    for label, fn in _workloads():
        t_py, r_py = _time(fn, _pykernels, args.repeat)
        t_c, r_c = _time(fn, _ckernels, args.repeat)
        if r_py != r_c:
            print(f"{label}: backends disagree", file=sys.stderr)
            return 1
        print(f"{label:<50} {t_py:>9.3f}s {t_c:>9.3f}s {t_py / t_c:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
