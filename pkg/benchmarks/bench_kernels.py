"""Compare the compiled and numpy kernels on the diagonalizer's hot paths.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from e7orbits import _kernels_py
from e7orbits.diagonalize import _SQ, _W_FULL, _W_IMAG, _spectral_basis
from e7orbits.freudenthal import GH
from e7orbits.jordan import JORDAN_MUL
from e7orbits.lie import random_orbit_sample

try:
    from e7orbits import _kernels
except ImportError:
    _kernels = None


def cases():
    P = random_orbit_sample((1, 2, 3, 5), seed=0)
    U, w = _spectral_basis()[17]
    c = U.conj().T @ (_SQ * P.c)
    wf, wi = _W_FULL / GH, _W_IMAG / GH
    rng = np.random.default_rng(0)
    x = rng.normal(size=27) + 1j * rng.normal(size=27)
    y = rng.normal(size=27) + 1j * rng.normal(size=27)
    B = JORDAN_MUL
    return {
        "line_search": lambda m: m.line_search(U, c, w, wf, wi, -np.pi, np.pi, 40, 1e-10),
        "curve_energy": lambda m: m.curve_energy(U, c, w, 0.3, wf, wi),
        "sparse_bilinear": lambda m: m.sparse_bilinear(B.I, B.J, B.K, B.C, x, y, 27),
    }


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args(argv)
    impls = {"python": _kernels_py}
    if _kernels is not None:
        impls["cython"] = _kernels
    else:
        print("compiled kernels not built; timing the numpy fallback only")
    print(f"{'kernel':<16}" + "".join(f"{k:>14}" for k in impls) + "     speedup")
    for name, fn in cases().items():
        times = {}
        for k, mod in impls.items():
            fn(mod)
            times[k] = min(timeit.repeat(lambda: fn(mod), number=args.repeat, repeat=3)) / args.repeat
        row = f"{name:<16}" + "".join(f"{times[k] * 1e6:>11.1f} us" for k in impls)
        if "cython" in times:
            row += f"   {times['python'] / times['cython']:8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
