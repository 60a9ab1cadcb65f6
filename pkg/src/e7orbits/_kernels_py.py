"""Pure-numpy kernels; reference implementation and import fallback."""
import math

import numpy as np

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def sparse_bilinear(I, J, K, C, x, y, n):
    prods = C * x[I] * y[J]
    return (np.bincount(K, prods.real, minlength=n)
            + 1j * np.bincount(K, prods.imag, minlength=n))


def curve_energy(V, c, w, t, wfull, wimag):
    v = V @ (np.exp(-1j * w * t) * c)
    return float(np.dot(wfull, v.real ** 2 + v.imag ** 2) + np.dot(wimag, v.imag ** 2))


def curve_energy_many(V, c, w, ts, wfull, wimag):
    phases = np.exp(-1j * np.outer(w, ts)) * c[:, None]
    v = V @ phases
    return wfull @ (v.real ** 2 + v.imag ** 2) + wimag @ (v.imag ** 2)


def line_search(V, c, w, wfull, wimag, lo, hi, n_grid, tol):
    """Grid scan on [lo, hi] then golden-section refinement of the best cell."""
    ts = np.linspace(lo, hi, n_grid)
    es = curve_energy_many(V, c, w, ts, wfull, wimag)
    k = int(np.argmin(es))
    a = ts[max(k - 1, 0)]
    b = ts[min(k + 1, n_grid - 1)]
    best_t, best_e = float(ts[k]), float(es[k])
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1 = curve_energy(V, c, w, x1, wfull, wimag)
    f2 = curve_energy(V, c, w, x2, wfull, wimag)
    while b - a > tol:
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = curve_energy(V, c, w, x1, wfull, wimag)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = curve_energy(V, c, w, x2, wfull, wimag)
    for t, e in ((x1, f1), (x2, f2)):
        if e < best_e:
            best_t, best_e = t, e
    return best_t, best_e
