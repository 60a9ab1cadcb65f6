# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same signatures and semantics as ``_kernels_py``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, sqrt

cnp.import_array()

cdef double GOLDEN = (sqrt(5.0) - 1.0) / 2.0


def sparse_bilinear(const cnp.intp_t[:] I, const cnp.intp_t[:] J,
                    const cnp.intp_t[:] K, const double[:] C,
                    const double complex[:] x, const double complex[:] y,
                    Py_ssize_t n):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(n, dtype=np.complex128)
    cdef double complex[:] o = out
    cdef Py_ssize_t m, nt = C.shape[0]
    for m in range(nt):
        o[K[m]] += C[m] * x[I[m]] * y[J[m]]
    return out


cdef double _energy(const double complex[:, :] V, const double complex[:] c,
                    const double[:] w, double t, const double[:] wfull,
                    const double[:] wimag, double complex[:] buf) nogil:
    # real arithmetic throughout: C99 complex products go through a slow
    # NaN-checking helper
    cdef Py_ssize_t n = c.shape[0], i, j
    cdef double ph, cr, ci, acc = 0.0, re, im, vr, vi, br, bi
    for j in range(n):
        ph = -w[j] * t
        cr = cos(ph)
        ci = sin(ph)
        br = c[j].real
        bi = c[j].imag
        buf[j] = br * cr - bi * ci + 1j * (br * ci + bi * cr)
    for i in range(V.shape[0]):
        if wfull[i] == 0.0 and wimag[i] == 0.0:
            continue
        re = 0.0
        im = 0.0
        for j in range(n):
            vr = V[i, j].real
            vi = V[i, j].imag
            br = buf[j].real
            bi = buf[j].imag
            re += vr * br - vi * bi
            im += vr * bi + vi * br
        acc += wfull[i] * (re * re + im * im) + wimag[i] * im * im
    return acc


def curve_energy(const double complex[:, :] V, const double complex[:] c,
                 const double[:] w, double t, const double[:] wfull,
                 const double[:] wimag):
    cdef double complex[:] buf = np.empty(c.shape[0], dtype=np.complex128)
    return _energy(V, c, w, t, wfull, wimag, buf)


def curve_energy_many(const double complex[:, :] V, const double complex[:] c,
                      const double[:] w, const double[:] ts,
                      const double[:] wfull, const double[:] wimag):
    cdef double complex[:] buf = np.empty(c.shape[0], dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(ts.shape[0])
    cdef Py_ssize_t k
    for k in range(ts.shape[0]):
        out[k] = _energy(V, c, w, ts[k], wfull, wimag, buf)
    return out


def line_search(const double complex[:, :] V, const double complex[:] c,
                const double[:] w, const double[:] wfull, const double[:] wimag,
                double lo, double hi, Py_ssize_t n_grid, double tol):
    cdef double complex[:] buf = np.empty(c.shape[0], dtype=np.complex128)
    cdef Py_ssize_t k, kbest = 0
    cdef double t, e, best_t = lo, best_e = 1e308
    cdef double step = (hi - lo) / (n_grid - 1)
    for k in range(n_grid):
        t = lo + k * step
        e = _energy(V, c, w, t, wfull, wimag, buf)
        if e < best_e:
            best_e = e
            best_t = t
            kbest = k
    cdef double a = lo + (kbest - 1 if kbest > 0 else 0) * step
    cdef double b = lo + (kbest + 1 if kbest < n_grid - 1 else n_grid - 1) * step
    cdef double x1 = b - GOLDEN * (b - a)
    cdef double x2 = a + GOLDEN * (b - a)
    cdef double f1 = _energy(V, c, w, x1, wfull, wimag, buf)
    cdef double f2 = _energy(V, c, w, x2, wfull, wimag, buf)
    while b - a > tol:
        if f1 < f2:
            b = x2
            x2 = x1
            f2 = f1
            x1 = b - GOLDEN * (b - a)
            f1 = _energy(V, c, w, x1, wfull, wimag, buf)
        else:
            a = x1
            x1 = x2
            f1 = f2
            x2 = a + GOLDEN * (b - a)
            f2 = _energy(V, c, w, x2, wfull, wimag, buf)
    if f1 < best_e:
        best_t = x1
        best_e = f1
    if f2 < best_e:
        best_t = x2
        best_e = f2
    return best_t, best_e
