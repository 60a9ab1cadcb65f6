"""Sparse structure constants of bilinear maps on coordinate vectors."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import kernels


class Bilinear:
    """``out[k] = sum c * x[i] * y[j]`` over stored triples ``(i, j, k, c)``.

    Coefficients are kept both as ``Fraction`` (exact path) and ``float64``
    (float path); all coefficients used in this package are dyadic, so the
    two agree exactly.
    """

    def __init__(self, n: int, terms: dict[tuple[int, int, int], Fraction]):
        items = [(key, c) for key, c in sorted(terms.items()) if c != 0]
        self.n = n
        self.I = np.array([k[0] for k, _ in items], dtype=np.intp)
        self.J = np.array([k[1] for k, _ in items], dtype=np.intp)
        self.K = np.array([k[2] for k, _ in items], dtype=np.intp)
        self.C = np.array([float(c) for _, c in items])
        self.Cq = np.array([c for _, c in items], dtype=object)

    def __len__(self):
        return len(self.C)

    def __call__(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if x.dtype == object and y.dtype == object:
            # exact inputs are typically sparse; evaluate only terms touching nonzeros
            nzx = np.fromiter((v != 0 for v in x), bool, len(x))
            nzy = np.fromiter((v != 0 for v in y), bool, len(y))
            sel = nzx[self.I] & nzy[self.J]
            out = np.zeros(self.n, dtype=object)
            if sel.any():
                np.add.at(out, self.K[sel], self.Cq[sel] * x[self.I[sel]] * y[self.J[sel]])
            return out
        x = np.asarray(x, dtype=complex) if x.dtype != object else _f(x)
        y = np.asarray(y, dtype=complex) if y.dtype != object else _f(y)
        return kernels.sparse_bilinear(self.I, self.J, self.K, self.C, x, y, self.n)

    def left_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> B(a, y)``."""
        if a.dtype == object:
            m = np.zeros((self.n, self.n), dtype=object)
            sel = np.fromiter((v != 0 for v in a), bool, len(a))[self.I]
            np.add.at(m, (self.K[sel], self.J[sel]), self.Cq[sel] * a[self.I[sel]])
            return m
        m = np.zeros((self.n, self.n), dtype=complex)
        np.add.at(m, (self.K, self.J), self.C * np.asarray(a, dtype=complex)[self.I])
        return m

    def dense(self) -> np.ndarray:
        t = np.zeros((self.n, self.n, self.n))
        t[self.I, self.J, self.K] = self.C
        return t


def _f(a):
    from .scalars import to_float
    return to_float(a)
