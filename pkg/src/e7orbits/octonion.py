"""Cayley algebra and its complexification (bioctonions).

The product is Cayley-Dickson doubling of the quaternions with
``(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))``; basis ``e0 = 1, e1..e7``
with ``e1, e2, e3`` the quaternion units ``i, j, k`` and ``e4..e7`` their
images under the doubling unit.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .scalars import conj as _tau, exact_array, is_exact, to_float
from .structure import Bilinear


def _quat_table():
    # i*j = k etc.; entries (index, sign)
    t = {}
    units = {(0, n): (n, 1) for n in range(4)}
    units.update({(n, 0): (n, 1) for n in range(1, 4)})
    for n in range(1, 4):
        units[(n, n)] = (0, -1)
    for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        units[(a, b)] = (c, 1)
        units[(b, a)] = (c, -1)
    t.update(units)
    return t


_Q = _quat_table()


def _qmul(p, q):
    r = [0] * 4
    for i in range(4):
        if p[i] == 0:
            continue
        for j in range(4):
            if q[j] == 0:
                continue
            k, s = _Q[(i, j)]
            r[k] += s * p[i] * q[j]
    return r


def _qconj(p):
    return [p[0], -p[1], -p[2], -p[3]]


def _cd_mul(x, y):
    a, b, c, d = x[:4], x[4:], y[:4], y[4:]
    left = [u - v for u, v in zip(_qmul(a, c), _qmul(_qconj(d), b))]
    right = [u + v for u, v in zip(_qmul(d, a), _qmul(b, _qconj(c)))]
    return left + right


def _build_table():
    table = np.zeros((8, 8), dtype=int)
    signs = np.zeros((8, 8), dtype=int)
    for i in range(8):
        for j in range(8):
            ei = [0] * 8
            ej = [0] * 8
            ei[i] = 1
            ej[j] = 1
            prod = _cd_mul(ei, ej)
            (k,) = [n for n in range(8) if prod[n] != 0]
            table[i, j] = k
            signs[i, j] = prod[k]
    return table, signs


#: ``e_i e_j = MULT_SIGNS[i, j] * e_{MULT_TABLE[i, j]}``
MULT_TABLE, MULT_SIGNS = _build_table()

OCT_MUL = Bilinear(8, {(i, j, int(MULT_TABLE[i, j])): Fraction(int(MULT_SIGNS[i, j]))
                       for i in range(8) for j in range(8)})

_CONJ_SIGN = np.array([1, -1, -1, -1, -1, -1, -1, -1])


class Octonion:
    """Bioctonion: 8 coordinates over the exact or float scalar backend.

    A real octonion is the special case where every coordinate is
    tau-fixed; :meth:`is_real` tests it.
    """

    __slots__ = ("c",)

    def __init__(self, coords):
        c = np.asarray(coords)
        if c.dtype != object:
            c = c.astype(complex)
        if c.shape != (8,):
            raise ValueError(f"octonion needs 8 coordinates, got shape {c.shape}")
        self.c = c

    @classmethod
    def exact(cls, coords) -> "Octonion":
        return cls(exact_array(coords))

    @classmethod
    def unit(cls, i: int, exact_mode: bool = True) -> "Octonion":
        vals = [0] * 8
        vals[i] = 1
        return cls.exact(vals) if exact_mode else cls(np.array(vals, dtype=complex))

    @property
    def is_exact(self) -> bool:
        return is_exact(self.c)

    def is_real(self) -> bool:
        return all((v.conjugate() == v) for v in self.c)

    def __add__(self, other):
        return Octonion(self.c + other.c)

    def __sub__(self, other):
        return Octonion(self.c - other.c)

    def __neg__(self):
        return Octonion(-self.c)

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return oct_mul(self, other)
        return Octonion(self.c * other)

    def __rmul__(self, scalar):
        return Octonion(self.c * scalar)

    def __eq__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        return bool(np.all(self.c == other.c))

    def conj(self) -> "Octonion":
        return oct_conj(self)

    def tau(self) -> "Octonion":
        return tau(self)

    def norm(self):
        """Quadratic form ``N(x) = x conj(x)``; complex-bilinear on bioctonions."""
        return oct_norm(self)

    def to_float(self) -> "Octonion":
        return Octonion(to_float(self.c))

    def __repr__(self):
        return f"Octonion({list(self.c)!r})"


Bioctonion = Octonion


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    return Octonion(OCT_MUL(x.c, y.c))


def oct_conj(x: Octonion) -> Octonion:
    return Octonion(x.c * _CONJ_SIGN)


def tau(x: Octonion) -> Octonion:
    return Octonion(_tau(x.c))


def oct_inner(x: Octonion, y: Octonion):
    """``(x, y) = Re(x conj(y))`` extended complex-bilinearly."""
    return sum(x.c * y.c)


def oct_norm(x: Octonion):
    return oct_inner(x, x)
