"""The exceptional Jordan algebra and its complexification.

An element is stored as 27 coordinates ``[d1, d2, d3, x1(8), x2(8), x3(8)]``
for the Hermitian matrix::

    | d1       x3       conj(x2) |
    | conj(x3) d2       x1       |
    | x2       conj(x1) d3       |

Products are evaluated from sparse structure constants, never through
3x3 octonion matrices.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import faults
from .octonion import MULT_SIGNS, MULT_TABLE, Octonion
from .scalars import QQi, common, conj, exact_array, is_exact, scale, to_float
from .structure import Bilinear

DIM = 27
HALF = Fraction(1, 2)

#: weights of the bilinear form (X, Y) = sum G_i X_i Y_i
G = np.array([1, 1, 1] + [2] * 24)
GQ = np.array([Fraction(g) for g in G], dtype=object)

_CONJ = [1, -1, -1, -1, -1, -1, -1, -1]
# slot s -> (diagonal indices summed, (a, b) slots in the product conj(x_a y_b + y_a x_b))
_SLOTS = {1: ((1, 2), (2, 3)), 2: ((2, 0), (3, 1)), 3: ((0, 1), (1, 2))}


def off(slot: int, m: int) -> int:
    """Coordinate index of octonion component ``m`` in off-diagonal slot 1..3."""
    return 3 + 8 * (slot - 1) + m


def _jordan_terms():
    t = defaultdict(Fraction)
    for k, (p, q) in enumerate(((2, 3), (3, 1), (1, 2))):
        t[(k, k, k)] += 1
        for s in (p, q):
            for m in range(8):
                t[(off(s, m), off(s, m), k)] += 1
    for s, (dpair, (a, b)) in _SLOTS.items():
        for d in dpair:
            for m in range(8):
                t[(d, off(s, m), off(s, m))] += HALF
                t[(off(s, m), d, off(s, m))] += HALF
        for i in range(8):
            for j in range(8):
                k = int(MULT_TABLE[i, j])
                c = HALF * int(MULT_SIGNS[i, j]) * _CONJ[k]
                # conj(x_a y_b): x from slot a (component i), y from slot b (component j)
                t[(off(a, i), off(b, j), off(s, k))] += c
                # conj(y_a x_b): y from slot a (component i), x from slot b (component j)
                t[(off(b, j), off(a, i), off(s, k))] += c
    return t


def _cross_terms(jt):
    t = defaultdict(Fraction)
    for key, c in jt.items():
        t[key] += c
    for d in range(3):
        for j in range(DIM):
            t[(d, j, j)] -= HALF
            t[(j, d, j)] -= HALF
        for d2 in range(3):
            for e in range(3):
                t[(d, d2, e)] += HALF
    for j in range(DIM):
        for e in range(3):
            t[(j, j, e)] -= HALF * int(G[j])
    return t


JORDAN_MUL = Bilinear(DIM, _jordan_terms())
JORDAN_CROSS = Bilinear(DIM, _cross_terms(_jordan_terms()))


class JordanElement:
    """Element of the complexified exceptional Jordan algebra (27 coordinates)."""

    __slots__ = ("c",)

    def __init__(self, coords):
        c = np.asarray(coords)
        if c.dtype != object:
            c = c.astype(complex)
        if c.shape != (DIM,):
            raise ValueError(f"Jordan element needs {DIM} coordinates, got {c.shape}")
        self.c = c

    # constructors -----------------------------------------------------
    @classmethod
    def exact(cls, coords) -> "JordanElement":
        return cls(exact_array(coords))

    @classmethod
    def zero(cls, exact_mode: bool = True) -> "JordanElement":
        return cls.exact([0] * DIM) if exact_mode else cls(np.zeros(DIM, dtype=complex))

    @classmethod
    def diag(cls, a, b, c, exact_mode: bool = True) -> "JordanElement":
        vals = [a, b, c] + [0] * 24
        return cls.exact(vals) if exact_mode else cls(np.array(vals, dtype=complex))

    @classmethod
    def from_parts(cls, d, x) -> "JordanElement":
        """Build from 3 diagonal scalars and 3 octonions (or 8-sequences)."""
        parts = list(d)
        for o in x:
            parts.extend(o.c if isinstance(o, Octonion) else o)
        arr = np.array(parts, dtype=object)
        if all(not isinstance(v, QQi) and isinstance(v, (complex, float, np.floating,
                                                             np.complexfloating)) for v in arr):
            return cls(arr.astype(complex))
        return cls.exact(list(arr))

    @classmethod
    def E(cls, exact_mode: bool = True) -> "JordanElement":
        return cls.diag(1, 1, 1, exact_mode)

    @classmethod
    def Ek(cls, k: int, exact_mode: bool = True) -> "JordanElement":
        d = [0, 0, 0]
        d[k - 1] = 1
        return cls.diag(*d, exact_mode=exact_mode)

    @classmethod
    def basis(cls, j: int, exact_mode: bool = False) -> "JordanElement":
        vals = [0] * DIM
        vals[j] = 1
        return cls.exact(vals) if exact_mode else cls(np.array(vals, dtype=complex))

    # structure ----------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return is_exact(self.c)

    @property
    def d(self):
        return list(self.c[:3])

    @property
    def x(self) -> list[Octonion]:
        return [Octonion(self.c[off(s, 0):off(s, 0) + 8]) for s in (1, 2, 3)]

    def is_real(self) -> bool:
        return bool(np.all(conj(self.c) == self.c))

    def to_float(self) -> "JordanElement":
        return JordanElement(to_float(self.c))

    # linear structure ---------------------------------------------------
    def __add__(self, other):
        return JordanElement(_add(self.c, other.c))

    def __sub__(self, other):
        return JordanElement(_add(self.c, -other.c))

    def __neg__(self):
        return JordanElement(-self.c)

    def __mul__(self, scalar):
        if isinstance(scalar, JordanElement):
            return NotImplemented
        return JordanElement(scale(self.c, scalar))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, JordanElement):
            return NotImplemented
        return bool(np.all(self.c == other.c))

    def __repr__(self):
        return f"JordanElement(d={self.d!r}, x=...)"

    # algebra --------------------------------------------------------------
    def __matmul__(self, other):
        return jordan_mul(self, other)

    def tau(self) -> "JordanElement":
        return JordanElement(conj(self.c))

    def trace(self):
        return trace(self)

    def cross(self, other) -> "JordanElement":
        return cross(self, other)


def _add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if (a.dtype == object) != (b.dtype == object):
        return to_float(a) + to_float(b)
    return a + b


def jordan_mul(X: JordanElement, Y: JordanElement) -> JordanElement:
    """Jordan product ``X o Y = (XY + YX) / 2``."""
    return JordanElement(JORDAN_MUL(X.c, Y.c))


def trace(X: JordanElement):
    return X.c[0] + X.c[1] + X.c[2]


def inner(X: JordanElement, Y: JordanElement):
    """Symmetric bilinear form ``(X, Y) = tr(X o Y)``."""
    x, y = common(X.c, Y.c)
    g = GQ if x.dtype == object else G
    return (g * x * y).sum()


def herm_inner(X: JordanElement, Y: JordanElement):
    """Hermitian inner product ``<X, Y> = (tau X, Y)``."""
    return inner(X.tau(), Y)


def cross(X: JordanElement, Y: JordanElement) -> JordanElement:
    """Freudenthal product ``X x Y``; ``X x X`` is the adjugate of ``X``."""
    out = JORDAN_CROSS(X.c, Y.c)
    c = faults.CONSTANTS.jordan_cross
    if c != HALF:
        out = out * (c / HALF if out.dtype == object else float(c / HALF))
    return JordanElement(out)


def det(X: JordanElement):
    """Cubic norm, defined as ``(X, X x X) / 3`` so it cannot drift from ``cross``."""
    v = inner(X, cross(X, X))
    return v * Fraction(1, 3) if X.is_exact else v / 3


class JordanOperator:
    """Complex-linear map of the 27-dimensional space.

    Held as a linear combination of terms so exact evaluation stays cheap:
    ``("mult", A)`` is ``Z -> A o Z``, ``("comm", A, B)`` is the commutator
    ``[A~, B~]`` of two multiplication operators, ``("dense", M)`` is an
    explicit 27x27 matrix in the coordinate basis.
    """

    __slots__ = ("terms", "__dict__")

    def __init__(self, terms=()):
        self.terms = tuple(terms)

    @classmethod
    def identity(cls, exact_mode: bool = True) -> "JordanOperator":
        return cls([(1, "mult", JordanElement.E(exact_mode))])

    @classmethod
    def mult(cls, A: JordanElement) -> "JordanOperator":
        return cls([(1, "mult", A)])

    @classmethod
    def commutator(cls, A: JordanElement, B: JordanElement) -> "JordanOperator":
        return cls([(1, "comm", A, B)])

    @classmethod
    def dense(cls, M) -> "JordanOperator":
        M = np.asarray(M)
        if M.shape != (DIM, DIM):
            raise ValueError("dense Jordan operator must be 27x27")
        return cls([(1, "dense", M)])

    @classmethod
    def zero(cls) -> "JordanOperator":
        return cls([])

    def __add__(self, other):
        return JordanOperator(self.terms + other.terms)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, scalar):
        return JordanOperator((t[0] * scalar,) + t[1:] for t in self.terms)

    __rmul__ = __mul__

    def apply(self, X: JordanElement) -> JordanElement:
        out = None
        for coef, kind, *data in self.terms:
            if kind == "mult":
                v = jordan_mul(data[0], X).c
            elif kind == "comm":
                A, B = data
                v = jordan_mul(A, jordan_mul(B, X)).c - jordan_mul(B, jordan_mul(A, X)).c
            else:
                M = data[0]
                xc = X.c
                if M.dtype != object and xc.dtype == object:
                    xc = to_float(xc)
                v = M @ xc
            v = scale(v, coef)
            out = v if out is None else _add(out, v)
        if out is None:
            return JordanElement.zero(X.is_exact) if X.is_exact else JordanElement(np.zeros(DIM, complex))
        return JordanElement(out)

    __call__ = apply

    def transpose(self) -> "JordanOperator":
        """Transpose with respect to the bilinear form ``(,)``."""
        terms = []
        for coef, kind, *data in self.terms:
            if kind == "mult":
                terms.append((coef, kind, *data))
            elif kind == "comm":
                terms.append((-coef, kind, *data))
            else:
                M = data[0]
                g = GQ if M.dtype == object else G
                terms.append((coef, "dense", (M.T * g[None, :]) / g[:, None]))
        return JordanOperator(terms)

    @cached_property
    def matrix(self) -> np.ndarray:
        """27x27 complex matrix in the coordinate basis (float backend)."""
        return self.to_matrix(exact_mode=False)

    def to_matrix(self, exact_mode: bool = False) -> np.ndarray:
        out = np.zeros((DIM, DIM), dtype=object if exact_mode else complex)
        for coef, kind, *data in self.terms:
            if kind == "mult":
                m = mult_matrix(data[0], exact_mode)
            elif kind == "comm":
                a, b = mult_matrix(data[0], exact_mode), mult_matrix(data[1], exact_mode)
                m = a @ b - b @ a
            else:
                m = data[0] if (exact_mode or data[0].dtype != object) else to_float(data[0])
            if not exact_mode:
                coef = complex(coef)
            out = out + coef * m
        return out

    def compose(self, other: "JordanOperator") -> "JordanOperator":
        return JordanOperator.dense(self.matrix @ other.matrix)


def mult_matrix(A: JordanElement, exact_mode: bool = False) -> np.ndarray:
    c = A.c
    if not exact_mode and c.dtype == object:
        c = to_float(c)
    return JORDAN_MUL.left_matrix(c)


def cross_matrix(A: JordanElement) -> np.ndarray:
    """Float matrix of ``Z -> A x Z``."""
    m = JORDAN_CROSS.left_matrix(to_float(A.c))
    c = faults.CONSTANTS.jordan_cross
    if c != HALF:
        m = m * float(c / HALF)
    return m


def mult_operator(A: JordanElement) -> JordanOperator:
    """The operator ``Z -> A o Z``."""
    return JordanOperator.mult(A)


def vee(X: JordanElement, W: JordanElement) -> JordanOperator:
    """``X v W = [X~, W~] + (X o W - (X, W) E / 3)~``."""
    exact_mode = X.is_exact and W.is_exact
    third = Fraction(1, 3) if exact_mode else 1 / 3
    sym = jordan_mul(X, W) - JordanElement.E(exact_mode) * (inner(X, W) * third)
    return JordanOperator.commutator(X, W) + JordanOperator.mult(sym)
