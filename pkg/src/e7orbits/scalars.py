"""Scalar backends: exact Gaussian rationals and IEEE complex doubles.

Coordinate vectors throughout the package are 1-D numpy arrays. An array
with ``dtype=object`` holding :class:`QQi`, ``Fraction`` or ``int`` entries
is an *exact* vector; a ``complex128`` array is a *float* vector.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import numpy as np


class QQi:
    """Complex number with arbitrary-precision rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QQi is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, QQi):
            return other
        if isinstance(other, (int, Rational)):
            return QQi(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QQi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QQi(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QQi(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return QQi(self.re * other, self.im * other)
        if not isinstance(other, QQi):
            return NotImplemented
        return QQi(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return QQi(self.re / other, self.im / other)
        if not isinstance(other, QQi):
            return NotImplemented
        d = other.abs2()
        return self * other.conjugate() * Fraction(1) / d

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return QQi(self.re, -self.im)

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        if self.im == 0:
            return f"QQi({self.re})"
        return f"QQi({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        im = abs(self.im)
        im_text = "i" if im == 1 else f"{im}i"
        return im_text if self.re == 0 and sign == "+" else (
            f"-{im_text}" if self.re == 0 else f"{self.re}{sign}{im_text}")


I = QQi(0, 1)


def exact(value) -> QQi:
    """Convert an int, Fraction, ``"p/q"`` string, QQi or (re, im) pair to QQi.

    Floats are accepted only when they are integral or dyadic enough that
    ``Fraction(float)`` is the intended value; callers needing decimal
    semantics should pass strings.
    """
    if isinstance(value, QQi):
        return value
    if isinstance(value, (tuple, list)):
        re, im = value
        return QQi(_frac(re), _frac(im))
    if isinstance(value, complex):
        return QQi(Fraction(value.real), Fraction(value.imag))
    return QQi(_frac(value))


def _frac(v) -> Fraction:
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(v)
    return Fraction(v)


def is_exact(arr: np.ndarray) -> bool:
    return arr.dtype == object


def exact_array(values) -> np.ndarray:
    out = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        out[i] = exact(v)
    return out


def to_float(arr: np.ndarray) -> np.ndarray:
    """Exact→float conversion; total on every exact entry type."""
    if arr.dtype == object:
        return np.array([complex(v) for v in arr.ravel()],
                        dtype=complex).reshape(arr.shape)
    return np.asarray(arr, dtype=complex)


def zeros(n: int, exact_mode: bool) -> np.ndarray:
    if exact_mode:
        out = np.empty(n, dtype=object)
        out[:] = [QQi(0)] * n
        return out
    return np.zeros(n, dtype=complex)


def conj(arr: np.ndarray) -> np.ndarray:
    """Complex conjugation (tau) on a coordinate array."""
    if arr.dtype == object:
        return np.array([v.conjugate() for v in arr], dtype=object)
    return np.conj(arr)


def common(*arrays: np.ndarray) -> tuple[np.ndarray, ...]:
    """Bring arrays to a common backend; any float operand forces float."""
    if all(a.dtype == object for a in arrays):
        return arrays
    return tuple(to_float(a) for a in arrays)


def scalar_is_exact(s) -> bool:
    return isinstance(s, (QQi, int, Rational))


def as_scalar(s, exact_mode: bool):
    if exact_mode:
        return exact(s)
    return complex(s)


def format_scalar(s) -> list:
    """Serialize to ``[re, im]``; exact parts as ``"p/q"`` strings."""
    if isinstance(s, (QQi, int, Rational)):
        q = exact(s)
        return [str(q.re), str(q.im)]
    z = complex(s)
    return [z.real, z.imag]


def parse_scalar(obj, exact_mode: bool):
    if isinstance(obj, (list, tuple)):
        re, im = obj
    else:
        re, im = obj, 0
    if exact_mode:
        return QQi(_frac(re), _frac(im))
    return complex(float(Fraction(re)) if isinstance(re, str) else float(re),
                   float(Fraction(im)) if isinstance(im, str) else float(im))


def scale(arr: np.ndarray, s) -> np.ndarray:
    """``s * arr`` without leaking object dtype into float arrays."""
    if arr.dtype == object:
        if isinstance(s, (QQi, int, Rational)):
            return arr * s
        return to_float(arr) * complex(s)
    if isinstance(s, (QQi, Rational)):
        s = complex(s)
    return arr * s
