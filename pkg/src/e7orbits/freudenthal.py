"""The 56-dimensional Freudenthal space and the e7-valued product P x Q.

A vector ``(X, Y, xi, eta)`` is stored as 56 coordinates: the 27 of ``X``,
the 27 of ``Y``, then ``xi`` and ``eta``. ``(r1, r2, r3; r)`` denotes the
normal form ``(diag(r1, r2, r3), 0, r, 0)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import faults
from .jordan import (DIM, G, GQ, JordanElement, JordanOperator, cross, cross_matrix,
                     inner, vee)
from .scalars import QQi, common, conj, exact, exact_array, is_exact, scale, to_float

PDIM = 2 * DIM + 2
XS = slice(0, DIM)
YS = slice(DIM, 2 * DIM)
XI = 2 * DIM
ETA = 2 * DIM + 1

#: weights of the Hermitian form <P, Q> = sum GH_i conj(P_i) Q_i
GH = np.concatenate([G, G, [1, 1]]).astype(float)
GHQ = np.concatenate([GQ, GQ, np.array([Fraction(1), Fraction(1)], dtype=object)])

#: real matrix of lambda(X, Y, xi, eta) = (Y, -X, eta, -xi)
LAMBDA = np.zeros((PDIM, PDIM))
LAMBDA[XS, YS] = np.eye(DIM)
LAMBDA[YS, XS] = -np.eye(DIM)
LAMBDA[XI, ETA] = 1
LAMBDA[ETA, XI] = -1


class FreudenthalVector:
    __slots__ = ("c",)

    def __init__(self, coords):
        c = np.asarray(coords)
        if c.dtype != object:
            c = c.astype(complex)
        if c.shape != (PDIM,):
            raise ValueError(f"Freudenthal vector needs {PDIM} coordinates, got {c.shape}")
        self.c = c

    @classmethod
    def from_parts(cls, X: JordanElement, Y: JordanElement, xi, eta) -> "FreudenthalVector":
        exact_mode = X.is_exact and Y.is_exact and _scalar_exact(xi) and _scalar_exact(eta)
        if exact_mode:
            c = np.concatenate([X.c, Y.c, np.array([exact(xi), exact(eta)], dtype=object)])
        else:
            c = np.concatenate([to_float(X.c), to_float(Y.c), [complex(xi), complex(eta)]])
        return cls(c)

    @classmethod
    def normal_form(cls, r1, r2, r3, r, exact_mode: bool = True) -> "FreudenthalVector":
        """``(r1, r2, r3; r) = (diag(r1, r2, r3), 0, r, 0)``."""
        vals = [0] * PDIM
        vals[0], vals[1], vals[2], vals[XI] = r1, r2, r3, r
        if exact_mode:
            return cls(exact_array(vals))
        return cls(np.array(vals, dtype=complex))

    @classmethod
    def zero(cls, exact_mode: bool = True) -> "FreudenthalVector":
        return cls.normal_form(0, 0, 0, 0, exact_mode)

    @classmethod
    def basis(cls, j: int, exact_mode: bool = False) -> "FreudenthalVector":
        vals = [0] * PDIM
        vals[j] = 1
        return cls(exact_array(vals)) if exact_mode else cls(np.array(vals, dtype=complex))

    @property
    def is_exact(self) -> bool:
        return is_exact(self.c)

    @property
    def X(self) -> JordanElement:
        return JordanElement(self.c[XS])

    @property
    def Y(self) -> JordanElement:
        return JordanElement(self.c[YS])

    @property
    def xi(self):
        return self.c[XI]

    @property
    def eta(self):
        return self.c[ETA]

    def to_float(self) -> "FreudenthalVector":
        return FreudenthalVector(to_float(self.c))

    def __add__(self, other):
        a, b = common(self.c, other.c)
        return FreudenthalVector(a + b)

    def __sub__(self, other):
        a, b = common(self.c, other.c)
        return FreudenthalVector(a - b)

    def __neg__(self):
        return FreudenthalVector(-self.c)

    def __mul__(self, s):
        if isinstance(s, FreudenthalVector):
            return NotImplemented
        return FreudenthalVector(scale(self.c, s))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FreudenthalVector):
            return NotImplemented
        return bool(np.all(self.c == other.c))

    def norm2(self):
        return herm_inner_p(self, self)

    def diag_entries(self):
        """``(r1, r2, r3, r)`` read off the normal-form slots."""
        return (self.c[0], self.c[1], self.c[2], self.c[XI])

    def __repr__(self):
        if _is_normal_form(self.c):
            r = ", ".join(str(v) for v in self.diag_entries()[:3])
            return f"FreudenthalVector(({r}; {self.c[XI]}))"
        return f"FreudenthalVector(X={self.X!r}, Y={self.Y!r}, xi={self.xi!r}, eta={self.eta!r})"


def _scalar_exact(s) -> bool:
    return isinstance(s, (QQi, int, Fraction))


def _is_normal_form(c) -> bool:
    idx = [i for i in range(PDIM) if i not in (0, 1, 2, XI)]
    return all(c[i] == 0 for i in idx)


def _third(exact_mode: bool):
    return Fraction(1, 3) if exact_mode else 1 / 3


def _k(value, exact_mode: bool):
    return value if exact_mode else float(value)


# --- tau, lambda, forms -------------------------------------------------------

def lambda_map(P: FreudenthalVector) -> FreudenthalVector:
    """``lambda(X, Y, xi, eta) = (Y, -X, eta, -xi)``."""
    c = P.c
    return FreudenthalVector(np.concatenate([c[YS], -c[XS], c[ETA:ETA + 1], -c[XI:XI + 1]]))


def tau_p(P: FreudenthalVector) -> FreudenthalVector:
    return FreudenthalVector(conj(P.c))


def tau_lambda(P: FreudenthalVector) -> FreudenthalVector:
    return tau_p(lambda_map(P))


def herm_inner_p(P: FreudenthalVector, Q: FreudenthalVector):
    """``<P, Q> = <X, Z> + <Y, W> + conj(xi) zeta + conj(eta) omega``."""
    p, q = common(P.c, Q.c)
    g = GHQ if p.dtype == object else GH
    return (g * conj(p) * q).sum()


def symp(P: FreudenthalVector, Q: FreudenthalVector):
    """Symplectic form ``{P, Q} = (X, W) - (Z, Y) + xi omega - zeta eta``."""
    return (inner(P.X, Q.Y) - inner(Q.X, P.Y) + P.xi * Q.eta - Q.xi * P.eta)


# --- phi(SU(2)) -------------------------------------------------------------------

@dataclass(frozen=True)
class SU2Matrix:
    """``[[a, -tau b], [b, tau a]]`` with ``|a|^2 + |b|^2 = 1``."""

    a: object
    b: object

    def __post_init__(self):
        n = self.a * self.a.conjugate() + self.b * self.b.conjugate()
        if _scalar_exact(self.a) and _scalar_exact(self.b):
            if n != 1:
                raise ValueError(f"|a|^2 + |b|^2 = {n}, not 1")
        elif abs(complex(n) - 1) > 1e-10:
            raise ValueError(f"|a|^2 + |b|^2 = {complex(n).real!r}, not 1")

    @classmethod
    def identity(cls) -> "SU2Matrix":
        return cls(QQi(1), QQi(0))

    @classmethod
    def from_matrix(cls, m) -> "SU2Matrix":
        m = np.asarray(m, dtype=complex)
        if abs(m[0, 1] + np.conj(m[1, 0])) > 1e-10 or abs(m[1, 1] - np.conj(m[0, 0])) > 1e-10:
            raise ValueError("matrix is not of the form [[a, -conj b], [b, conj a]]")
        return cls(complex(m[0, 0]), complex(m[1, 0]))

    @property
    def matrix(self) -> np.ndarray:
        a, b = complex(self.a), complex(self.b)
        return np.array([[a, -np.conj(b)], [b, np.conj(a)]])

    def __matmul__(self, other: "SU2Matrix") -> "SU2Matrix":
        a = self.a * other.a - self.b.conjugate() * other.b
        b = self.b * other.a + self.a.conjugate() * other.b
        return SU2Matrix(a, b)


def phi_su2(M: SU2Matrix, P: FreudenthalVector) -> FreudenthalVector:
    """``(aX + tau(bY), aY - tau(bX), a xi + tau(b eta), a eta - tau(b xi))``."""
    exact_mode = P.is_exact and _scalar_exact(M.a) and _scalar_exact(M.b)
    c = P.c if exact_mode else to_float(P.c)
    a = M.a if exact_mode else complex(M.a)
    bbar = M.b.conjugate() if exact_mode else complex(M.b).conjugate()
    # tau(b Y) = conj(b) tau(Y), so phi(M) P = a P + conj(b) tau(lambda P)
    tl = conj(np.concatenate([c[YS], -c[XS], c[ETA:ETA + 1], -c[XI:XI + 1]]))
    return FreudenthalVector(c * a + tl * bbar)


# --- e7 action -----------------------------------------------------------------------

class LieElement:
    """``Phi(phi, A, B, nu)`` acting on the Freudenthal space by::

        X -> phi X - nu/3 X + 2 B x Y + eta A
        Y -> -phi^t Y + nu/3 Y + 2 A x X + xi B
        xi -> (A, Y) + nu xi
        eta -> (B, X) - nu eta
    """

    __slots__ = ("phi", "A", "B", "nu", "__dict__")

    def __init__(self, phi: JordanOperator, A: JordanElement, B: JordanElement, nu,
                 matrix: np.ndarray | None = None):
        self.phi = phi
        self.A = A
        self.B = B
        self.nu = nu
        if matrix is not None:
            self.__dict__["matrix"] = matrix

    @classmethod
    def zero(cls) -> "LieElement":
        return cls(JordanOperator.zero(), JordanElement.zero(), JordanElement.zero(), QQi(0))

    @property
    def is_exact(self) -> bool:
        return self.A.is_exact and self.B.is_exact and _scalar_exact(self.nu)

    def apply(self, P: FreudenthalVector) -> FreudenthalVector:
        exact_mode = self.is_exact and P.is_exact
        if not exact_mode:
            P = P.to_float() if P.is_exact else P
        nu = self.nu if exact_mode else complex(self.nu)
        third = _third(exact_mode)
        X, Y, xi, eta = P.X, P.Y, P.xi, P.eta
        two = 2
        X1 = (self.phi.apply(X) - X * (nu * third) + cross(self.B, Y) * two
              + self.A * eta)
        Y1 = (-self.phi.transpose().apply(Y) + Y * (nu * third) + cross(self.A, X) * two
              + self.B * xi)
        xi1 = inner(self.A, Y) + nu * xi
        eta1 = inner(self.B, X) - nu * eta
        return FreudenthalVector.from_parts(X1, Y1, xi1, eta1)

    __call__ = apply

    @cached_property
    def matrix(self) -> np.ndarray:
        """56x56 complex matrix of the action (float backend)."""
        phi = self.phi.matrix
        phit = (phi.T * G[None, :]) / G[:, None]
        A = to_float(self.A.c)
        B = to_float(self.B.c)
        nu = complex(self.nu)
        M = np.zeros((PDIM, PDIM), dtype=complex)
        eye = np.eye(DIM)
        M[XS, XS] = phi - nu / 3 * eye
        M[XS, YS] = 2 * cross_matrix(self.B)
        M[XS, ETA] = A
        M[YS, YS] = -phit + nu / 3 * eye
        M[YS, XS] = 2 * cross_matrix(self.A)
        M[YS, XI] = B
        M[XI, YS] = G * A
        M[XI, XI] = nu
        M[ETA, XS] = G * B
        M[ETA, ETA] = -nu
        return M

    def __repr__(self):
        return f"LieElement(phi=<{len(self.phi.terms)} terms>, A={self.A!r}, B={self.B!r}, nu={self.nu!r})"


def cross_p(P: FreudenthalVector, Q: FreudenthalVector) -> LieElement:
    """The e7-valued product ``P x Q``."""
    exact_mode = P.is_exact and Q.is_exact
    if not exact_mode:
        P, Q = P.to_float(), Q.to_float()
    K = faults.CONSTANTS
    X, Y, xi, eta = P.X, P.Y, P.xi, P.eta
    Z, W, zeta, omega = Q.X, Q.Y, Q.xi, Q.eta
    phi = (vee(X, W) + vee(Z, Y)) * _k(K.phi, exact_mode)
    A = (cross(Y, W) * 2 - Z * xi - X * zeta) * _k(K.A, exact_mode)
    B = (cross(X, Z) * 2 - W * eta - Y * omega) * _k(K.B, exact_mode)
    nu = (inner(X, W) + inner(Z, Y) + _k(K.nu_pair, exact_mode) * (xi * omega + zeta * eta)) \
        * _k(K.nu, exact_mode)
    return LieElement(phi, A, B, nu)


def t_covariant(P: FreudenthalVector) -> FreudenthalVector:
    """``T(P) = tau lambda ((P x P) P)``."""
    return tau_lambda(cross_p(P, P).apply(P))


def s_covariant(P: FreudenthalVector) -> FreudenthalVector:
    """``S(P) = (P x P) tau lambda P``."""
    return cross_p(P, P).apply(tau_lambda(P))
