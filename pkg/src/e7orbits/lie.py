"""Compact Lie algebras f4 < e6 < e7 acting on the Freudenthal space.

Bases are built numerically:

* f4: span of commutators of Jordan multiplication operators (derivations).
* e6: f4 plus ``i A~`` for real traceless ``A``.
* e7: e6 plus ``Phi(0, A, -tau A, 0)`` for ``A`` in the complexified
  Jordan algebra, plus ``Phi(0, 0, 0, i)``.

Ranks are read off singular values with a relative threshold of 1e-8 and
a mandatory gap report.
"""
from __future__ import annotations

import dataclasses
import json
import logging
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .freudenthal import (GH, LAMBDA, PDIM, XI, FreudenthalVector, LieElement, cross_p)
from .jordan import DIM, JordanElement, JordanOperator, mult_matrix

log = logging.getLogger(__name__)

RANK_RTOL = 1e-8
MIN_GAP = 10.0
CERT_TOL = 1e-9
BASIS_VERSION = "e7orbits-basis/1"

DIMENSIONS = {"f4": 52, "e6": 78, "e7": 133}


class ConstructionError(RuntimeError):
    """A basis did not reach its expected rank."""


class CertificateError(RuntimeError):
    """A group element failed one of its defining conditions."""


class StabilizerUncertain(RuntimeError):
    """The singular-value gap at the rank threshold is too small to trust."""

    def __init__(self, message, result):
        super().__init__(message)
        self.result = result


def numerical_rank(s: np.ndarray, rtol: float = RANK_RTOL,
                   atol: float = 0.0) -> tuple[int, float]:
    """Rank and gap ratio ``s[r-1] / s[r]`` for descending singular values ``s``.

    The threshold is ``max(rtol * s[0], atol)``. When nothing sits below it
    the ratio is taken against the threshold itself.
    """
    if len(s) == 0 or s[0] <= atol:
        return 0, np.inf
    thr = max(rtol * s[0], atol)
    r = int(np.sum(s > thr))
    below = s[r] if r < len(s) else 0.0
    gap = s[r - 1] / max(below, thr) if below > 0 else s[r - 1] / thr
    return r, float(gap)


def realify(mats: np.ndarray) -> np.ndarray:
    """Rows = matrices flattened to real coordinates ``[Re, Im]``."""
    flat = mats.reshape(len(mats), -1)
    return np.hstack([flat.real, flat.imag])


def compactness_residuals(M: np.ndarray) -> tuple[float, float]:
    """(skew-Hermitian residual w.r.t. <,>, tau-lambda commutation residual)."""
    skew = np.abs(M.conj().T * GH[None, :] + GH[:, None] * M).max()
    comm = np.abs(M @ LAMBDA - LAMBDA @ M.conj()).max()
    return float(skew), float(comm)


@dataclasses.dataclass
class LieBasis:
    label: str
    elements: list
    singular_values: np.ndarray
    rank: int
    gap_ratio: float

    @property
    def matrices(self) -> np.ndarray:
        return np.array([e.matrix for e in self.elements])

    def __len__(self):
        return len(self.elements)

    def to_json(self) -> str:
        from .serialize import lie_to_obj
        return json.dumps({
            "version": BASIS_VERSION,
            "label": self.label,
            "rank": self.rank,
            "certificate": {"singular_values": [float(v) for v in self.singular_values],
                            "gap_ratio": self.gap_ratio, "rtol": RANK_RTOL},
            "elements": [lie_to_obj(e) for e in self.elements],
        })


def _zero_j():
    return JordanElement(np.zeros(DIM, dtype=complex))


def _check(label, s, extra_rows=0):
    r, gap = numerical_rank(s)
    if r != DIMENSIONS[label]:
        raise ConstructionError(f"{label}: rank {r}, expected {DIMENSIONS[label]}")
    if gap < MIN_GAP:
        raise ConstructionError(f"{label}: spectral gap {gap:.3g} below {MIN_GAP}")
    return r, gap


@lru_cache(maxsize=None)
def f4_derivations() -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal derivations (52 real 27x27 matrices) and the spanning-set spectrum."""
    mults = [mult_matrix(JordanElement.basis(j)).real for j in range(DIM)]
    comms = np.array([mults[i] @ mults[j] - mults[j] @ mults[i]
                      for i in range(DIM) for j in range(i + 1, DIM)])
    _, s, vt = np.linalg.svd(comms.reshape(len(comms), -1), full_matrices=False)
    r, _ = numerical_rank(s)
    return vt[:r].reshape(r, DIM, DIM), s


@lru_cache(maxsize=None)
def build_f4_basis() -> LieBasis:
    D, s = f4_derivations()
    _check("f4", s)
    elems = [LieElement(JordanOperator.dense(d.astype(complex)), _zero_j(), _zero_j(), 0j)
             for d in D]
    r, gap = numerical_rank(s)
    return LieBasis("f4", elems, s, r, gap)


def _with_closure(mats: np.ndarray, n_pairs: int, seed: int) -> np.ndarray:
    """Append commutators of random pairs so the rank test also checks closure."""
    rng = np.random.default_rng(seed)
    extra = []
    for _ in range(n_pairs):
        i, j = rng.choice(len(mats), size=2, replace=False)
        extra.append(mats[i] @ mats[j] - mats[j] @ mats[i])
    return np.concatenate([mats, np.array(extra)]) if extra else mats


@lru_cache(maxsize=None)
def build_e6_basis() -> LieBasis:
    f4 = build_f4_basis()
    traceless = [JordanElement.basis(0) - JordanElement.basis(1),
                 JordanElement.basis(1) - JordanElement.basis(2)]
    traceless += [JordanElement.basis(j) for j in range(3, DIM)]
    extra = [LieElement(JordanOperator.mult(a) * 1j, _zero_j(), _zero_j(), 0j) for a in traceless]
    elems = f4.elements + extra
    phis = np.array([e.phi.matrix for e in elems])
    s = np.linalg.svd(realify(_with_closure(phis, 40, 6)), compute_uv=False)
    r, gap = _check("e6", s)
    return LieBasis("e6", elems, s, r, gap)


@lru_cache(maxsize=None)
def build_e7_basis() -> LieBasis:
    e6 = build_e6_basis()
    elems = list(e6.elements)
    for j in range(DIM):
        for c in (1, 1j):
            A = JordanElement.basis(j) * c
            elems.append(LieElement(JordanOperator.zero(), A, -A.tau(), 0j))
    elems.append(LieElement(JordanOperator.zero(), _zero_j(), _zero_j(), 1j))
    mats = np.array([e.matrix for e in elems])
    s = np.linalg.svd(realify(_with_closure(mats, 60, 7)), compute_uv=False)
    r, gap = _check("e7", s)
    return LieBasis("e7", elems, s, r, gap)


@lru_cache(maxsize=None)
def e7_matrices() -> np.ndarray:
    return build_e7_basis().matrices


# --- group elements ------------------------------------------------------------------

def g_inverse(M: np.ndarray) -> np.ndarray:
    """Inverse of a matrix unitary for <,>: ``GH^-1 M^H GH``."""
    return (M.conj().T * GH[None, :]) / GH[:, None]


def _unit(rng, n=PDIM):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.sqrt(np.sum(GH * np.abs(v) ** 2))


def certify(M: np.ndarray, n_probes: int = 20, seed: int = 0) -> dict:
    """Residuals of the three defining conditions of E7 on random probes."""
    rng = np.random.default_rng(seed)
    Minv = g_inverse(M)
    unitary = tl = equiv = 0.0
    tl = float(np.abs(M @ LAMBDA - LAMBDA @ M.conj()).max())
    for _ in range(n_probes):
        p, q, r = _unit(rng), _unit(rng), _unit(rng)
        ip = np.sum(GH * np.conj(M @ p) * (M @ q)) - np.sum(GH * np.conj(p) * q)
        unitary = max(unitary, abs(ip))
        P, Q = FreudenthalVector(p), FreudenthalVector(q)
        lhs = M @ cross_p(P, Q).apply(FreudenthalVector(Minv @ r)).c
        rhs = cross_p(FreudenthalVector(M @ p), FreudenthalVector(M @ q)).apply(
            FreudenthalVector(r)).c
        equiv = max(equiv, float(np.abs(lhs - rhs).max()))
    return {"unitarity": float(unitary), "tau_lambda": tl, "cross_equivariance": equiv}


@dataclasses.dataclass
class GroupElement:
    """A 56x56 matrix of E7 with its provenance and certificate residuals."""

    matrix: np.ndarray
    provenance: list = dataclasses.field(default_factory=list)
    certificate: dict = dataclasses.field(default_factory=dict)

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(np.eye(PDIM, dtype=complex), [],
                   {"unitarity": 0.0, "tau_lambda": 0.0, "cross_equivariance": 0.0})

    @property
    def certified(self) -> bool:
        return bool(self.certificate) and max(self.certificate.values()) <= CERT_TOL

    def apply(self, P: FreudenthalVector) -> FreudenthalVector:
        return FreudenthalVector(self.matrix @ P.to_float().c)

    __call__ = apply

    def inverse(self) -> "GroupElement":
        return GroupElement(g_inverse(self.matrix), [("inverse", list(self.provenance))],
                            dict(self.certificate))

    def compose(self, other: "GroupElement", n_probes: int = 4) -> "GroupElement":
        M = self.matrix @ other.matrix
        return GroupElement(M, self.provenance + other.provenance, certify(M, n_probes))

    __matmul__ = compose

    def to_obj(self) -> list:
        return [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix]


def exp_element(B: LieElement, t: float, n_probes: int = 4, seed: int = 0) -> GroupElement:
    """Certified ``exp(t B)``; raises :class:`CertificateError` past 1e-9."""
    skew, comm = compactness_residuals(B.matrix)
    scale = max(1.0, float(np.abs(B.matrix).max()))
    if skew > 1e-10 * scale or comm > 1e-10 * scale:
        raise ValueError(f"not a compact e7 element (skew {skew:.2e}, tau-lambda {comm:.2e})")
    M = expm(t * B.matrix)
    cert = certify(M, n_probes, seed)
    if max(cert.values()) > CERT_TOL:
        raise CertificateError(f"exp certificate failed: {cert}")
    return GroupElement(M, [("exp", t)], cert)


def combination(coeffs) -> LieElement:
    """``sum c_k B_k`` over the e7 basis, as a matrix-backed element."""
    coeffs = np.asarray(coeffs, dtype=float)
    M = np.tensordot(coeffs, e7_matrices(), axes=1)
    return LieElement(JordanOperator.zero(), _zero_j(), _zero_j(), 0j, matrix=M)


def random_group_element(seed, n_factors: int = 3, n_probes: int = 4) -> GroupElement:
    """Product of ``n_factors`` exponentials of random unit e7 elements."""
    rng = np.random.default_rng(seed)
    g = GroupElement.identity()
    for k in range(n_factors):
        c = rng.normal(size=133)
        c /= np.linalg.norm(c)
        t = float(rng.uniform(-np.pi, np.pi))
        f = exp_element(combination(c), t, n_probes=n_probes, seed=k)
        f.provenance = [("exp", [float(v) for v in c], t)]
        g = f if k == 0 else g.compose(f, n_probes)
    return g


def random_orbit_sample(pattern, seed, n_factors: int = 3) -> FreudenthalVector:
    """``alpha (r1, r2, r3; r)`` for a random certified ``alpha``."""
    r = [float(v) for v in pattern]
    P = FreudenthalVector.normal_form(*r, exact_mode=False)
    return random_group_element(seed, n_factors).apply(P)


# --- subgroups --------------------------------------------------------------------------

def _fp(*parts) -> np.ndarray:
    X = JordanElement.diag(*parts[:3], exact_mode=False)
    return FreudenthalVector.from_parts(X, JordanElement.zero(False), parts[3], 0).c


_XI1 = _fp(0, 0, 0, 1)
_E = _fp(1, 1, 1, 0)
_E1, _E2, _E3 = _fp(1, 0, 0, 0), _fp(0, 1, 0, 0), _fp(0, 0, 1, 0)
_E1XI = _fp(1, 0, 0, 1)


def subgroup_label(alpha: GroupElement, tol: float = CERT_TOL) -> frozenset:
    """Every group of the tower whose fixed-point condition ``alpha`` meets."""
    M = alpha.matrix

    def fixes(v):
        return np.abs(M @ v - v).max() <= tol

    labels = {"E7"}
    e6 = fixes(_XI1)
    if e6:
        labels.add("E6")
        if fixes(_E1):
            labels.add("Spin(10)")
        if fixes(_E):
            labels.add("F4")
            if fixes(_E1):
                labels.add("Spin(9)")
                if fixes(_E2) and fixes(_E3):
                    labels.add("Spin(8)")
    if fixes(_E1XI):
        labels.add("Spin(11)")
    return frozenset(labels)


# --- stabilizers ------------------------------------------------------------------------

@dataclasses.dataclass
class StabilizerResult:
    dim: int
    rank: int
    singular_values: np.ndarray
    gap_ratio: float

    @property
    def uncertain(self) -> bool:
        return self.gap_ratio < MIN_GAP


def stabilizer(P: FreudenthalVector) -> StabilizerResult:
    """Kernel of ``B -> B(P)`` over the real span of the e7 basis."""
    p = P.to_float().c
    BP = np.einsum("kij,j->ik", e7_matrices(), p)
    s = np.linalg.svd(np.vstack([BP.real, BP.imag]), compute_uv=False)
    # absolute floor: a vector killed by every generator has only rounding noise
    r, gap = numerical_rank(s, atol=1e-12 * max(np.linalg.norm(p), 1e-300))
    return StabilizerResult(133 - r, r, s, gap)


def stabilizer_dimension(P: FreudenthalVector) -> int:
    res = stabilizer(P)
    if res.uncertain:
        raise StabilizerUncertain(
            f"stabilizer rank {res.rank} has gap ratio {res.gap_ratio:.3g} < {MIN_GAP}", res)
    return res.dim
