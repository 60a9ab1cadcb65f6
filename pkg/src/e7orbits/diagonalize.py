"""Numerical reduction of a Freudenthal vector to its normal form ``(r1, r2, r3; r)``.

Levenberg-Marquardt steps over the whole e7 tangent space do the work; when
they stall, cyclic sweeps over one-parameter subgroups (a 40-point grid scan
plus golden-section refinement each) try to escape before a random restart.
SU(2) factors join only when E7 alone cannot reach a real diagonal.
"""
from __future__ import annotations

import dataclasses
import math
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from . import kernels
from .classify import DEFAULT_EPS, DiagonalForm, classify, classify_multiset
from .freudenthal import (ETA, GH, LAMBDA, PDIM, XI, FreudenthalVector, SU2Matrix,
                          herm_inner_p, phi_su2, t_covariant)
from .lie import e7_matrices

# coordinates that must vanish entirely, and those whose imaginary part must vanish
FULL = np.r_[3:27, 27:54, ETA]
IMAG = np.r_[0, 1, 2, XI]
DIAG = np.r_[0, 1, 2, XI]
_W_FULL = np.zeros(PDIM)
_W_FULL[FULL] = 1.0
_W_IMAG = np.zeros(PDIM)
_W_IMAG[IMAG] = 1.0
_SQ = np.sqrt(GH)

# su(2) directions as P -> cos t P + sin t K(P), with K^2 = -1
SU2_DIRECTIONS = ("phase", "real", "imag")


class ReductionError(RuntimeError):
    pass


def off_form_energy(P) -> float:
    """Squared distance of ``P`` from the set of real diagonal normal forms."""
    p = P.to_float().c if isinstance(P, FreudenthalVector) else np.asarray(P)
    return float(np.sum(np.abs(p[FULL]) ** 2) + np.sum(p[IMAG].imag ** 2))


def _residual(p: np.ndarray) -> np.ndarray:
    return np.concatenate([p[FULL].real, p[FULL].imag, p[IMAG].imag])


def _tau_lambda(p: np.ndarray) -> np.ndarray:
    return np.conj(LAMBDA @ p)


def _su2_k(name: str, p: np.ndarray) -> np.ndarray:
    if name == "phase":
        return 1j * p
    if name == "real":
        return _tau_lambda(p)
    return -1j * _tau_lambda(p)


def su2_factor(name: str, t: float) -> SU2Matrix:
    """The SU(2) matrix whose action is ``cos t P + sin t K(P)``."""
    c, s = math.cos(t), math.sin(t)
    if name == "phase":
        return SU2Matrix(complex(c, s), 0j)
    if name == "real":
        return SU2Matrix(complex(c), complex(s))
    return SU2Matrix(complex(c), complex(0, s))


@dataclasses.dataclass(frozen=True, eq=False)
class E7Factor:
    """``exp(t sum_k coeffs_k B_k)`` over the e7 basis."""

    coeffs: np.ndarray
    t: float

    @classmethod
    def single(cls, k: int, t: float) -> "E7Factor":
        c = np.zeros(133)
        c[k] = 1.0
        return cls(c, float(t))

    @property
    def matrix(self) -> np.ndarray:
        return expm(self.t * np.tensordot(self.coeffs, e7_matrices(), axes=1))

    def apply(self, p: np.ndarray) -> np.ndarray:
        return self.matrix @ p

    def to_obj(self) -> dict:
        nz = np.flatnonzero(self.coeffs)
        if nz.size == 1 and self.coeffs[nz[0]] == 1.0:
            return {"e7": int(nz[0]), "t": self.t}
        return {"e7_coeffs": [float(v) for v in self.coeffs], "t": self.t}

    @classmethod
    def from_obj(cls, obj: dict) -> "E7Factor":
        if "e7" in obj:
            return cls.single(int(obj["e7"]), float(obj["t"]))
        return cls(np.asarray(obj["e7_coeffs"], dtype=float), float(obj["t"]))


def apply_factors(P: FreudenthalVector, factors) -> FreudenthalVector:
    """Apply the recorded factors in order (first factor acts first)."""
    p = P.to_float().c.copy()
    for f in factors:
        if isinstance(f, SU2Matrix):
            p = phi_su2(f, FreudenthalVector(p)).c
        else:
            p = f.apply(p)
    return FreudenthalVector(p)


@dataclasses.dataclass
class ReductionConfig:
    tol: float = 1e-12
    # budget shared by Levenberg-Marquardt iterations and escape sweeps
    max_sweeps: int = 500
    restarts: int = 8
    seed: int = 0
    n_grid: int = 40
    # escalate to SU(2) directions when E7 alone stalls
    allow_su2: bool = True


@dataclasses.dataclass
class ReductionResult:
    diagonal: DiagonalForm
    transform: list
    residual: float
    iterations: int
    converged: bool = True
    signed_diagonal: tuple = ()
    # True when signs or phases of the diagonal entries were dropped by taking moduli
    phase_discarded: bool = False
    stage: str = "e7"
    history: list = dataclasses.field(default_factory=list)

    def to_obj(self) -> dict:
        factors = []
        for f in self.transform:
            if isinstance(f, SU2Matrix):
                factors.append({"su2": [[f.a.real, f.a.imag], [f.b.real, f.b.imag]]})
            else:
                factors.append(f.to_obj())
        return {"diagonal": [float(v) for v in self.diagonal],
                "signed_diagonal": [[float(z.real), float(z.imag)] for z in self.signed_diagonal],
                "residual": self.residual, "iterations": self.iterations,
                "converged": self.converged, "phase_discarded": self.phase_discarded,
                "stage": self.stage, "transform": factors}


@lru_cache(maxsize=None)
def _spectral_basis():
    """Per basis element ``B_k``: ``(U, w)`` with ``S B_k S^-1 = -i U diag(w) U^H``."""
    out = []
    for M in e7_matrices():
        H = 1j * (_SQ[:, None] * M) / _SQ[None, :]
        w, U = np.linalg.eigh((H + H.conj().T) / 2)
        out.append((np.ascontiguousarray(U), w))
    return out


def _line_search_e7(k: int, p: np.ndarray, n_grid: int):
    U, w = _spectral_basis()[k]
    c = U.conj().T @ (_SQ * p)
    # weights act on scaled coordinates v = S p
    t, e = kernels.line_search(U, c, w, _W_FULL / GH, _W_IMAG / GH, -math.pi, math.pi,
                               n_grid, 1e-10)
    return t, e, lambda: (U @ (np.exp(-1j * w * t) * c)) / _SQ


def _line_search_su2(name: str, p: np.ndarray):
    """Exact minimizer of the quadratic trig polynomial along ``cos t p + sin t K p``."""
    q = _su2_k(name, p)
    rp, rq = _residual(p), _residual(q)
    a, b, g = rp @ rp, rp @ rq, rq @ rq
    # E(t) = (a+g)/2 + (a-g)/2 cos 2t + b sin 2t
    t = 0.5 * math.atan2(-b, -(a - g) / 2)
    e = (a + g) / 2 - math.hypot((a - g) / 2, b)
    return t, e, lambda: math.cos(t) * p + math.sin(t) * q


def _sweep(p, energy, su2_dirs, cfg, transform, history):
    for k in range(133):
        if energy <= 0:
            break
        t, e, step = _line_search_e7(k, p, cfg.n_grid)
        if e < energy:
            p, energy = step(), e
            transform.append(E7Factor.single(k, t))
            history.append(energy)
    for name in su2_dirs:
        t, e, step = _line_search_su2(name, p)
        if e < energy:
            p, energy = step(), e
            transform.append(su2_factor(name, t))
            history.append(energy)
    # recompute to shed accumulated line-search rounding
    return p, off_form_energy(p)


def _levenberg_marquardt(p, energy, su2_dirs, tol, transform, history, budget: int):
    """Levenberg-Marquardt over the e7 tangent space plus the active su(2) directions.

    Returns the new point, its energy and the number of iterations used; stops
    when the damping blows up (a stall) or the energy drops below ``tol``.
    """
    mats = e7_matrices()
    lam = 1e-2
    n = 133 + len(su2_dirs)
    seen = [energy]
    for it in range(budget):
        if energy <= tol:
            return p, energy, it
        # a point with positive energy that LM cannot halve in 10 steps is a stall
        if len(seen) > 10 and seen[-1] > 0.5 * seen[-11]:
            return p, energy, it
        r = _residual(p)
        cols = [_residual(M @ p) for M in mats]
        cols += [_residual(_su2_k(name, p)) for name in su2_dirs]
        J = np.array(cols).T
        g, H = J.T @ r, J.T @ J
        while True:
            d = np.linalg.solve(H + lam * np.eye(n), -g)
            f = E7Factor(d[:133], 1.0)
            q = f.apply(p)
            su2 = []
            for name, s in zip(su2_dirs, d[133:]):
                q = math.cos(s) * q + math.sin(s) * _su2_k(name, q)
                su2.append(su2_factor(name, s))
            e = off_form_energy(q)
            if e < energy:
                p, energy = q, e
                transform.append(f)
                transform.extend(su2)
                history.append(energy)
                lam = max(lam / 3, 1e-12)
                seen.append(energy)
                break
            lam *= 4
            if lam > 1e8:
                return p, energy, it + 1
    return p, energy, budget


def _random_kick(rng) -> E7Factor:
    c = rng.normal(size=133)
    return E7Factor(c / np.linalg.norm(c), float(rng.uniform(-math.pi, math.pi)))


def _finish(p, transform, energy, sweeps, converged, stage, history, eps):
    d = p[DIAG]
    scale = max(float(np.abs(d).max()), 1e-300)
    mags = np.where(np.abs(d) <= 1e-12 * scale, 0.0, np.abs(d))
    discarded = bool(np.any((d.real < 0) & (mags > 0)) or np.any(np.abs(d.imag) > 0))
    return ReductionResult(DiagonalForm(tuple(float(v) for v in mags), eps), transform,
                           energy, sweeps, converged, tuple(complex(z) for z in d),
                           discarded, stage, history)


def reduce(P: FreudenthalVector, config: ReductionConfig | None = None,
           eps: float = DEFAULT_EPS) -> ReductionResult:
    """Bring ``P`` to ``(r1, r2, r3; r)`` and record the group factors used.

    A non-converged run returns the best point found with ``converged=False``.
    """
    cfg = config or ReductionConfig()
    p0 = P.to_float().c.astype(complex)
    norm2 = float(np.sum(GH * np.abs(p0) ** 2))
    tol = cfg.tol * max(1.0, norm2)
    energy0 = off_form_energy(p0)
    if energy0 <= tol:
        return _finish(p0, [], energy0, 0, True, "e7", [energy0], eps)

    stages = [("e7", ())]
    if cfg.allow_su2:
        stages += [("e7+phase", ("phase",)), ("e7+su2", SU2_DIRECTIONS)]
        # a real diagonal has real <T(P), P>, and E7 preserves it; skip what cannot work
        i4 = complex(herm_inner_p(t_covariant(FreudenthalVector(p0)), FreudenthalVector(p0)))
        if abs(i4.imag) > 1e-8 * max(norm2, 1.0) ** 2:
            stages = stages[1:]
    rng = np.random.default_rng(cfg.seed)
    best = None
    used = 0
    p, transform, history = p0, [], [energy0]
    energy = energy0
    for stage, dirs in stages:
        for attempt in range(cfg.restarts + 1):
            if attempt > 0:
                # restart from a random point of the orbit reached so far
                kick = _random_kick(rng)
                p = kick.apply(p)
                transform.append(kick)
                energy = off_form_energy(p)
                history.append(energy)
            while used < cfg.max_sweeps:
                # polish well past tol so the diagonal entries are accurate too
                p, energy, it = _levenberg_marquardt(p, energy, dirs, tol * 1e-10, transform,
                                                     history, cfg.max_sweeps - used)
                used += it
                if energy <= tol:
                    return _finish(p, transform, energy, used, True, stage, history, eps)
                # stalled: try to escape along single directions before giving up
                prev = energy
                for _ in range(3):
                    p, energy = _sweep(p, energy, dirs, cfg, transform, history)
                    used += 1
                if prev - energy < 1e-3 * prev:
                    break
            if best is None or energy < best[1]:
                best = (p.copy(), energy, list(transform), stage)
            if used >= cfg.max_sweeps:
                break
        # carry the best point of this stage into the next one
        p, energy, transform = best[0].copy(), best[1], list(best[2])
    p, energy, transform, stage = best
    return _finish(p, transform, energy, used, False, stage, history, eps)


@dataclasses.dataclass
class VerificationReport:
    checks: dict
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_reduction(P: FreudenthalVector, result: ReductionResult,
                     eps: float = DEFAULT_EPS, residual_tol: float = 1e-10,
                     norm_tol: float = 1e-9, entry_tol: float = 1e-8) -> VerificationReport:
    """Replay the factors on ``P`` and cross-check the claimed normal form."""
    Q = apply_factors(P, result.transform)
    p = P.to_float().c
    q = Q.c
    n0 = float(np.sum(GH * np.abs(p) ** 2))
    n1 = float(np.sum(GH * np.abs(q) ** 2))
    scale = max(1.0, n0)
    replay_energy = off_form_energy(q)
    got = np.sort(np.abs(q[DIAG]))[::-1]
    claimed = result.diagonal.as_floats()
    checks = {
        "replay_residual": replay_energy,
        "norm_drift": abs(n1 - n0) / scale,
        "entry_mismatch": float(np.max(np.abs(got - claimed))) / math.sqrt(scale),
    }
    failures = []
    if replay_energy > residual_tol * scale:
        failures.append(f"replayed off-form energy {replay_energy:.3e} exceeds {residual_tol:g}")
    if checks["norm_drift"] > norm_tol:
        failures.append(f"norm drift {checks['norm_drift']:.3e} exceeds {norm_tol:g}")
    if checks["entry_mismatch"] > entry_tol:
        failures.append(f"diagonal entries differ from replay by {checks['entry_mismatch']:.3e}")
    try:
        direct = classify(P, eps)
        claimed_type = classify_multiset(result.diagonal, eps)
        checks["type"] = direct.name
        checks["claimed_type"] = claimed_type.name
        if direct is not claimed_type:
            failures.append(f"orbit type of input is {direct.name}, "
                            f"diagonal claims {claimed_type.name}")
    except Exception as exc:  # ambiguity or stabilizer gap: report, do not mask
        failures.append(f"classification check failed: {exc}")
    return VerificationReport(checks, failures)
