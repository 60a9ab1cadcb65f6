"""Identity and structure-law checks behind ``e7orbits verify``.

The covariant identities run in exact rational arithmetic and must hold with
zero tolerance. The structure laws run in floating point on seeded random
inputs.
"""
from __future__ import annotations

import dataclasses
import math
import time
from fractions import Fraction

import numpy as np
from scipy.linalg import expm

from .freudenthal import (FreudenthalVector, SU2Matrix, cross_p, herm_inner_p, phi_su2,
                          s_covariant, symp, t_covariant)
from .jordan import DIM, JordanElement, cross, det, jordan_mul
from .lie import certify, e7_matrices
from .octonion import Octonion, oct_mul, oct_norm
from .patterns import DEFAULT_SYMBOLS

FLOAT_TOL = 1e-10


@dataclasses.dataclass
class CheckResult:
    name: str
    ok: bool
    residual: float = 0.0
    detail: str = ""
    seconds: float = 0.0


def _nf(*v):
    return FreudenthalVector.normal_form(*v)


def covariant_identities(symbols: dict | None = None):
    """``(name, computed, expected)`` triples for the diagonal covariant laws."""
    sym = dict(DEFAULT_SYMBOLS)
    if symbols:
        sym.update({k: Fraction(v) for k, v in symbols.items()})
    r, s, t = sym["r"], sym["s"], sym["t"]
    h, m = Fraction(3, 2), Fraction(-1, 2)
    T, S = t_covariant, s_covariant
    return [
        ("T(1,1,1;0) = 3/2 (0,0,0;1)", lambda: T(_nf(1, 1, 1, 0)), _nf(0, 0, 0, h)),
        ("T(1,1,1;r) = 3/2 (r,r,r;1)", lambda: T(_nf(1, 1, 1, r)), _nf(h * r, h * r, h * r, h)),
        ("T(1,r,r;1) = 3/2 (r^2,r,r;r^2)", lambda: T(_nf(1, r, r, 1)),
         _nf(h * r * r, h * r, h * r, h * r * r)),
        ("S(1,0,0;r) = -1/2 (r^2,0,0;r)", lambda: S(_nf(1, 0, 0, r)), _nf(m * r * r, 0, 0, m * r)),
        ("T(1,1,r;0) = 3/2 (0,0,0;r)", lambda: T(_nf(1, 1, r, 0)), _nf(0, 0, 0, h * r)),
        ("T(1,1,r;s) = 3/2 (rs,rs,s;r)", lambda: T(_nf(1, 1, r, s)),
         _nf(h * r * s, h * r * s, h * s, h * r)),
        ("T(1,r,s;0) = 3/2 (0,0,0;rs)", lambda: T(_nf(1, r, s, 0)), _nf(0, 0, 0, h * r * s)),
        ("T(1,r,s;t) = 3/2 (rst,st,rt;rs)", lambda: T(_nf(1, r, s, t)),
         _nf(h * r * s * t, h * s * t, h * r * t, h * r * s)),
    ]


def run_identities(symbols: dict | None = None) -> list[CheckResult]:
    out = []
    for name, compute, expected in covariant_identities(symbols):
        t0 = time.perf_counter()
        got = compute()
        ok = got.is_exact and got == expected
        detail = "" if ok else f"got {got!r}"
        out.append(CheckResult(name, ok, 0.0 if ok else math.nan, detail,
                               time.perf_counter() - t0))
    return out


# --- floating-point structure laws --------------------------------------------------

def _rand_c(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def _rand_oct(rng):
    return Octonion(_rand_c(rng, 8))


def _rand_j(rng):
    return JordanElement(_rand_c(rng, DIM))


def _rand_p(rng):
    return FreudenthalVector(_rand_c(rng, 56))


def _timed(name, fn, tol=FLOAT_TOL) -> CheckResult:
    t0 = time.perf_counter()
    try:
        res = float(fn())
    except Exception as exc:  # a broken law may surface as an exception downstream
        return CheckResult(name, False, math.inf, f"{type(exc).__name__}: {exc}",
                           time.perf_counter() - t0)
    return CheckResult(name, res <= tol, res, "" if res <= tol else f"residual {res:.3e}",
                       time.perf_counter() - t0)


def _max_abs(a):
    return float(np.max(np.abs(np.asarray(a, dtype=complex))))


def check_octonion_laws(rng, n=10):
    def alternative():
        worst = 0.0
        for _ in range(n):
            x, y = _rand_oct(rng), _rand_oct(rng)
            worst = max(worst, _max_abs((x * (x * y)).c - ((x * x) * y).c),
                        _max_abs(((y * x) * x).c - (y * (x * x)).c))
        return worst

    def composition():
        worst = 0.0
        for _ in range(n):
            x, y = _rand_oct(rng), _rand_oct(rng)
            worst = max(worst, abs(complex(oct_norm(oct_mul(x, y)))
                                   - complex(oct_norm(x)) * complex(oct_norm(y))))
        return worst

    return [_timed("octonions are alternative", alternative),
            _timed("octonion norm is multiplicative", composition, 1e-9)]


def check_jordan_laws(rng, n=10):
    def jordan_identity():
        worst = 0.0
        for _ in range(n):
            X, Y = _rand_j(rng), _rand_j(rng)
            XX = X @ X
            lhs = (X @ Y) @ XX
            rhs = X @ (Y @ XX)
            worst = max(worst, _max_abs(lhs.c - rhs.c) / (1 + _max_abs(lhs.c)))
        return worst

    def adjugate():
        worst = 0.0
        for _ in range(n):
            X = _rand_j(rng)
            XX = cross(X, X)
            lhs = cross(XX, XX).c
            rhs = (X * complex(det(X))).c
            worst = max(worst, _max_abs(lhs - rhs) / (1 + _max_abs(rhs)))
        return worst

    def commutative():
        X, Y = _rand_j(rng), _rand_j(rng)
        return _max_abs(jordan_mul(X, Y).c - jordan_mul(Y, X).c)

    return [_timed("Jordan product is commutative", commutative),
            _timed("Jordan identity", jordan_identity),
            _timed("(X x X) x (X x X) = det(X) X", adjugate)]


def check_membership():
    """Points of the E6-orbit model ``{P x P = 0, <P, P> = 1}``."""
    def exact_point():
        P = FreudenthalVector.normal_form(0, 0, 0, 1)
        L = cross_p(P, P)
        zero = (all(v == 0 for v in L.A.c) and all(v == 0 for v in L.B.c) and L.nu == 0
                and all(v == 0 for v in L.phi.to_matrix(exact_mode=True).ravel()))
        return 0.0 if zero and herm_inner_p(P, P) == 1 else math.inf

    def float_point():
        E = JordanElement.E(False)
        P = FreudenthalVector.from_parts(E, E, 1, 1) * (1 / (2 * math.sqrt(2)))
        M = cross_p(P, P).matrix
        return max(_max_abs(M), abs(complex(herm_inner_p(P, P)) - 1))

    return [_timed("(0,0,1,0) x itself = 0, norm 1 (exact)", exact_point, 0.0),
            _timed("(E,E,1,1)/(2 sqrt 2) x itself = 0, norm 1", float_point, 1e-12)]


def su2_display_matrix() -> SU2Matrix:
    h = 1 / math.sqrt(2)
    return SU2Matrix.from_matrix([[h, h], [-h, h]])


def check_su2_displays():
    A = su2_display_matrix()
    h = 1 / math.sqrt(2)

    def image(X):
        P = FreudenthalVector.from_parts(X, JordanElement.zero(False), 1, 0)
        want = FreudenthalVector.from_parts(X, X, 1, 1) * h
        return _max_abs(phi_su2(A, P).c - want.c)

    return [_timed("phi(A)(E,0,1,0) = (E,E,1,1)/sqrt 2",
                   lambda: image(JordanElement.E(False)), 1e-12),
            _timed("phi(A)(E1,0,1,0) = (E1,E1,1,1)/sqrt 2",
                   lambda: image(JordanElement.Ek(1, False)), 1e-12)]


def _group_matrix(seed: int, n_factors: int = 2) -> np.ndarray:
    # built without certification: the certificate is what is being checked
    rng = np.random.default_rng(seed)
    M = np.eye(56, dtype=complex)
    for _ in range(n_factors):
        c = rng.normal(size=133)
        B = np.tensordot(c / np.linalg.norm(c), e7_matrices(), axes=1)
        M = expm(rng.uniform(-math.pi, math.pi) * B) @ M
    return M


def check_e7_laws(rng, n=5, seed=0):
    def skew():
        # P x Q preserves the symplectic form
        worst = 0.0
        for _ in range(n):
            P, Q, R, S = (_rand_p(rng) for _ in range(4))
            L = cross_p(P, Q)
            worst = max(worst, abs(complex(symp(L.apply(R), S)) + complex(symp(R, L.apply(S))))
                        / (1 + abs(complex(symp(L.apply(R), S)))))
        return worst

    def equivariance():
        worst = 0.0
        for k in range(n):
            cert = certify(_group_matrix(seed + k), n_probes=3, seed=seed + k)
            worst = max(worst, cert["cross_equivariance"])
        return worst

    def covariant():
        worst = 0.0
        for k in range(n):
            g = _group_matrix(seed + 100 + k)
            P = _rand_p(rng)
            for cov in (t_covariant, s_covariant):
                lhs = cov(FreudenthalVector(g @ P.c)).c
                rhs = g @ cov(P).c
                worst = max(worst, _max_abs(lhs - rhs) / (1 + _max_abs(rhs)))
        return worst

    def generators():
        # every basis generator commutes with tau-lambda and is skew for < , >
        from .lie import compactness_residuals
        return max(max(compactness_residuals(M)) for M in e7_matrices())

    return [_timed("P x Q preserves {,}", skew, 1e-9),
            _timed("P x Q is E7-equivariant", equivariance, 1e-9),
            _timed("T and S are E7-equivariant", covariant, 1e-9),
            _timed("e7 generators are compact", generators, 1e-10)]


@dataclasses.dataclass
class SuiteReport:
    results: list

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def first_failure(self) -> CheckResult | None:
        return next((r for r in self.results if not r.ok), None)

    def table(self) -> str:
        width = max(len(r.name) for r in self.results)
        lines = []
        for r in self.results:
            mark = "PASS" if r.ok else "FAIL"
            extra = f"  {r.detail}" if r.detail else ""
            lines.append(f"{mark}  {r.name:<{width}}  {r.seconds * 1e3:8.1f} ms{extra}")
        n_ok = sum(r.ok for r in self.results)
        lines.append(f"{n_ok}/{len(self.results)} checks passed")
        return "\n".join(lines)


def run_suite(quick: bool = False, seed: int = 0, symbols: dict | None = None) -> SuiteReport:
    """Exact identities; unless ``quick``, also every structure law."""
    results = run_identities(symbols)
    if not quick:
        rng = np.random.default_rng(seed)
        results += check_octonion_laws(rng)
        results += check_jordan_laws(rng)
        results += check_membership()
        results += check_su2_displays()
        results += check_e7_laws(rng, seed=seed)
    return SuiteReport(results)
