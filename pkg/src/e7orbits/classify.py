"""Orbit-type classification on the Freudenthal space.

Two independent routes: the quartic whose roots are the squared normal-form
entries (built from four E7 invariants), and the dimension of the stabilizer
subalgebra. The stabilizer route decides when they disagree.
"""
from __future__ import annotations

import dataclasses
import itertools
import math
import warnings
from collections import Counter
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .freudenthal import GHQ, GH, PDIM, FreudenthalVector, cross_p, herm_inner_p, t_covariant
from .lie import StabilizerUncertain, stabilizer
from .patterns import OrbitType
from .scalars import QQi, exact

DEFAULT_EPS = 1e-6
ROOT_TOL = 1e-6
# relative coefficient mismatch allowed when merging nearby roots into a cluster;
# polished clusters leave ~2e-16 of rounding, a genuine split of relative size d
# costs ~c d^2 with c between 1e-3 and 10
SNAP_TOL = 1e-14
# fallback when rounding has pushed roots off the real axis and no cluster fits SNAP_TOL
LOOSE_SNAP_TOL = 1e-9
CALIBRATION_TOL = 1e-8


class AmbiguousClassification(ValueError):
    """The pattern changes within one decade of ``eps``."""

    def __init__(self, candidates, margin, multiset=None, stab_dim=None):
        self.candidates = tuple(candidates)
        self.margin = margin
        self.multiset = multiset
        self.stab_dim = stab_dim
        names = " or ".join(c.name for c in self.candidates)
        super().__init__(f"ambiguous orbit type: {names} (margin {margin:.2f} decades)")


class CalibrationError(RuntimeError):
    pass


class InconsistentInvariants(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class DiagonalForm:
    """Normal-form entries ``(r1, r2, r3; r)`` as a sorted multiset.

    Entries are stored sorted descending at their original scale;
    :meth:`normalized` rescales so the largest entry is 1.
    """

    entries: tuple
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        vals = tuple(self.entries)
        if len(vals) != 4:
            raise ValueError("a diagonal form has four entries")
        if any(v < 0 for v in vals):
            raise ValueError(f"diagonal entries must be nonnegative: {vals}")
        object.__setattr__(self, "entries", tuple(sorted(vals, reverse=True)))

    @property
    def scale(self):
        return self.entries[0]

    def normalized(self) -> "DiagonalForm":
        m = self.scale
        if m == 0:
            return self
        return DiagonalForm(tuple(v / m for v in self.entries), self.eps)

    def as_floats(self) -> np.ndarray:
        return np.array([float(v) for v in self.entries])

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        e = [f"{float(v):.6g}" for v in self.entries]
        return f"({e[0]}, {e[1]}, {e[2]}; {e[3]})"


# --- pattern rules --------------------------------------------------------------------

def _clusters(vals: np.ndarray, eps: float):
    """Zero count and sorted nonzero multiplicities at relative tolerance ``eps``."""
    nz = [v for v in vals if v > eps]
    zeros = len(vals) - len(nz)
    mult = []
    prev = None
    for v in sorted(nz):
        if prev is not None and v - prev <= eps:
            mult[-1] += 1
        else:
            mult.append(1)
        prev = v
    return zeros, tuple(sorted(mult, reverse=True))


def _pattern_type(zeros: int, mult: tuple) -> OrbitType:
    if zeros == 4:
        return OrbitType.E7
    if zeros == 3 or mult == (4,):
        return OrbitType.E6
    if mult == (3, 1) or (zeros == 1 and mult == (3,)):
        return OrbitType.F4
    if zeros == 2:
        return OrbitType.SPIN11 if mult == (2,) else OrbitType.SPIN10
    # two equal nonzero pairs sit on the same orbit type as a zero pair plus two
    # distinct values (both have a 45-dimensional stabilizer)
    if mult == (2, 2):
        return OrbitType.SPIN10
    if 2 in mult:
        return OrbitType.SPIN9
    return OrbitType.SPIN8


def _decision_margin(vals: np.ndarray, eps: float) -> float:
    """Distance in decades from ``eps`` to the nearest gap or small entry."""
    s = np.sort(vals)
    q = np.concatenate([s[:1], np.diff(s)])
    q = q[q > 0]
    if q.size == 0:
        return math.inf
    return float(np.min(np.abs(np.log10(q / eps))))


def _normalized_floats(m) -> np.ndarray:
    vals = np.array([float(v) for v in m], dtype=float)
    top = vals.max() if vals.size else 0.0
    return vals / top if top > 0 else vals


def classify_multiset(m, eps: float = DEFAULT_EPS) -> OrbitType:
    """Orbit type of the normal form ``m`` (a :class:`DiagonalForm` or four numbers).

    Raises :class:`AmbiguousClassification` when a tenfold change of ``eps``
    in either direction would change the answer.
    """
    vals = _normalized_floats(m)
    if np.any(vals < -eps):
        raise ValueError("diagonal entries must be nonnegative")
    vals = np.abs(vals)
    lo = _pattern_type(*_clusters(vals, eps / 10))
    hi = _pattern_type(*_clusters(vals, eps * 10))
    if lo is not hi:
        raise AmbiguousClassification((lo, hi), _decision_margin(vals, eps), multiset=m)
    return lo


# --- invariants -----------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class Invariants:
    I1: object
    I2: object
    I3: object
    I4: object

    def as_tuple(self):
        return (self.I1, self.I2, self.I3, self.I4)


def _exact_action_matrix(L):
    cols = [L.apply(FreudenthalVector.basis(j, exact_mode=True)).c for j in range(PDIM)]
    return np.array(cols, dtype=object).T


def invariants_of(P: FreudenthalVector) -> Invariants:
    """``<P,P>``, HS norm of ``P x P``, ``<T,T>`` and ``<T,P>``.

    Exact inputs give exact values (the HS term is assembled column by column).
    """
    T = t_covariant(P)
    L = cross_p(P, P)
    if P.is_exact:
        M = _exact_action_matrix(L)
        I2 = Fraction(0)
        for i, j in zip(*np.nonzero(M != 0)):
            I2 += GHQ[i] / GHQ[j] * exact(M[i, j]).abs2()
        I1 = exact(herm_inner_p(P, P)).re
        I3 = exact(herm_inner_p(T, T)).re
        return Invariants(I1, I2, I3, exact(herm_inner_p(T, P)))
    M = L.matrix
    I2 = float(np.sum(GH[:, None] / GH[None, :] * np.abs(M) ** 2))
    return Invariants(float(herm_inner_p(P, P).real), I2,
                      float(herm_inner_p(T, T).real), complex(herm_inner_p(T, P)))


def _elementary(t) -> list:
    return [sum(math.prod(c) for c in itertools.combinations(t, k)) for k in range(1, 5)]


@dataclasses.dataclass(frozen=True)
class Calibration:
    k1: float
    k2: float
    residual: float
    exact_k1: Fraction | None
    exact_k2: Fraction | None


def _rationalize(x: float, tol: float = 1e-9) -> Fraction | None:
    q = Fraction(x).limit_denominator(1000)
    return q if abs(float(q) - x) <= tol * max(1.0, abs(x)) else None


@lru_cache(maxsize=None)
def calibrate_hs(n_fit: int = 60, n_check: int = 20, seed: int = 0) -> Calibration:
    """Fit ``I2 = k1 e1^2 + k2 e2`` on random normal forms and validate on held-out ones."""
    rng = np.random.default_rng(seed)

    def sample(n):
        rows, ys = [], []
        for _ in range(n):
            r = rng.uniform(0, 3, 4)
            e1, e2, _, _ = _elementary(r ** 2)
            P = FreudenthalVector.normal_form(*r, exact_mode=False)
            rows.append([e1 * e1, e2])
            ys.append(invariants_of(P).I2)
        return np.array(rows), np.array(ys)

    A, y = sample(n_fit)
    if np.linalg.matrix_rank(A) < 2:
        raise CalibrationError("singular calibration design")
    k, *_ = np.linalg.lstsq(A, y, rcond=None)
    A2, y2 = sample(n_check)
    resid = float(np.max(np.abs(A2 @ k - y2) / np.maximum(np.abs(y2), 1e-300)))
    if resid > CALIBRATION_TOL:
        raise CalibrationError(f"Hilbert-Schmidt ansatz broken: held-out residual {resid:.2e}")
    if abs(k[1]) < 1e-6:
        raise CalibrationError("k2 vanishes; e2 cannot be extracted")
    return Calibration(float(k[0]), float(k[1]), resid, _rationalize(k[0]), _rationalize(k[1]))


def symmetric_functions(inv: Invariants, cal: Calibration | None = None) -> list:
    """``e1..e4`` of the squared normal-form entries."""
    cal = cal or calibrate_hs()
    if isinstance(inv.I2, Fraction) and cal.exact_k1 is not None and cal.exact_k2 is not None:
        e1 = inv.I1
        e2 = (inv.I2 - cal.exact_k1 * e1 * e1) / cal.exact_k2
        e3 = Fraction(4, 9) * inv.I3
        e4 = exact(inv.I4).abs2() / 36
        return [e1, e2, e3, e4]
    I1, I2, I3 = float(inv.I1), float(inv.I2), float(inv.I3)
    sub = cal.k1 * I1 * I1
    e2 = (I2 - sub) / cal.k2
    if sub != 0 and abs(I2 - sub) < 1e-6 * max(abs(I2), abs(sub)):
        warnings.warn("e2 extraction cancelled more than 6 digits", RuntimeWarning, stacklevel=2)
    return [I1, e2, 4.0 / 9.0 * I3, abs(complex(inv.I4)) ** 2 / 36.0]


def _polish_clusters(vals: list, sizes: list, target: np.ndarray, weights: np.ndarray,
                     frozen: int | None = None, steps: int = 6) -> list:
    """Gauss-Newton on the cluster values so the expanded coefficients match ``target``.

    Near-coincident roots come out of ``np.roots`` far less accurately than the
    coefficients they came from; fitting the shared values directly recovers that.
    """
    vals = list(vals)
    free = [g for g in range(len(vals)) if g != frozen]
    if not free:
        return vals
    for _ in range(steps):
        t = [v for v, n in zip(vals, sizes) for _ in range(n)]
        r = (np.array(_elementary(t)) - target) / weights
        J = np.zeros((4, len(free)))
        for col, g in enumerate(free):
            start = sum(sizes[:g])
            for i in range(start, start + sizes[g]):
                rest = t[:i] + t[i + 1:]
                # d e_k / d t_i = e_{k-1} of the other three roots
                J[:, col] += np.array([1.0] + _elementary(rest)[:3]) / weights
        step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        for col, g in enumerate(free):
            vals[g] += float(step[col])
    return vals


def _snap_roots(roots: np.ndarray, e: list, tol: float = SNAP_TOL):
    """Group sorted roots into clusters that reproduce the coefficients ``e``.

    Among clusterings within ``tol`` the one with the fewest groups wins.
    """
    scale = max(abs(float(e[0])), 1e-300)
    target = np.array([float(v) for v in e])
    weights = scale ** np.arange(1, 5)
    best = None
    for cuts in itertools.product((False, True), repeat=3):
        groups, cur = [], [roots[0]]
        for cut, v in zip(cuts, roots[1:]):
            if cut:
                groups.append(cur)
                cur = [v]
            else:
                cur.append(v)
        groups.append(cur)
        sizes = [len(g) for g in groups]
        means = [float(np.mean(g)) for g in groups]
        for zero_snap in (False, True):
            vals = list(means)
            if zero_snap:
                vals[0] = 0.0
            vals = _polish_clusters(vals, sizes, target, weights, 0 if zero_snap else None)
            t = [v for v, n in zip(vals, sizes) for _ in range(n)]
            resid = float(np.max(np.abs(np.array(_elementary(t)) - target) / weights))
            key = (resid > tol, len(groups) if resid <= tol else resid, not zero_snap, resid)
            if best is None or key < best[0]:
                best = (key, t, sizes)
    if best is None or best[0][0]:
        return None
    return best


def _exact_sqrt(q: Fraction):
    if q == 0:
        return Fraction(0)
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return math.sqrt(q)


def _exact_roots(t: list, e: list):
    """Rational roots confirmed by expanding the product exactly, else ``None``."""
    qs = [Fraction(v).limit_denominator(10 ** 6) for v in t]
    if any(q < 0 for q in qs):
        return None
    if _elementary(qs) != [Fraction(v) for v in e]:
        return None
    return qs


def quartic_roots(e: list) -> np.ndarray:
    """Roots of ``t^4 - e1 t^3 + e2 t^2 - e3 t + e4`` sorted ascending (real parts)."""
    coeffs = [1.0, -float(e[0]), float(e[1]), -float(e[2]), float(e[3])]
    roots = np.roots(coeffs) if any(coeffs[1:]) else np.zeros(4, dtype=complex)
    if roots.size < 4:
        roots = np.concatenate([roots, np.zeros(4 - roots.size, dtype=complex)])
    return roots[np.argsort(roots.real)]


def recover_multiset(P: FreudenthalVector, eps: float = DEFAULT_EPS,
                     cal: Calibration | None = None) -> DiagonalForm:
    """Normal-form multiset from the invariants of ``P``."""
    cal = cal or calibrate_hs()
    e = symmetric_functions(invariants_of(P), cal)
    if all(v == 0 for v in e):
        zero = Fraction(0) if P.is_exact else 0.0
        return DiagonalForm((zero,) * 4, eps)
    roots = quartic_roots(e)
    scale = max(abs(float(e[0])), 1e-300)
    # repeated roots split into complex pairs under rounding; clustering repairs that,
    # so the axis test only applies when no clustering reproduces the coefficients
    snapped = _snap_roots(roots.real, e)
    off_axis = np.max(np.abs(roots.imag)) > ROOT_TOL * scale or roots.real.min() < -ROOT_TOL * scale
    if snapped is None and off_axis:
        # the raw roots carry nothing beyond the best cluster fit here
        snapped = _snap_roots(roots.real, e, LOOSE_SNAP_TOL)
        if snapped is None:
            raise InconsistentInvariants(f"quartic has roots off the nonnegative axis: {roots}")
    if snapped is not None:
        t = snapped[1]
    else:
        t = np.clip(roots.real, 0.0, None)
    if P.is_exact and snapped is not None:
        qs = _exact_roots(t, e)
        if qs is not None:
            return DiagonalForm(tuple(_exact_sqrt(q) for q in qs), eps)
    return DiagonalForm(tuple(math.sqrt(max(v, 0.0)) for v in t), eps)


# --- end-to-end -----------------------------------------------------------------------

@dataclasses.dataclass
class ClassificationReport:
    type: OrbitType
    multiset: DiagonalForm | None
    stab_dim: int
    margins: dict
    method_agreement: bool
    invariant_type: OrbitType | None = None
    diagnostic: str = ""

    def to_obj(self) -> dict:
        ms = None if self.multiset is None else [float(v) for v in self.multiset]
        return {"type": self.type.name, "multiset": ms, "stab_dim": self.stab_dim,
                "margins": self.margins, "method_agreement": self.method_agreement}


def classify_report(P: FreudenthalVector, eps: float = DEFAULT_EPS) -> ClassificationReport:
    """Run both routes. Raises :class:`AmbiguousClassification` near a pattern boundary
    and :class:`StabilizerUncertain` when the stabilizer rank has no clear gap."""
    st = stabilizer(P)
    if st.uncertain:
        raise StabilizerUncertain(
            f"stabilizer rank {st.rank} has gap ratio {st.gap_ratio:.3g}", st)
    stab_type = OrbitType.from_dimension(st.dim)
    margins = {"stab_gap_ratio": float(st.gap_ratio)}
    diagnostic = ""
    ms, inv_type = None, None
    try:
        ms = recover_multiset(P, eps)
        margins["eps_decades"] = _decision_margin(_normalized_floats(ms), eps)
        inv_type = classify_multiset(ms, eps)
    except AmbiguousClassification as exc:
        exc.stab_dim = st.dim
        raise
    except (CalibrationError, InconsistentInvariants) as exc:
        diagnostic = f"invariant route unavailable: {exc}"
    agree = inv_type is stab_type
    if inv_type is not None and not agree:
        diagnostic = (f"invariant route gives {inv_type.name}, stabilizer dimension "
                      f"{st.dim} gives {stab_type.name}")
    return ClassificationReport(stab_type, ms, st.dim, margins, agree, inv_type, diagnostic)


def classify(P: FreudenthalVector, eps: float = DEFAULT_EPS) -> OrbitType:
    return classify_report(P, eps).type


# --- Jordan-algebra sub-classifiers ------------------------------------------------------

def _rel(vals, eps):
    v = np.array([float(x) for x in vals])
    top = np.abs(v).max()
    return (v / top if top > 0 else v), top


def classify_jordan(m, eps: float = DEFAULT_EPS) -> str:
    """F4 orbit type of a real diagonal ``diag(xi1, xi2, xi3)`` in the real Jordan algebra."""
    v, _ = _rel(m, eps)
    distinct = len(set(_groups(v, eps)))
    return {1: "F4/F4", 2: "F4/Spin(9)", 3: "F4/Spin(8)"}[distinct]


def classify_jordanC(m, eps: float = DEFAULT_EPS) -> str:
    """E6 orbit type of a nonnegative diagonal ``diag(r1, r2, r3)`` in the complex Jordan algebra."""
    v, top = _rel(m, eps)
    if np.any(v < -eps):
        raise ValueError("entries must be nonnegative")
    if top == 0:
        return "E6/E6"
    zeros = int(np.sum(np.abs(v) <= eps))
    mult = sorted(Counter(_groups(v[np.abs(v) > eps], eps)).values(), reverse=True)
    if zeros == 2:
        return "E6/Spin(10)"
    if mult == [3]:
        return "E6/F4"
    if 2 in mult:
        # a repeated nonzero entry, the third one may vanish
        return "E6/Spin(9)"
    return "E6/Spin(8)"


def _groups(v, eps) -> list:
    """Cluster label for each entry (entries within ``eps`` share a label)."""
    order = np.argsort(v)
    labels = [0] * len(v)
    g, prev = -1, None
    for i in order:
        if prev is None or v[i] - prev > eps:
            g += 1
        labels[i] = g
        prev = v[i]
    return labels
