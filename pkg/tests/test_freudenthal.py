from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from e7orbits.freudenthal import (GH, PDIM, FreudenthalVector, SU2Matrix, cross_p, herm_inner_p,
                                  lambda_map, phi_su2, s_covariant, symp, t_covariant, tau_lambda)
from e7orbits.jordan import JordanElement
from e7orbits.lie import random_group_element
from e7orbits.scalars import QQi


def rand_p(rng):
    return FreudenthalVector(rng.normal(size=PDIM) + 1j * rng.normal(size=PDIM))


def nf(*v):
    return FreudenthalVector.normal_form(*v)


def test_normal_form_layout():
    P = nf(1, 2, 3, 5)
    assert P.X == JordanElement.diag(1, 2, 3)
    assert P.Y == JordanElement.zero()
    assert P.xi == 5 and P.eta == 0
    assert P.diag_entries() == [1, 2, 3, 5] or list(P.diag_entries()) == [1, 2, 3, 5]


def test_lambda_squares_to_minus_one(rng):
    P = rand_p(rng)
    assert np.allclose(lambda_map(lambda_map(P)).c, -P.c)
    assert np.allclose(tau_lambda(tau_lambda(P)).c, -P.c)


def test_symplectic_form_is_antisymmetric(rng):
    P, Q = rand_p(rng), rand_p(rng)
    assert np.isclose(complex(symp(P, Q)), -complex(symp(Q, P)))
    # {P, Q} = -<tau lambda P, Q>
    assert np.isclose(complex(symp(P, Q)), -complex(herm_inner_p(tau_lambda(P), Q)))


def test_cross_is_symmetric_and_skew_for_symplectic_form(rng):
    P, Q, R, S = (rand_p(rng) for _ in range(4))
    L, L2 = cross_p(P, Q), cross_p(Q, P)
    assert np.allclose(L.matrix, L2.matrix)
    lhs = complex(symp(L.apply(R), S)) + complex(symp(R, L.apply(S)))
    assert abs(lhs) < 1e-9 * (1 + abs(complex(symp(L.apply(R), S))))


def test_matrix_matches_apply(rng):
    L = cross_p(rand_p(rng), rand_p(rng))
    R = rand_p(rng)
    assert np.allclose(L.matrix @ R.c, L.apply(R).c)


def test_cross_of_xi_unit_is_pure_nu():
    P = nf(0, 0, 0, 1)
    L = cross_p(P, P)
    assert L.nu == 0 and all(v == 0 for v in L.A.c) and all(v == 0 for v in L.B.c)
    # (0,0,0;1) x (0,0,0;1) = 0, so T vanishes
    assert t_covariant(P) == FreudenthalVector.zero()


def test_covariants_are_equivariant(rng):
    g = random_group_element(7, n_factors=2)
    P = rand_p(rng)
    for cov in (t_covariant, s_covariant):
        assert np.allclose(cov(g.apply(P)).c, g.matrix @ cov(P).c, atol=1e-9)


pos = st.fractions(min_value=0, max_value=6, max_denominator=5)


@given(pos, pos, pos, pos)
def test_diagonal_t_law(r1, r2, r3, r):
    """T(r1,r2,r3;r) = 3/2 (r2 r3 r, r1 r3 r, r1 r2 r; r1 r2 r3), exactly."""
    h = Fraction(3, 2)
    got = t_covariant(nf(r1, r2, r3, r))
    assert got == nf(h * r2 * r3 * r, h * r1 * r3 * r, h * r1 * r2 * r, h * r1 * r2 * r3)


def test_su2_is_a_homomorphism_commuting_with_e7(rng):
    a = SU2Matrix(complex(np.cos(0.4)) * np.exp(0.3j), complex(np.sin(0.4)) * np.exp(-1.1j))
    b = SU2Matrix(complex(np.cos(1.2)), complex(0, np.sin(1.2)))
    P = rand_p(rng)
    assert np.allclose(phi_su2(a @ b, P).c, phi_su2(a, phi_su2(b, P)).c)
    g = random_group_element(3, n_factors=2)
    assert np.allclose(g.matrix @ phi_su2(a, P).c, phi_su2(a, g.apply(P)).c)
    # unitary for < , >
    assert np.isclose(complex(herm_inner_p(phi_su2(a, P), phi_su2(a, P))),
                      complex(herm_inner_p(P, P)))


def test_su2_rejects_non_unitary():
    with pytest.raises(ValueError):
        SU2Matrix(QQi(1), QQi(1))
    with pytest.raises(ValueError):
        SU2Matrix.from_matrix([[1, 1], [1, 1]])


def test_su2_display():
    h = 1 / np.sqrt(2)
    A = SU2Matrix.from_matrix([[h, h], [-h, h]])
    E = JordanElement.E(False)
    P = FreudenthalVector.from_parts(E, JordanElement.zero(False), 1, 0)
    want = FreudenthalVector.from_parts(E, E, 1, 1) * h
    assert np.abs(phi_su2(A, P).c - want.c).max() < 1e-12


def test_e6_orbit_model_points():
    P = nf(0, 0, 0, 1)
    L = cross_p(P, P)
    assert herm_inner_p(P, P) == 1 and L.nu == 0
    E = JordanElement.E(False)
    Q = FreudenthalVector.from_parts(E, E, 1, 1) * (1 / (2 * np.sqrt(2)))
    assert np.abs(cross_p(Q, Q).matrix).max() < 1e-12
    assert abs(complex(herm_inner_p(Q, Q)) - 1) < 1e-12


def test_hermitian_weights():
    assert GH.shape == (PDIM,)
    P = FreudenthalVector.basis(10, exact_mode=True)
    assert herm_inner_p(P, P) == 2
