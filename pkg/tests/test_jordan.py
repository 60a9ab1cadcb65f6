import numpy as np
import pytest
from hypothesis import given, strategies as st

from e7orbits import faults
from e7orbits.jordan import (DIM, G, JordanElement, JordanOperator, cross, cross_matrix, det,
                             herm_inner, inner, jordan_mul, mult_matrix, trace, vee)
from e7orbits.scalars import QQi

from test_octonion import ref_mul


def oconj(x):
    return np.concatenate([x[:1], -x[1:]])


def scalar_oct(d):
    v = np.zeros(8, dtype=complex)
    v[0] = d
    return v


def as_matrix(c):
    """3x3 matrix of octonions [[d1, x3, x2*], [x3*, d2, x1], [x2, x1*, d3]]."""
    d = c[:3]
    x1, x2, x3 = c[3:11], c[11:19], c[19:27]
    return [[scalar_oct(d[0]), x3, oconj(x2)],
            [oconj(x3), scalar_oct(d[1]), x1],
            [x2, oconj(x1), scalar_oct(d[2])]]


def mat_mul(A, B):
    return [[sum(ref_mul(A[i][k], B[k][j]) for k in range(3)) for j in range(3)] for i in range(3)]


def from_matrix(M):
    for i in range(3):
        assert np.allclose(M[i][i][1:], 0, atol=1e-9), "diagonal must be scalar"
    assert np.allclose(M[1][0], oconj(M[0][1]), atol=1e-9)
    return np.concatenate([[M[0][0][0], M[1][1][0], M[2][2][0]], M[1][2], M[2][0], M[0][1]])


def rand_j(rng):
    return JordanElement(rng.normal(size=DIM) + 1j * rng.normal(size=DIM))


def test_product_matches_octonion_matrices(rng):
    for _ in range(10):
        X, Y = rand_j(rng), rand_j(rng)
        A, B = as_matrix(X.c), as_matrix(Y.c)
        AB, BA = mat_mul(A, B), mat_mul(B, A)
        sym = [[(AB[i][j] + BA[i][j]) / 2 for j in range(3)] for i in range(3)]
        assert np.allclose(jordan_mul(X, Y).c, from_matrix(sym), atol=1e-10)


def test_det_matches_closed_form(rng):
    for _ in range(10):
        X = rand_j(rng)
        d, x1, x2, x3 = X.c[:3], X.c[3:11], X.c[11:19], X.c[19:27]
        n = lambda v: ref_mul(v, oconj(v))[0]
        expected = (d[0] * d[1] * d[2] + 2 * ref_mul(ref_mul(x1, x2), x3)[0]
                    - d[0] * n(x1) - d[1] * n(x2) - d[2] * n(x3))
        assert np.isclose(complex(det(X)), expected, rtol=1e-10)


def test_unit_and_trace():
    E = JordanElement.E()
    X = JordanElement.exact([QQi(k, 1) for k in range(DIM)])
    assert E @ X == X
    assert trace(E) == 3
    assert inner(E, X) == trace(X)
    assert det(E) == 1
    assert cross(E, E) == E


def test_form_weights():
    # off-diagonal coordinates count twice: (E_ij-type, same) = 2
    assert list(G[:3]) == [1, 1, 1] and set(G[3:]) == {2}
    X = JordanElement.basis(5, exact_mode=True)
    assert inner(X, X) == 2


def test_cross_definition(rng):
    X, Y = rand_j(rng), rand_j(rng)
    E = JordanElement.E(False)
    tx, ty = complex(trace(X)), complex(trace(Y))
    expected = ((X @ Y) * 2 - Y * tx - X * ty + E * (tx * ty - complex(inner(X, Y)))) * 0.5
    assert np.allclose(cross(X, Y).c, expected.c)
    assert np.allclose(cross_matrix(X) @ Y.c, cross(X, Y).c)
    assert np.allclose(mult_matrix(X) @ Y.c, (X @ Y).c)


def test_hermitian_inner_is_positive(rng):
    X = rand_j(rng)
    v = complex(herm_inner(X, X))
    assert v.real > 0 and abs(v.imag) < 1e-12


def test_cross_knob_scales_cross_only():
    X = JordanElement.diag(1, 2, 3)
    before = cross(X, X)
    with faults.inject("jordan_cross", 2):
        assert cross(X, X) == before * 2
    assert cross(X, X) == before


def test_operator_transpose_is_adjoint(rng):
    A, B = rand_j(rng), rand_j(rng)
    op = JordanOperator.mult(A) + JordanOperator.commutator(A, B) * 0.5
    X, Y = rand_j(rng), rand_j(rng)
    lhs = complex(inner(op.apply(X), Y))
    rhs = complex(inner(X, op.transpose().apply(Y)))
    assert np.isclose(lhs, rhs)
    assert np.allclose(op.matrix @ X.c, op.apply(X).c)


def test_vee_is_traceless_derivation_part(rng):
    # X v W kills E when (X, W) is absorbed by the 1/3 correction
    X, W = rand_j(rng), rand_j(rng)
    E = JordanElement.E(False)
    out = vee(X, W).apply(E)
    expected = (X @ W) - E * (complex(inner(X, W)) / 3)
    assert np.allclose(out.c, expected.c)


small = st.fractions(min_value=-3, max_value=3, max_denominator=4)
jordans = st.lists(st.tuples(small, small), min_size=DIM, max_size=DIM).map(
    lambda v: JordanElement.exact([QQi(a, b) for a, b in v]))


@given(jordans, jordans)
def test_commutative_and_jordan_identity_exact(X, Y):
    assert X @ Y == Y @ X
    XX = X @ X
    assert (X @ Y) @ XX == X @ (Y @ XX)


@given(jordans)
def test_adjugate_laws_exact(X):
    XX = cross(X, X)
    assert X @ XX == JordanElement.E() * det(X)
    assert cross(XX, XX) == X * det(X)
