import json

import numpy as np
import pytest

from e7orbits.freudenthal import GH, FreudenthalVector, LieElement
from e7orbits.jordan import JordanElement, JordanOperator
from e7orbits.lie import (CERT_TOL, CertificateError, GroupElement, StabilizerUncertain,
                          build_e6_basis, build_e7_basis, build_f4_basis, certify,
                          combination, compactness_residuals, e7_matrices, exp_element,
                          numerical_rank, random_group_element, stabilizer,
                          stabilizer_dimension, subgroup_label)


@pytest.mark.parametrize("build, rank", [(build_f4_basis, 52), (build_e6_basis, 78),
                                         (build_e7_basis, 133)])
def test_rank_and_gap(build, rank):
    b = build()
    assert b.rank == rank == len(b)
    assert b.gap_ratio >= 10


def test_e7_closes_under_brackets(rng):
    mats = e7_matrices()
    flat = mats.reshape(133, -1)
    for _ in range(10):
        i, j = rng.integers(0, 133, 2)
        C = mats[i] @ mats[j] - mats[j] @ mats[i]
        coef, *_ = np.linalg.lstsq(flat.T, C.ravel(), rcond=None)
        assert np.abs(flat.T @ coef - C.ravel()).max() < 1e-10


def test_generators_are_compact():
    worst = max(max(compactness_residuals(M)) for M in e7_matrices())
    assert worst < 1e-12


def test_numerical_rank_threshold():
    s = np.array([10.0, 5.0, 1e-3, 1e-12, 1e-14])
    r, gap = numerical_rank(s)
    # gap is taken against the relative threshold 1e-8 * s[0]
    assert r == 3 and gap == pytest.approx(1e4)
    r, _ = numerical_rank(np.array([1e-20, 1e-21]), atol=1e-15)
    assert r == 0


def test_basis_json_export():
    obj = json.loads(build_f4_basis().to_json())
    assert obj["rank"] == 52 and len(obj["elements"]) == 52
    assert obj["certificate"]["gap_ratio"] >= 10
    assert "version" in obj


def test_exp_certificate(rng):
    c = rng.normal(size=133)
    g = exp_element(combination(c / np.linalg.norm(c)), 0.7)
    assert g.certified
    assert max(certify(g.matrix, n_probes=5).values()) < CERT_TOL
    inv = g.inverse()
    assert np.allclose(inv.matrix @ g.matrix, np.eye(56), atol=1e-12)


def test_exp_rejects_non_compact():
    M = 1j * e7_matrices()[0]
    B = LieElement(JordanOperator.zero(), JordanElement.zero(False), JordanElement.zero(False),
                   0j, matrix=M)
    with pytest.raises(ValueError):
        exp_element(B, 1.0)


def test_random_group_element_is_deterministic():
    a, b = random_group_element(5), random_group_element(5)
    assert np.array_equal(a.matrix, b.matrix)
    assert a.certified
    P = FreudenthalVector.normal_form(1, 2, 3, 5, exact_mode=False)
    Q = a.apply(P)
    assert np.isclose(np.sum(GH * abs(Q.c) ** 2), np.sum(GH * abs(P.c) ** 2))


def test_subgroup_labels():
    assert subgroup_label(GroupElement.identity()) >= {"E7", "E6", "F4", "Spin(8)", "Spin(11)"}
    # an f4 element fixes E and (0,0,0;1) but moves E1
    f4 = build_f4_basis().elements[0]
    g = exp_element(LieElement(f4.phi, f4.A, f4.B, f4.nu, matrix=f4.matrix), 0.9)
    labels = subgroup_label(g)
    assert {"E6", "F4"} <= labels


@pytest.mark.parametrize("diag, dim", [
    ((0, 0, 0, 0), 133), ((0, 0, 0, 1), 78), ((0, 0, 1, 1), 55), ((0, 0, 1, 2), 45),
    ((0, 1, 1, 1), 52), ((0, 1, 1, 2), 36), ((0, 1, 2, 3), 28), ((1, 1, 1, 1), 78),
    ((1, 1, 1, 2), 52), ((1, 1, 2, 3), 36), ((1, 2, 3, 5), 28),
])
def test_stabilizer_dimensions(diag, dim):
    P = FreudenthalVector.normal_form(*diag, exact_mode=False)
    assert stabilizer_dimension(P) == dim


@pytest.mark.parametrize("a, b", [(1, 2), (1, 3), (2, 5)])
def test_two_equal_pairs_have_a_45_dim_stabilizer(a, b):
    """{a,a,b,b} sits with {a+b, a-b, 0, 0}, not with {1,1,0,0}."""
    P = FreudenthalVector.normal_form(a, a, b, b, exact_mode=False)
    Q = FreudenthalVector.normal_form(a + b, b - a, 0, 0, exact_mode=False)
    assert stabilizer_dimension(P) == stabilizer_dimension(Q) == 45


def test_stabilizer_is_scale_and_orbit_invariant():
    P = FreudenthalVector.normal_form(1, 1, 2, 3, exact_mode=False)
    g = random_group_element(11)
    assert stabilizer(P * 1e-3).dim == stabilizer(g.apply(P) * (2 - 1j)).dim == 36


def test_stabilizer_uncertain_near_a_boundary():
    P = FreudenthalVector.normal_form(1, 1 + 1e-6, 2, 3, exact_mode=False)
    res = stabilizer(P)
    assert res.uncertain
    with pytest.raises(StabilizerUncertain):
        stabilizer_dimension(P)
