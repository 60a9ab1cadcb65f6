import json
from fractions import Fraction

import numpy as np
import pytest

from e7orbits.freudenthal import FreudenthalVector
from e7orbits.lie import build_f4_basis, random_orbit_sample
from e7orbits.serialize import (ParseError, dump_element, element_from_obj, element_to_obj,
                                lie_from_obj, lie_to_obj, load_element)


def test_exact_round_trip(tmp_path):
    P = FreudenthalVector.normal_form(Fraction(1, 3), 0, 2, Fraction(-7, 5))
    path = tmp_path / "p.json"
    dump_element(P, path)
    Q = load_element(path)
    assert Q.is_exact and Q == P
    assert json.loads(path.read_text())["mode"] == "exact"


def test_float_round_trip_is_bit_exact(tmp_path):
    P = random_orbit_sample((1, 2, 3, 5), seed=0)
    path = tmp_path / "p.json"
    dump_element(P, path)
    Q = load_element(path)
    assert not Q.is_exact
    assert np.array_equal(Q.c, P.c)


def test_diag_shorthand():
    P = element_from_obj({"diag": [1, "1/2", 0, 3]})
    assert P.is_exact and P == FreudenthalVector.normal_form(1, Fraction(1, 2), 0, 3)
    Q = element_from_obj({"diag": [1.5, 0, 0, 1]})
    assert not Q.is_exact
    R = element_from_obj({"mode": "float", "diag": [1, 2, 3, 4]})
    assert not R.is_exact


@pytest.mark.parametrize("obj", [
    [], {"diag": [1, 2, 3]}, {"diag": [1, [0, 1], 0, 0]}, {"diag": [1, "x", 0, 0]},
    {"mode": "fuzzy", "diag": [1, 0, 0, 0]}, {"mode": "float"},
    {"mode": "float", "element": {"X": {"d": [0, 0], "x": []}}},
])
def test_malformed_inputs(obj):
    with pytest.raises(ParseError):
        element_from_obj(obj)


def test_file_errors(tmp_path):
    with pytest.raises(ParseError):
        load_element(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        load_element(bad)


def test_element_object_layout():
    obj = element_to_obj(FreudenthalVector.normal_form(1, 0, 0, 0))
    el = obj["element"]
    assert set(el) == {"X", "Y", "xi", "eta"}
    assert len(el["X"]["d"]) == 3 and len(el["X"]["x"]) == 3
    assert all(len(o) == 8 for o in el["X"]["x"])


def test_lie_element_round_trip():
    L = build_f4_basis().elements[3]
    M = lie_from_obj(json.loads(json.dumps(lie_to_obj(L))))
    assert np.allclose(M.matrix, L.matrix, atol=1e-14)
