from fractions import Fraction

import pytest

from e7orbits.patterns import (REPRESENTATIVES, OrbitType, format_pattern, parse_pattern,
                               representatives)


def test_parse_with_default_symbols():
    assert parse_pattern("(1,1,r;s)") == (1, 1, 2, 3)
    assert parse_pattern("1 r s t") == (1, 2, 3, 5)
    assert parse_pattern("(0, 1/2, -r; 3)") == (0, Fraction(1, 2), -2, 3)


def test_parse_with_custom_symbols():
    assert parse_pattern("(1,r,s;t)", {"r": 7, "s": "1/3", "t": 11}) == \
        (1, 7, Fraction(1, 3), 11)


@pytest.mark.parametrize("bad", ["(1,1,1)", "(1,1,1;1;1)", "(1,1,q;1)", "(1,1,x1;1)", ""])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_pattern(bad)


def test_format_round_trip():
    v = parse_pattern("(1,1/3,r;0)")
    assert format_pattern(v) == "(1, 1/3, 2; 0)"
    assert parse_pattern(format_pattern(v)) == v


def test_orbit_type_lookup():
    assert OrbitType.from_dimension(45) is OrbitType.SPIN10
    assert OrbitType.parse("E7/Spin(11)") is OrbitType.SPIN11
    assert OrbitType.parse("spin9") is OrbitType.SPIN9
    assert OrbitType.SPIN8.quotient == "E7/Spin(8)"
    assert str(OrbitType.F4) == "F4"
    with pytest.raises(KeyError):
        OrbitType.from_dimension(50)
    with pytest.raises(ValueError):
        OrbitType.parse("G2")


def test_dimensions_are_distinct():
    assert len({t.stabilizer_dim for t in OrbitType}) == 7


def test_twelve_representatives():
    reps = representatives()
    assert len(reps) == len(REPRESENTATIVES) == 12
    assert {t for _, _, t in reps} == set(OrbitType)
    assert reps[-1][1] == (1, 2, 3, 5)
