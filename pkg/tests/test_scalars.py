from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from e7orbits.scalars import QQi, exact, exact_array, format_scalar, parse_scalar, scale, to_float

q = st.fractions(min_value=-50, max_value=50, max_denominator=20)
qqi = st.tuples(q, q).map(lambda t: QQi(*t))


@given(qqi, qqi, qqi)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a


@given(qqi)
def test_conjugate_and_modulus(a):
    assert a * a.conjugate() == QQi(a.abs2())
    assert complex(a.conjugate()) == complex(a).conjugate()


def test_interop_with_python_numbers():
    z = QQi(1, 2)
    assert z + 1 == QQi(2, 2)
    assert 1 - z == QQi(0, -2)
    assert z * Fraction(1, 2) == QQi(Fraction(1, 2), 1)
    assert 2 / QQi(0, 1) == QQi(0, -2)
    assert hash(QQi(3)) == hash(QQi(3, 0))


def test_immutable():
    z = QQi(1)
    with pytest.raises(AttributeError):
        z.re = Fraction(2)


def test_exact_conversions():
    assert exact("3/4") == QQi(Fraction(3, 4))
    assert exact((1, "1/2")) == QQi(1, Fraction(1, 2))
    assert exact(0.5) == QQi(Fraction(1, 2))
    assert exact(1 + 2j) == QQi(1, 2)


@given(qqi)
def test_format_parse_round_trip(a):
    assert parse_scalar(format_scalar(a), exact_mode=True) == a


def test_float_format_round_trip_is_bit_exact():
    z = complex(0.1, -1 / 3)
    back = parse_scalar(format_scalar(z), exact_mode=False)
    assert back == z


def test_scale_keeps_float_arrays_float():
    arr = np.array([1 + 1j, 2], dtype=complex)
    out = scale(arr, Fraction(1, 2))
    assert out.dtype == complex and np.allclose(out, [0.5 + 0.5j, 1])
    ex = exact_array([1, 2])
    assert scale(ex, QQi(0, 1))[1] == QQi(0, 2)
    assert scale(ex, 0.5).dtype == complex
    assert np.allclose(to_float(ex), [1, 2])


def test_exact_complex_text():
    assert [str(z) for z in (QQi(36), QQi(0, 1), QQi(2, -3), QQi(Fraction(1, 3), 1))] == \
        ["36", "i", "2-3i", "1/3+i"]
