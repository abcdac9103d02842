from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from poisson3lie.fields import GF, QQ, FieldError, PrimeField, field_from_descriptor

small_primes = st.sampled_from([2, 3, 5, 7, 101, 65521, (1 << 31) - 1])
fractions = st.fractions(max_denominator=50)


def test_rational_parse_and_format():
    assert QQ.parse("3/4") == Fraction(3, 4)
    assert QQ.parse("-6/8") == Fraction(-3, 4)
    assert QQ.format(QQ.parse("-6/8")) == "-3/4"
    assert QQ.format(QQ.parse("10/5")) == "2"


@pytest.mark.parametrize("text", ["1/0", "0.5", "", "x", "1/", "3/4/5"])
def test_rational_rejects(text):
    with pytest.raises(FieldError):
        QQ.parse(text)


def test_rationals_refuse_floats():
    with pytest.raises(FieldError):
        QQ.scalar(0.5)


@pytest.mark.parametrize("p", [0, 1, 4, 9, 15, -3])
def test_non_prime_rejected(p):
    with pytest.raises(FieldError):
        PrimeField(p)


def test_prime_field_parse_reduces():
    F = GF(5)
    assert F.parse("7") == 2
    assert F.parse("-1") == 4
    assert F.format(-1) == "4"
    with pytest.raises(FieldError):
        F.parse("1/2")


def test_fraction_maps_into_prime_field():
    F = GF(7)
    assert F.scalar(Fraction(1, 2)) == 4
    with pytest.raises(FieldError):
        F.scalar(Fraction(1, 7))


def test_descriptors_round_trip():
    for F in (QQ, GF(3), GF(101)):
        assert field_from_descriptor(F.descriptor()) == F
    assert field_from_descriptor("F5") == GF(5)
    with pytest.raises(FieldError):
        field_from_descriptor({"kind": "R"})


def test_large_prime_uses_object_dtype():
    F = GF((1 << 31) - 1)
    assert F.dtype is object
    a = F.array([F.p - 1, 2])
    assert list(F.matmul(a.reshape(1, 2), a.reshape(2, 1)).ravel()) == [(((F.p - 1) ** 2) + 4) % F.p]


@given(fractions)
def test_rational_format_parse_round_trip(x):
    assert QQ.parse(QQ.format(x)) == x


@given(fractions.filter(lambda x: x != 0))
def test_rational_inverse(x):
    assert QQ.inv(x) * x == 1


@given(small_primes, st.integers(), st.integers())
def test_prime_field_arithmetic_matches_integers(p, a, b):
    F = GF(p)
    x = F.array(np.array([a % p], dtype=object))
    y = F.array(np.array([b % p], dtype=object))
    assert int(F.reduce(x * y)[0]) == (a * b) % p
    assert int(F.reduce(x + y)[0]) == (a + b) % p


@given(small_primes, st.integers(min_value=1))
def test_prime_field_inverse(p, a):
    F = GF(p)
    if a % p == 0:
        with pytest.raises(ZeroDivisionError):
            F.inv(a)
    else:
        assert (F.inv(a) * a) % p == 1


def test_matmul_is_exact_over_rationals():
    a = QQ.array([[Fraction(1, 3), Fraction(1, 6)]])
    b = QQ.array([[3], [6]])
    assert QQ.matmul(a, b)[0, 0] == 2
