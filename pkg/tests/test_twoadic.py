from fractions import Fraction

import pytest

from greensphere.exceptions import InvalidValueException, PrecisionExhaustedException
from greensphere.twoadic import (INFINITY, Scalar, check_generator, gamma, j, james_period, pow2,
                                 residue, u, val2)


@pytest.mark.parametrize('n, expected', [(1, 0), (12, 2), (-8, 3), (Fraction(3, 8), -3), (Fraction(4, 3), 2)])
def test_val2(n, expected):
    assert val2(n) == expected


def test_val2_of_zero():
    with pytest.raises(InvalidValueException):
        val2(0)


def test_pow2_infinity_is_zero():
    assert pow2(INFINITY) == 0
    assert pow2(INFINITY - 1) == 0
    assert pow2(3) == 8
    assert pow2(-2) == Fraction(1, 4)


@pytest.mark.parametrize('a, expected', [(0, INFINITY), (1, 3), (-3, 3), (4, 5), (6, 4)])
def test_j(a, expected):
    assert j(a) == expected


def test_residue_of_fraction():
    # 1/3 = 3 mod 8
    assert residue(Fraction(1, 3), 3) == 3
    assert residue(-1, 4) == 15
    with pytest.raises(InvalidValueException):
        residue(Fraction(1, 2), 3)


@pytest.mark.parametrize('k', [3, 5, -3, 11, 13])
def test_generators_accepted(k):
    assert check_generator(k) == k


@pytest.mark.parametrize('k', [1, 7, 9, 4, 2])
def test_non_generators_rejected(k):
    with pytest.raises(InvalidValueException):
        check_generator(k)


def test_scalar_is_two_integral():
    assert Scalar.of(Fraction(2, 3)).residue(3) == residue(Fraction(2, 3), 3)
    with pytest.raises(InvalidValueException):
        Scalar(Fraction(1, 2))


def test_scalar_valuation_within_precision():
    assert Scalar(48).valuation() == 4
    assert Scalar(0).valuation() == INFINITY
    with pytest.raises(PrecisionExhaustedException):
        Scalar(2 ** 40).valuation(32)


def test_u_is_one_on_the_diagonal():
    assert u(0, 5).value == 1
    assert u(3, 3).value == 1


def test_u_known_values():
    # (3^4 - 3^2)/(3^2 - 1) = 9
    assert u(1, 2, 3).value == 9
    # b = 0 gives -1 for every a
    assert u(1, 0, 3).value == -1
    assert u(2, 0, 5).value == -1


@pytest.mark.parametrize('a, b', [(1, 3), (2, 5), (-1, 2), (4, -3)])
def test_u_is_a_unit(a, b):
    assert u(a, b).is_unit()


@pytest.mark.parametrize('n, expected', [(0, 0), (1, 1), (2, 2), (3, 2), (4, 3), (7, 3), (8, 4), (9, 5), (16, 8)])
def test_gamma(n, expected):
    assert gamma(n) == expected


def test_james_period():
    assert james_period(4) == 8
    assert james_period(8) == 16
    with pytest.raises(InvalidValueException):
        gamma(-1)
