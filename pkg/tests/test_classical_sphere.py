from fractions import Fraction

import pytest

from greensphere.classical_sphere import (HALF, PicardClass, SBasis, SElement, attaching_map, g, mu,
                                          one, picard_class, rho, s_group, s_multiply, xi)
from greensphere.exceptions import (InvalidValueException, UnspecifiedProductException,
                                    VerificationFailure)


@pytest.mark.parametrize('n, eps, free, torsion', [
    (0, 0, 1, (1,)),
    (-1, 0, 1, ()),
    (3, 0, 0, (3,)),
    (7, 0, 0, (4,)),
    (3, HALF, 0, (3,)),
    (0, HALF, 1, ()),
])
def test_s_group(n, eps, free, torsion):
    assert s_group(n, eps).invariants == (free, torsion)


def test_s_group_names():
    assert s_group(3).basis_names == ('ξ_0',)
    assert s_group(0).basis_names == ('1', 'μ₀ρ_0')


def test_bad_twist():
    with pytest.raises(InvalidValueException):
        s_group(0, Fraction(1, 4))


def test_mu0_cubed_is_four_xi0():
    assert s_multiply(mu(0), s_multiply(mu(0), mu(0))) == xi(0).scale(4)


def test_g_squared():
    assert s_multiply(g(), g()) == one().scale(4)


def test_carriers_annihilate_each_other():
    assert s_multiply(rho(0), xi(0)).is_zero()


def test_product_into_pi0_t_is_unspecified():
    with pytest.raises(UnspecifiedProductException):
        s_multiply(mu(HALF), xi(-1))


def test_coefficients_reduce_mod_the_order():
    assert rho(1).scale(16).is_zero()
    assert not rho(1).scale(8).is_zero()


def test_ascii_names():
    assert rho(1).scale(8).ascii == '8*rho[1]'
    assert one().ascii == '1'
    assert SElement.of(SBasis('mu0rho', HALF)).ascii == 'mu[0]*rho[1/2]'
    assert SElement.zero(2).ascii == '0'


def test_adding_different_groups_fails():
    with pytest.raises(InvalidValueException):
        rho(0) + mu(0)


@pytest.mark.parametrize('w, expected', [(1, PicardClass.S), (3, PicardClass.T), (5, PicardClass.T),
                                         (7, PicardClass.S), (-1, PicardClass.S)])
def test_picard_class(w, expected):
    assert picard_class(w) == expected


def test_picard_class_of_even_w():
    with pytest.raises(InvalidValueException):
        picard_class(2)


def test_picard_product():
    assert PicardClass.T * PicardClass.T == PicardClass.S
    assert PicardClass.T.twist == HALF


@pytest.mark.parametrize('n', range(-6, 7))
@pytest.mark.parametrize('side', ['first', 'second'])
def test_attaching_maps_are_two_torsion(n, side):
    amap = attaching_map(n, side)
    if n == 0:
        assert amap.is_zero()
    else:
        assert amap.element.scale(2).is_zero()


def test_attaching_map_second_side_low_cells():
    amap = attaching_map(1, 'second')
    assert amap.unit
    assert amap.element == mu(0)
    assert attaching_map(2, 'second').element == rho(HALF).scale(4)


def test_attaching_map_unknown_side():
    with pytest.raises(InvalidValueException):
        attaching_map(1, 'third')


def test_verification_failure_carries_message():
    ex = VerificationFailure(message='x')
    assert 'x' in str(ex)
