import pytest

from greensphere.exceptions import InvalidValueException
from greensphere.ko_ring import (E2Class, KOElement, d3, divisible_by_rho, e2_class, e2_closed_form,
                                 e2_page, e2_types, e4_page, ko_basis, ko_finite_stunted, ko_group,
                                 ko_multiply, ko_psi, named, psi_minus_one_matrix, reduced_ko0_order,
                                 rho_power)
from greensphere.twoadic import james_period


def test_e2_filtration_zero():
    assert e2_page(0, 0, 0).invariants == (2, ())
    assert e2_page(1, 0, 0).invariants == (1, ())
    assert e2_page(0, 1, 0).is_zero()


def test_e2_positive_filtration_is_f2():
    assert e2_page(1, 1, 1).invariants == (0, (1, 1))
    # mu kills tau^2 h and rho^2
    assert e2_types(1, 3, 1) == ()
    assert e2_types(3, 1, 1) == ()


@pytest.mark.parametrize('s, c', [(s, c) for s in range(-4, 5) for c in range(-4, 5)])
def test_e2_matches_closed_form(s, c):
    for n in range(0, 4):
        assert e2_page(s, c, n).same_group(e2_closed_form(s, c, n))


def test_e2_page_rejects_negative_filtration():
    with pytest.raises(InvalidValueException):
        e2_page(0, 0, -1)


def test_d3_multiplies_by_a_mod_2():
    assert not d3(e2_class('1', 1, 0)).is_zero()
    assert d3(e2_class('1', 2, 0)).is_zero()


@pytest.mark.parametrize('s, c, n', [(s, c, n) for s in range(-3, 6) for c in range(-3, 6) for n in (0, 1, 2)])
def test_d3_squares_to_zero(s, c, n):
    dim = len(e2_types(s, c, n))
    for i in range(dim):
        x = E2Class(s, c, n, tuple(int(i == k) for k in range(dim)))
        assert d3(d3(x)).is_zero()


def test_e4_vanishes_above_filtration_two():
    for s in range(-4, 5):
        for c in range(-4, 5):
            assert all(e4_page(s, c, n).is_zero() for n in range(3, 7))


def test_ko_group_named_bases():
    g = ko_group(0, 0)
    assert g.invariants == (2, ())
    assert g.basis_names == ('1', 'ρη₀')
    assert ko_group(1, 0).basis_names == ('η₀',)
    assert ko_group(1, 1).invariants == (0, (1, 1))


def test_ko_basis_free_classes_first():
    for s in range(-4, 5):
        for c in range(-4, 5):
            ns = [k.n for k in ko_basis(s, c)]
            assert ns == sorted(ns)


def test_rho_power_and_multiplication():
    rho = rho_power(1)
    assert rho.bidegree == (-1, 0)
    assert ko_multiply(rho, rho) == rho_power(2)
    with pytest.raises(InvalidValueException):
        rho_power(-1)


def test_named_unknown_class():
    with pytest.raises(InvalidValueException):
        named('ξ', 0, 0)


def test_psi_is_the_identity_on_low_classes():
    x = named('ρη₀', 0, 0)
    assert ko_psi(3, x) == x
    assert psi_minus_one_matrix(0, 0).matrix == ((0, 0), (0, 0))


@pytest.mark.parametrize('n', range(0, 9))
def test_james_divisibility(n):
    x = named('ρη₀', 0, 0).scale(james_period(n))
    y = divisible_by_rho(x, n + 1)
    assert y is not None
    assert ko_multiply(y, rho_power(n + 1)) == x


def test_divisibility_of_zero():
    assert divisible_by_rho(KOElement.zero(0, 0), 3) == KOElement.zero(3, 0)


@pytest.mark.parametrize('n, order', [(1, 2), (2, 4), (3, 4), (4, 8), (8, 16)])
def test_reduced_ko0_order(n, order):
    assert reduced_ko0_order(n) == order


def test_stunted_needs_nonnegative_n():
    with pytest.raises(InvalidValueException):
        ko_finite_stunted(1, -1)
