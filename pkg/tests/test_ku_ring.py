import pytest

from greensphere.exceptions import InvalidValueException
from greensphere.ku_ring import (KUMonomial, h_element, ku_basis, ku_group, ku_monomial, ku_multiply,
                                 ku_psi, ku_rho_action, sigma)


def test_odd_coweight_is_empty():
    assert ku_group(0, 1).is_zero()
    assert ku_group(3, -5).is_zero()


@pytest.mark.parametrize('s, c, rank', [(0, 0, 2), (-1, 0, 1), (4, 2, 2), (7, 6, 1)])
def test_ranks(s, c, rank):
    assert ku_group(s, c).invariants == (rank, ())


def test_basis_bidegrees():
    for s in range(-4, 5):
        for c in range(-4, 5, 2):
            assert all(b.bidegree == (s, c) for b in ku_basis(s, c))


def test_rho_cubed_is_twice_a_basis_monomial():
    assert KUMonomial(0, 0, 3).canonical() == (2, KUMonomial(-1, 1, 1))


def test_rho_annihilates_h():
    assert ku_rho_action(h_element()).is_zero()


def test_psi_on_beta():
    beta = ku_monomial(1, 0, 0)
    assert ku_psi(3, beta) == beta.scale(3)


def test_psi_on_tau_squared():
    # psi^3(tau^2) = tau^2 + z tau^2
    tau2 = ku_monomial(0, 1, 0)
    assert ku_psi(3, tau2).coeffs == (1, 1)


def test_sigma_is_an_involution():
    for mono in (KUMonomial(0, 1, 0), KUMonomial(1, 0, 2), KUMonomial(2, -1, 0), KUMonomial(0, 0, 1)):
        x = ku_monomial(mono.i, mono.j, mono.m)
        assert sigma(sigma(x)) == x


def test_psi_needs_odd_k():
    with pytest.raises(InvalidValueException):
        ku_psi(2, ku_monomial(1, 0, 0))


def test_multiplication_is_commutative():
    x = ku_monomial(1, -1, 1)
    y = ku_monomial(0, 1, 0) + ku_monomial(1, 0, 2)
    assert ku_multiply(x, y) == ku_multiply(y, x)
