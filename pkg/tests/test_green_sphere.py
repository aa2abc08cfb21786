import re

import pytest

from greensphere.classical_sphere import mu, one, rho, xi
from greensphere.exceptions import ExpressionParseException, InvalidValueException
from greensphere.green_sphere import (E0, M00, W0, Family, Gen, GreenElement, detected_by, gen_from_atom,
                                      group, mackey_level, normalize, parse_green, parse_word, restrict_word,
                                      restriction, rewrite_rules, tau4_shift, transfer, unit, verify_hfpss,
                                      weyl_action, word_bidegree, word_name)
from greensphere.ko_ring import ko_group


@pytest.mark.parametrize('s, c, invariants', [
    (0, 0, (2, (1, 1))),
    (-1, 0, (1, (1,))),
    (7, 0, (1, (1,))),
    (7, 3, (0, (2, 5))),
])
def test_group(s, c, invariants):
    assert group(s, c).invariants == invariants


def test_group_basis_names():
    assert 'w[1]' in group(7, 0).basis_names
    assert 'w[0]*mu[0,0]*rho[1,0]' in group(7, 0).basis_names
    g = group(0, 4)
    assert g.free_rank == 1
    assert 'tauh[2]' in g.basis_names


def test_groups_are_cached(fresh_tables):
    assert group(0, 0) is group(0, 0)


def test_generator_bidegrees():
    assert Gen(Family.W, 1).bidegree == (7, 0)
    assert Gen(Family.X, 0, 1).bidegree == (3, 3)
    assert word_bidegree((W0, E0, M00)) == (1, 1)


def test_word_names():
    assert word_name(()) == '1'
    assert word_name(parse_word('eta[0]*w[0]^2')) == 'w[0]^2*eta[0]'


def test_gen_from_atom_checks_arity():
    with pytest.raises(ExpressionParseException):
        gen_from_atom('mu', (0,))
    with pytest.raises(ExpressionParseException):
        gen_from_atom('nu', (0,))


def test_h_relation():
    # w0 eta0 = 2 - h
    assert str(normalize((W0, W0, Gen(Family.E, 1)))) == '2*w[1]'


def test_normal_forms():
    assert normalize((E0, Gen(Family.X, 0, 1))) == normalize((W0, W0, W0, Gen(Family.R, 1, 1)))
    assert str(normalize((Gen(Family.M, 1, 0), Gen(Family.R, 0, 1)))) == 'mu[0,0]*rho[1,1]'
    assert normalize((M00, M00, M00)) == normalize((Gen(Family.X, 0, 1),), 4)
    zeta = Gen(Family.Z, 0, 0)
    assert normalize((zeta, zeta)).is_zero()


def test_products_of_tauh():
    assert str(parse_green('tauh[1]*tauh[1]')) == '2*tauh[2]'
    assert parse_green('w[0]*tauh[1]').is_zero()


def test_multiplication_commutes():
    x = parse_green('eta[0]')
    y = parse_green('mu[0,0]')
    assert x * y == y * x


def test_adding_different_degrees():
    with pytest.raises(ExpressionParseException):
        parse_green('w[0] + eta[0]')


def test_restriction():
    assert restriction(parse_green('w[1]')).ascii == '8*rho[1]'
    assert restriction(GreenElement.one()) == one()


def test_restriction_is_a_ring_map():
    assert restriction(parse_green('eta[0]^3')) == xi(0).scale(4)
    assert restrict_word((E0, E0, E0)) == xi(0).scale(4)


def test_transfer():
    assert str(transfer(1, one())) == 'w[0]*mu[0,0]'
    assert str(transfer(4, one())) == 'tauh[2]'


def test_transfer_of_twisted_class():
    with pytest.raises(InvalidValueException):
        transfer(0, rho('1/2'))


def test_unit():
    assert str(unit(rho(1))) == 'rho[1,2]'
    assert str(unit(mu(0))) == 'mu[0,0]'
    assert str(unit(one())) == '1'


def test_weyl_action_on_the_unit():
    assert weyl_action(0, one()) == one()
    assert weyl_action(1, one()) == one().scale(-1)


def test_tau4_shift():
    assert str(tau4_shift(parse_green('tauh[2]'))) == 'tauh[4]'
    assert str(tau4_shift(parse_green('mu[0,0]'))) == 'mu[0,1]'
    with pytest.raises(InvalidValueException):
        tau4_shift(parse_green('xi[0,0]'))


@pytest.mark.parametrize('s, c', [(-1, 0), (0, 0), (7, 0), (1, 1)])
def test_mackey_exactness(s, c):
    level = mackey_level(s, c)
    assert level.restriction_kernel_is_rho_image()
    assert level.transfer_image_is_rho_kernel()


@pytest.mark.parametrize('s, c', [(-1, 0), (7, 0), (0, 0)])
def test_descent_agrees_with_tables(s, c):
    assert verify_hfpss(s, c).ok


def test_detected_by():
    assert detected_by('1') == '1'
    assert detected_by('w[1]') == 'rho v^a (a=1)'
    with pytest.raises(InvalidValueException):
        detected_by('w[0]*w[0]*eta[0]')


def test_rewrite_rules_come_from_the_table_file(fresh_tables):
    rules = rewrite_rules()
    assert len(rules) == 37
    assert rules[0].text == 'tauh[0] -> 2-w[0]*eta[0]'
    assert rewrite_rules() is rules


def test_tauh_zero_is_expanded():
    expected = GreenElement.one().scale(2) - normalize((W0, E0))
    assert normalize((Gen(Family.H, 0),)) == expected
    assert parse_green('tauh[0]*w[1]') == normalize((Gen(Family.W, 1),), 2) - normalize((W0, E0, Gen(Family.W, 1)))


@pytest.mark.parametrize('a', range(-3, 4))
def test_eta0_cubed_times_eta_is_w0_cubed_times_w(a):
    assert normalize((E0, E0, E0, Gen(Family.E, a))) == normalize((W0, W0, W0, Gen(Family.W, a + 1)))


def test_descent_compares_the_w0_rank():
    check = verify_hfpss(-1, 0)
    assert check.table_rho_rank == 1
    assert check.descent_rho_rank == 1
    assert check.ok


def test_descent_names_the_cokernel_lifts():
    # (3,-1) is the xi family at a = b = 0, Z2 + Z/4
    check = verify_hfpss(3, -1)
    assert check.ok
    coker = check.cokernel
    assert coker.invariants == (1, (2,))
    assert len(coker.basis_names) == 2
    ko_names = set(ko_group(4, 0).basis_names)
    for name in coker.basis_names:
        for term in re.split(r' [+-] ', name.lstrip('-')):
            assert term.split('*')[-1] in ko_names
