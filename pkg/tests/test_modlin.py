from fractions import Fraction

import pytest

from greensphere.exceptions import InvalidValueException
from greensphere.modlin import (FGModule, Lattice, ModuleMap, c2_cohomology, cokernel, ker_coker_endo,
                                kernel, lattice_equal, map_kernel, presented, reduce_mod_lattice,
                                solve_in_lattice, subquotient)
from greensphere.twoadic import INFINITY


def test_fgmodule_text_and_order():
    m = FGModule(free_rank=1, torsion=(3, 1))
    assert str(m) == 'Z2 + Z/2 + Z/8'
    assert m.order() == INFINITY
    assert FGModule(torsion=(1, 3)).order() == 16
    assert FGModule().is_zero()


def test_fgmodule_rejects_trivial_summands():
    with pytest.raises(InvalidValueException):
        FGModule(torsion=(0,))


def test_same_group_ignores_names():
    assert FGModule(1, (2,), ('a', 'b')).same_group(FGModule(1, (2,), ('x', 'y')))


def test_cokernel_diagonal():
    m = cokernel([[2, 0], [0, 4]], 2)
    assert m.invariants == (0, (1, 2))


def test_cokernel_odd_entries_are_units():
    assert cokernel([[3]], 1).is_zero()
    assert cokernel([[0]], 1).invariants == (1, ())


def test_kernel_basis():
    assert kernel([[1, 1]], 2) == [[1, -1]]


def test_lattice_reduce_and_contains():
    lat = Lattice([[2, 0], [0, 4]], 2)
    assert lat.reduce([5, 6]) == [1, 2]
    assert lat.contains([4, 8])
    assert not lat.contains([1, 0])
    assert reduce_mod_lattice([5, 6], [[2, 0], [0, 4]]) == [1, 2]


def test_lattice_equal_different_generators():
    assert lattice_equal([[2, 0], [0, 2]], [[2, 2], [0, 2]], 2)
    assert not lattice_equal([[2, 0]], [[4, 0]], 2)


def test_solve_in_lattice_modulo_relations():
    assert solve_in_lattice([[1, 1]], [3, 3]) == [3]
    assert solve_in_lattice([[1, 0]], [1, 2], [[0, 2]]) == [1]
    assert solve_in_lattice([[2, 0]], [1, 0]) is None


def test_map_kernel_of_doubling_on_z4():
    gens = map_kernel([[2]], 1, [[4]], [[4]])
    assert subquotient(gens, [[4]], 1).invariants == (0, (1,))


def test_map_kernel_edge_cases():
    assert map_kernel([], 0) == []
    assert map_kernel([[]], 2) == [[1, 0], [0, 1]]


def test_presented_keeps_names():
    m = presented(2, [[2, 0]], ('a', 'b'))
    assert m.invariants == (1, (1,))
    assert m.basis_names == ('a', 'b')
    assert m.relations == ((Fraction(2), Fraction(0)),)


@pytest.mark.parametrize('sign, n, expected', [
    (-1, 0, (0, ())), (-1, 1, (0, (1,))), (-1, 2, (0, ())), (-1, 3, (0, (1,))),
    (1, 0, (1, ())), (1, 1, (0, ())), (1, 2, (0, (1,))), (1, 4, (0, (1,))),
])
def test_c2_cohomology_of_z2(sign, n, expected):
    z = FGModule(free_rank=1)
    sigma = ModuleMap(z, z, ((sign,),))
    assert c2_cohomology(z, sigma, n).invariants == expected


def test_c2_cohomology_needs_an_involution():
    z = FGModule(free_rank=1)
    with pytest.raises(InvalidValueException):
        c2_cohomology(z, ModuleMap(z, z, ((3,),)), 0)


def test_ker_coker_of_doubling():
    z = FGModule(free_rank=1)
    ker, coker = ker_coker_endo(z, ModuleMap(z, z, ((2,),)))
    assert ker.is_zero()
    assert coker.invariants == (0, (1,))
