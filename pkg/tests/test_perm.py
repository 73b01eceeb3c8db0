"""Permutation arithmetic and stabilizer-chain order, membership, structure."""

import math
import random

import pytest

from anaburnside.engine import (
    PermGroup,
    Permutation,
    alternating,
    cyclic,
    dihedral,
    direct_product,
    psl2_group,
    symmetric,
    wreath,
)
from anaburnside.errors import CapExceeded


def test_permutation_basics():
    p = Permutation.from_cycles(4, [(0, 1, 2)])
    q = Permutation.from_cycles(4, [(2, 3)])
    assert (p * q).images == (1, 3, 0, 2)
    assert (p * q)(0) == 1
    assert (p * q)(2) == 0
    assert p.inverse() * p == Permutation.identity(4)
    assert p.order() == 3
    assert q.order() == 2
    assert (p * q).order() == 4
    assert p.one_line() == [2, 3, 1, 4]


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_composition_is_left_to_right():
    a = Permutation.from_cycles(3, [(0, 1)])
    b = Permutation.from_cycles(3, [(1, 2)])
    assert (a * b)(0) == 2
    assert (b * a)(0) == 1


def test_known_orders():
    assert symmetric(5).order() == 120
    assert alternating(5).order() == 60
    assert alternating(6).order() == 360
    assert alternating(9).order() == 181440
    assert cyclic(12).order() == 12
    assert dihedral(7).order() == 14
    assert psl2_group(7).order() == 168
    assert psl2_group(4).order() == 60
    assert psl2_group(8).order() == 504
    assert psl2_group(9).order() == 360
    assert psl2_group(11).order() == 660


def test_chain_order_matches_enumeration():
    for g in (symmetric(4), alternating(5), dihedral(6), psl2_group(5),
              direct_product([cyclic(3), symmetric(3)])):
        els = g.elements(cap=10_000)
        assert len(els) == g.order()
        assert len(set(els)) == g.order()


def test_membership():
    a5 = alternating(5)
    s5 = symmetric(5)
    odd = Permutation.from_cycles(5, [(0, 1)])
    assert not a5.contains(odd)
    assert s5.contains(odd)
    for g in a5.elements():
        assert s5.contains(g)
    assert a5.is_subgroup_of(s5)
    assert a5.is_normal_in(s5)


def test_random_element_lands_inside():
    g = psl2_group(7)
    rng = random.Random(11)
    for _ in range(50):
        assert g.contains(g.random_element(rng))


def test_orbits_and_transitivity():
    g = direct_product([cyclic(3), cyclic(4)])
    assert sorted(g.orbits()) == [[0, 1, 2], [3, 4, 5, 6]]
    assert not g.is_transitive()
    assert alternating(5).is_transitive()


def test_block_systems():
    w = wreath(cyclic(2), cyclic(3))
    systems = w.nontrivial_block_systems()
    assert any(sorted(b) == [[0, 1], [2, 3], [4, 5]] for b in systems)
    blocks = [[0, 1], [2, 3], [4, 5]]
    action, point_map = w.block_action(blocks)
    assert action.order() == 3
    assert point_map[2] == 1
    assert w.block_kernel(blocks).order() == 8


def test_derived_series_and_solvability():
    s4 = symmetric(4)
    series = s4.derived_series()
    assert [g.order() for g in series] == [24, 12, 4, 1]
    assert s4.is_solvable()
    assert not alternating(5).is_solvable()
    assert alternating(5).is_perfect()
    assert not s4.is_perfect()


def test_normal_closure():
    s4 = symmetric(4)
    double = Permutation.from_cycles(4, [(0, 1), (2, 3)])
    v4 = s4.normal_closure([double])
    assert v4.order() == 4
    three_cycle = Permutation.from_cycles(4, [(0, 1, 2)])
    assert s4.normal_closure([three_cycle]).order() == 12


def test_pointwise_stabilizer():
    g = symmetric(5)
    stab = PermGroup(5, g.pointwise_stabilizer_gens([0]))
    assert stab.order() == 24
    stab2 = PermGroup(5, g.pointwise_stabilizer_gens([0, 1]))
    assert stab2.order() == 6


def test_degree_cap():
    with pytest.raises(CapExceeded):
        PermGroup(65, [Permutation(range(65))])
    with pytest.raises(CapExceeded):
        symmetric(17)
    with pytest.raises(CapExceeded):
        wreath(alternating(5), wreath(cyclic(2), cyclic(7)))


def test_wreath_order():
    w = wreath(alternating(5), cyclic(2))
    assert w.order() == 60 * 60 * 2
    assert w.is_transitive()


def test_elements_cap():
    with pytest.raises(CapExceeded):
        symmetric(8).elements(cap=1000)
