import itertools
import math

import pytest
from hypothesis import given, strategies as st
from sympy import totient

from galmod.errors import InputError, ResourceError
from galmod.groups import (CyclicSubgroup, FinAbGroup, abelian_groups, cyclic_subgroups, elem_order,
                           mult_order, power_map, quotient_by_cyclic, subgroups, unit_subgroups,
                           units_mod)


def grp(*orders):
    return FinAbGroup.from_orders(orders)


def brute_order(G, s):
    n, x = 1, s
    while x != G.identity:
        x = G.add(x, s)
        n += 1
    return n


def test_normalisation():
    assert grp(2, 3).invariant_factors == (6,)
    assert grp(4, 2).invariant_factors == (2, 4)
    assert grp(1).invariant_factors == ()
    assert grp(1).exponent == 1 and grp(1).order == 1
    assert grp(6, 4).invariant_factors == (2, 12)
    with pytest.raises(InputError):
        FinAbGroup((4, 2))
    with pytest.raises(InputError):
        FinAbGroup((1,))


def test_abelian_group_counts():
    # number of abelian groups of order n is a product of partition numbers
    counts = {}
    for G in abelian_groups(32):
        counts[G.order] = counts.get(G.order, 0) + 1
    assert counts[1] == 1 and counts[8] == 3 and counts[16] == 5 and counts[12] == 2
    assert counts[32] == 7 and counts[24] == 3 and counts[7] == 1


def test_elem_order_examples():
    assert elem_order(grp(6), (3,)) == 2
    assert elem_order(grp(2, 4), (0, 0)) == 1
    assert elem_order(grp(2, 4), (1, 2)) == 2
    with pytest.raises(InputError):
        elem_order(grp(6), (6,))
    with pytest.raises(InputError):
        elem_order(grp(6), (1, 1))


def test_elem_order_divides_exponent_and_matches_brute_force():
    for G in abelian_groups(64):
        for s in G.elements():
            n = elem_order(G, s)
            assert G.exponent % n == 0
            assert n == brute_order(G, s)


def test_power_map():
    assert power_map(grp(5), 2)((1,)) == (2,)
    assert power_map(grp(3), -1)((1,)) == (2,)
    pm = power_map(grp(2, 4), 3)
    assert pm.is_automorphism and len(set(pm.images)) == 8
    assert not power_map(grp(2, 4), 2).is_automorphism


def test_power_map_composition():
    for G in [grp(2, 4), grp(9), grp(3, 3), grp(12)]:
        e = G.exponent
        for k in range(-3, 7):
            for l in range(-3, 7):
                assert power_map(G, k).compose(power_map(G, l)).images == power_map(G, k * l % e).images


def test_mult_order_examples():
    assert mult_order(2, 7) == 3
    assert mult_order(2, 23) == 11
    assert mult_order(-1, 5) == 2
    assert mult_order(5, 1) == 1
    with pytest.raises(InputError):
        mult_order(2, 6)


@given(st.integers(2, 500), st.integers(-1000, 1000))
def test_mult_order_divides_totient(n, k):
    if math.gcd(k, n) != 1:
        return
    m = mult_order(k, n)
    assert totient(n) % m == 0
    assert pow(k, m, n) == 1 % n
    assert all(pow(k, j, n) != 1 for j in range(1, m))


def brute_cyclic_subgroups(G):
    spans = set()
    for s in G.elements():
        spans.add(frozenset(G.scale(i, s) for i in range(brute_order(G, s))))
    return spans


def test_cyclic_subgroups_examples():
    assert [H.order for H in cyclic_subgroups(grp(4))] == [1, 2, 4]
    assert [H.order for H in cyclic_subgroups(grp(2, 2))] == [1, 2, 2, 2]
    # C2 x C4 has 1 + 3 + 2 cyclic subgroups
    subs = cyclic_subgroups(grp(2, 4))
    assert len(subs) == len(brute_cyclic_subgroups(grp(2, 4))) == 6
    assert [H.order for H in subs] == [1, 2, 2, 2, 4, 4]


def test_cyclic_subgroups_against_brute_force():
    for G in abelian_groups(36):
        subs = cyclic_subgroups(G)
        assert {H.members for H in subs} == brute_cyclic_subgroups(G)
        for H in subs:
            gens = [s for s in H.members if elem_order(G, s) == H.order]
            assert H.generator == min(gens)


def test_subgroups_of_small_groups():
    assert len(subgroups(grp(2, 2))) == 5
    assert len(subgroups(grp(2, 4))) == 8
    assert len(subgroups(grp(3, 3))) == 6
    assert len(subgroups(grp(12))) == 6


def test_enumeration_limit():
    big = grp(101, 101)
    with pytest.raises(ResourceError):
        big.elements()
    with pytest.raises(ResourceError):
        cyclic_subgroups(grp(50), limit=10)


def test_cyclic_subgroup_validation():
    G = grp(6)
    with pytest.raises(InputError):
        CyclicSubgroup(G, (2,), 6)
    assert CyclicSubgroup.generated_by(G, (2,)).order == 3


def test_units():
    assert units_mod(1) == (0,)
    assert units_mod(8) == (1, 3, 5, 7)
    assert len(unit_subgroups(8)) == 5
    assert len(unit_subgroups(7)) == 4


def test_quotient_examples():
    r = quotient_by_cyclic(3, 2, (1, 0))
    assert r.invariant_factors == (3,) and r.surjects
    r = quotient_by_cyclic(4, 2, (1, 1))
    assert r.invariant_factors == (4,) and r.surjects
    r = quotient_by_cyclic(4, 2, (0, 0))
    assert r.invariant_factors == (4, 4) and r.surjects
    r = quotient_by_cyclic(6, 2, (2, 3))
    assert r.invariant_factors == (6,) and r.surjects
    with pytest.raises(InputError):
        quotient_by_cyclic(4, 2, (4, 0))


def brute_quotient_order(n, k, x):
    span = {tuple(i * a % n for a in x) for i in range(n)}
    return n ** k // len(span)


def test_quotient_flag_exhaustive():
    for n in range(1, 7):
        for k in range(0, 4):
            for x in itertools.product(range(n), repeat=k):
                r = quotient_by_cyclic(n, k, x)
                assert r.surjects
                assert math.prod(r.invariant_factors) == brute_quotient_order(n, k, x)
