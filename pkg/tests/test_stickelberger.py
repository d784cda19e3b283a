import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from galmod.errors import DomainError, InputError
from galmod.groups import FinAbGroup, abelian_groups, elem_order
from galmod.homs import MonomialHom, g_family
from galmod.stickelberger import (CHARACTERS, GROUP_ELEMENTS, Character, GaloisModel,
                                  RationalGroupVector, a_hat_lattice, character_group,
                                  character_index, d_n_of_model, in_a_hat, is_equivariant,
                                  pairing, theta, theta_transpose)


def grp(*orders):
    return FinAbGroup.from_orders(orders)


def oracle_pairing(chi, s):
    """a/|s| with chi(s) = zeta_|s|^a, from the root-of-unity exponent directly."""
    G = chi.group
    n = elem_order(G, s)
    k = chi(s)  # chi(s) = zeta_e^k
    a, r = divmod(k * n, G.exponent)
    assert r == 0
    return Fraction(a % n, n)


def theta_integral(G, psi):
    chars = character_group(G)
    return all(sum(p * oracle_pairing(chi, s) for p, chi in zip(psi, chars)).denominator == 1
               for s in G.elements())


def test_character_group_examples():
    assert [c.values_exponent for c in character_group(grp(3))] == [(0,), (1,), (2,)]
    assert len(character_group(grp(2, 2))) == 4
    chars = character_group(grp(6))
    a = next(c for c in chars if c.order == 2)
    b = next(c for c in chars if c.order == 3)
    assert (a * b).order == 6
    assert character_group(grp(1))[0].is_trivial


def test_character_group_is_a_group():
    for G in abelian_groups(24):
        chars = character_group(G)
        assert len(chars) == G.order == len(set(chars))
        assert chars[0].is_trivial
        s = set(chars)
        for x in chars:
            assert x.inverse() in s
            assert character_index(G, x) == chars.index(x)
        for x, y in itertools.islice(itertools.product(chars, chars), 200):
            assert x * y in s


def test_character_validation():
    with pytest.raises(InputError):
        Character(grp(2, 4), (1, 0))  # chi(g_1) would be a primitive 4th root
    assert Character(grp(2, 4), (2, 1)).order == 4


def test_pairing_examples():
    G3, G6 = grp(3), grp(6)
    assert pairing(Character(G3, (1,)), (1,)) == Fraction(1, 3)
    assert pairing(Character(G6, (0,)), (5,)) == 0
    assert pairing(Character(G6, (1,)), (3,)) == Fraction(1, 2)


def test_pairing_matches_oracle_and_nondegenerate():
    for G in abelian_groups(24):
        for chi in character_group(G):
            vals = [pairing(chi, s) for s in G.elements()]
            assert vals == [oracle_pairing(chi, s) for s in G.elements()]
            assert all(0 <= v < 1 for v in vals)
            if not chi.is_trivial:
                assert any(vals)


def test_pairing_sum_law():
    for G in abelian_groups(24):
        for chi in character_group(G):
            for s in G.elements():
                total = pairing(chi, s) + pairing(chi, G.neg(s))
                assert total == (0 if chi(s) == 0 else 1)


def test_pairing_galois_equivariance():
    for G in abelian_groups(24):
        e = G.exponent
        for d in (d for d in range(1, e + 1) if math.gcd(d, e) == 1):
            for chi in character_group(G):
                for s in G.elements():
                    assert pairing(chi.power(d), s) == pairing(chi, G.scale(d, s))


def test_theta_examples():
    G = grp(3)
    chars = character_group(G)
    t = theta(RationalGroupVector.of_character(chars[1]))
    assert t.coefficients == (0, Fraction(1, 3), Fraction(2, 3))
    assert theta(RationalGroupVector.of_character(chars[0])).coefficients == (0, 0, 0)
    both = RationalGroupVector.of_character(chars[1]) + RationalGroupVector.of_character(chars[2])
    assert theta(both).coefficients == (0, 1, 1)
    assert theta(both).is_integral()
    with pytest.raises(InputError):
        theta(RationalGroupVector(G, GROUP_ELEMENTS, (0, 0, 0)))


def test_a_hat_examples():
    L3 = a_hat_lattice(grp(3))
    assert L3.index() == 3
    for v in itertools.product(range(-3, 4), repeat=3):
        assert (list(v) in L3) == ((v[1] + 2 * v[2]) % 3 == 0)
    L2 = a_hat_lattice(grp(2))
    assert L2.index() == 2 and [0, 2] in L2 and [0, 1] not in L2
    assert a_hat_lattice(grp(1)).basis == ((1,),)


def test_a_hat_index_by_counting_residues():
    # e Z^n lies in A_Ghat, so the index is e^n over the number of members mod e
    for G in abelian_groups(8):
        e, n = G.exponent, G.order
        if e ** n > 70000:
            continue
        chars = character_group(G)
        # columns of the oracle pairing, scaled to integers by e
        cols = [[int(oracle_pairing(chi, s) * e) for chi in chars] for s in G.elements()]
        count = sum(all(sum(a * b for a, b in zip(v, col)) % e == 0 for col in cols)
                    for v in itertools.product(range(e), repeat=n))
        assert a_hat_lattice(G).index() == e ** n // count, G


@given(st.sampled_from([g for g in abelian_groups(8) if g.order > 1]).flatmap(
    lambda G: st.tuples(st.just(G), st.lists(st.integers(-20, 20), min_size=G.order, max_size=G.order))))
@settings(max_examples=300, deadline=None)
def test_a_hat_membership_against_denominator_oracle(data):
    G, psi = data
    assert (psi in a_hat_lattice(G)) == theta_integral(G, psi) == in_a_hat(G, psi)


def test_a_hat_full_rank_and_hermite():
    for G in abelian_groups(16):
        L = a_hat_lattice(G)
        assert L.is_full_rank()
        for v in L.basis:
            assert theta_integral(G, v)


def test_theta_transpose_examples():
    G3 = grp(3)
    assert theta_transpose(g_family(G3, (1,), 2), [0, 3, 0]) == 0
    zero = MonomialHom(G3, GROUP_ELEMENTS, "x", (0, 0, 0))
    for psi in a_hat_lattice(G3).basis:
        assert theta_transpose(zero, psi) == 0
    G2 = grp(2)
    assert theta_transpose(g_family(G2, (1,), 1), [0, 2]) == 2
    with pytest.raises(DomainError):
        theta_transpose(zero, [0, 1, 0])
    with pytest.raises(InputError):
        theta_transpose(MonomialHom(G3, CHARACTERS, "x", (0, 0, 0)), [1, 0, 0])


def test_theta_transpose_integral_on_basis():
    for G in abelian_groups(16):
        basis = a_hat_lattice(G).basis
        for i in range(G.order):
            exps = [0] * G.order
            exps[i] = 1
            g = MonomialHom(G, GROUP_ELEMENTS, "x", tuple(exps))
            for psi in basis:
                assert isinstance(theta_transpose(g, psi), int)


def test_equivariance_examples():
    G5 = grp(5)
    at_t = MonomialHom(G5, GROUP_ELEMENTS, "x", (0, 1, 0, 0, 0))
    assert is_equivariant(at_t, GaloisModel.trivial(5))
    assert not is_equivariant(at_t, GaloisModel.full(5))
    pair = MonomialHom(G5, GROUP_ELEMENTS, "x", (0, 1, 0, 0, 1))
    assert is_equivariant(pair, GaloisModel(5, (4,)))


def test_galois_model():
    M = GaloisModel(8, (3,))
    assert M.elements == {1, 3}
    assert not M.contains_minus_one()
    assert GaloisModel.full(8).contains_minus_one()
    with pytest.raises(InputError):
        GaloisModel(8, (2,))
    assert M.to_json() == {"modulus": 8, "elements": [1, 3]}


def test_d_n_examples():
    assert d_n_of_model(GaloisModel.full(5)) == 2
    assert d_n_of_model(GaloisModel.trivial(5)) == 1
    assert d_n_of_model(GaloisModel.full(7)) == 3
    for p in (3, 5, 7, 11, 13):
        assert ((p - 1) // 2) % d_n_of_model(GaloisModel.full(p)) == 0
    # for n <= 2 inversion fixes mu_n, and no halving happens
    assert d_n_of_model(GaloisModel.full(2)) == 1
    assert d_n_of_model(GaloisModel.full(1)) == 1
