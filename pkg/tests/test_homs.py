import pytest

from galmod.errors import DomainError, InputError
from galmod.groups import CyclicSubgroup, FinAbGroup, abelian_groups, cyclic_subgroups, elem_order, unit_subgroups
from galmod.homs import (MonomialHom, RamificationDatum, c_family, c_swan, delta_of_group,
                         g_family, orbit_pairing_sum, resolvent_exponents, swan1a_g,
                         verify_ccc, verify_rag_equals_theta_t, verify_swan1a, verify_swan2b_exponent)
from galmod.stickelberger import CHARACTERS, GROUP_ELEMENTS, GaloisModel, character_group, is_equivariant


def grp(*orders):
    return FinAbGroup.from_orders(orders)


def cyc(G, t):
    return CyclicSubgroup.generated_by(G, t)


def support(h):
    return sorted(h.support())


def test_c_swan_examples():
    G2 = grp(2)
    assert c_swan(G2, cyc(G2, (1,))).exponents == (0, 1)
    G4 = grp(4)
    assert c_swan(G4, cyc(G4, (0,))).exponents == (0, 0, 0, 0)
    assert c_swan(G4, cyc(G4, (2,))).exponents == (0, 1, 0, 1)


def test_c_family_examples():
    G3, G4 = grp(3), grp(4)
    assert c_family(G3, (1,), 2).exponents == (0, 0, 1)
    assert c_family(G4, (1,), 1).at(character_group(G4)[1]) == 1
    for G in abelian_groups(12):
        for t in G.elements()[1:]:
            c = c_family(G, t, 1)
            for chi in character_group(G):
                if chi(t) == 0:
                    assert c.at(chi) == 0
    with pytest.raises(InputError):
        c_family(G3, (0,), 1)
    with pytest.raises(InputError):
        c_family(G3, (1,), 3)


def test_g_family_examples():
    assert g_family(grp(2), (1,), 1).exponents == (0, 2)
    assert g_family(grp(5), (1,), 1).exponents == (0, 1, 0, 0, 1)
    assert g_family(grp(3), (1,), 2).exponents == (0, 2, -1)
    with pytest.raises(DomainError):
        g_family(grp(4), (1,), 2)


def test_rag_examples():
    G3, G2 = grp(3), grp(2)
    assert verify_rag_equals_theta_t(c_family(G3, (1,), 2), g_family(G3, (1,), 2))
    assert verify_rag_equals_theta_t(c_family(G2, (1,), 1), g_family(G2, (1,), 1))
    zero = MonomialHom(G3, GROUP_ELEMENTS, "r", (0, 0, 0))
    assert not verify_rag_equals_theta_t(c_swan(G3, cyc(G3, (1,))), zero)
    with pytest.raises(InputError):
        verify_rag_equals_theta_t(c_swan(G3, cyc(G3, (1,))), g_family(G3, (1,), 2))


def test_rag_identity_exhaustive():
    for G in abelian_groups(16):
        for t in G.elements()[1:]:
            for variant in (1, 2):
                if variant == 2 and elem_order(G, t) % 2 == 0:
                    continue
                assert verify_rag_equals_theta_t(c_family(G, t, variant), g_family(G, t, variant))


def test_rag_detects_perturbation():
    # moving one exponent of g breaks the identity
    G = grp(5)
    g = g_family(G, (1,), 1)
    bumped = MonomialHom(G, GROUP_ELEMENTS, "x", (0, 1, 1, 0, 1))
    assert not verify_rag_equals_theta_t(c_family(G, (1,), 1), bumped)
    assert verify_rag_equals_theta_t(c_family(G, (1,), 1), g)


def test_swan1a_g_examples():
    G5, G3 = grp(5), grp(3)
    H5 = cyc(G5, (1,))
    assert support(swan1a_g(G5, H5, GaloisModel(5, (4,)))) == [(1,), (4,)]
    assert support(swan1a_g(G5, H5, GaloisModel.full(5))) == [(1,), (2,), (3,), (4,)]
    assert support(swan1a_g(G3, cyc(G3, (1,)), GaloisModel.trivial(3))) == [(1,), (2,)]
    # order two: the two halves coincide
    G2 = grp(2)
    assert swan1a_g(G2, cyc(G2, (1,)), GaloisModel.full(2)).exponents == (0, 2)


def test_swan1a_examples():
    G5, G3 = grp(5), grp(3)
    model = GaloisModel(5, (4,))
    chi = character_group(G5)[1]
    assert orbit_pairing_sum(chi, cyc(G5, (1,)), model) == 2
    assert verify_swan1a(G5, cyc(G5, (1,)), model)
    assert verify_swan1a(G3, cyc(G3, (1,)), GaloisModel.full(3))
    assert orbit_pairing_sum(character_group(G5)[0], cyc(G5, (1,)), model) == 0
    with pytest.raises(InputError):
        verify_swan1a(G5, cyc(G5, (1,)), GaloisModel.full(4))


def test_swan1a_exhaustive_cyclic():
    for n in range(2, 13):
        G = grp(n)
        H = cyc(G, (1,))
        for D in unit_subgroups(n):
            model = GaloisModel(n, tuple(sorted(D)))
            assert verify_swan1a(G, H, model), (n, sorted(D))
            assert is_equivariant(swan1a_g(G, H, model), model)


def test_swan1a_fails_with_wrong_multiplier():
    G = grp(7)
    H = cyc(G, (1,))
    model = GaloisModel.full(7)
    c = c_swan(G, H).scaled(2)  # d_7 is 3, not 2
    assert not verify_rag_equals_theta_t(c, swan1a_g(G, H, model))


def test_ccc_examples():
    G3, G9 = grp(3), grp(9)
    assert verify_ccc(G3, cyc(G3, (1,)))
    assert verify_ccc(G9, cyc(G9, (1,)))
    assert verify_ccc(G3, cyc(G3, (0,)))
    with pytest.raises(DomainError):
        verify_ccc(grp(4), cyc(grp(4), (1,)))


def test_ccc_exhaustive():
    for G in abelian_groups(30):
        for H in cyclic_subgroups(G):
            if H.order % 2 and H.order <= 15:
                assert verify_ccc(G, H)


def test_delta():
    assert delta_of_group(grp(4)) == 2
    assert delta_of_group(grp(6)) == 1
    assert delta_of_group(grp(2, 2)) == 2
    with pytest.raises(DomainError):
        delta_of_group(grp(1))


def test_swan2b_examples():
    G3, G4, G2 = grp(3), grp(4), grp(2)
    assert verify_swan2b_exponent(G3, (1,), character_group(G3)[1]) == 1
    assert verify_swan2b_exponent(G4, (1,), character_group(G4)[1]) == 2
    assert verify_swan2b_exponent(G2, (1,), character_group(G2)[1]) == 2
    with pytest.raises(DomainError):
        verify_swan2b_exponent(G3, (1,), character_group(G3)[0])
    with pytest.raises(DomainError):
        verify_swan2b_exponent(grp(6), (3,), character_group(grp(6))[1])


def test_swan2b_exhaustive():
    for G in abelian_groups(16):
        if G.order == 1:
            continue
        delta = delta_of_group(G)
        for t in G.elements()[1:]:
            if delta == 1 and elem_order(G, t) % 2 == 0:
                continue
            for chi in character_group(G):
                if chi(t):
                    assert verify_swan2b_exponent(G, t, chi) == delta


def test_equivariance_of_families():
    for G in abelian_groups(12):
        e = G.exponent
        if e == 1:
            continue
        models = [GaloisModel(e, tuple(sorted(D))) for D in unit_subgroups(e)]
        for M in models:
            for H in cyclic_subgroups(G):
                assert is_equivariant(c_swan(G, H), M)
            for t in G.elements()[1:]:
                n = elem_order(G, t)
                assert is_equivariant(c_family(G, t, 1), M)
                if all(d % n == 1 % n for d in M.elements):
                    assert is_equivariant(g_family(G, t, 1), M)
                    if n % 2:
                        assert is_equivariant(c_family(G, t, 2), M)
                        assert is_equivariant(g_family(G, t, 2), M)


def test_resolvent_exponents():
    G3, G4 = grp(3), grp(4)
    assert resolvent_exponents(G3, [RamificationDatum("v", (1,))])[0].exponents == (0, 1, 1)
    h = resolvent_exponents(G4, [RamificationDatum("w", (2,)), RamificationDatum("u", (0,))])
    assert h[0].exponents == (0, 1, 0, 1) and h[0].base_tag == "pi_w"
    assert h[1].is_identity()


def test_hom_json_roundtrip():
    G = grp(2, 2)
    h = c_swan(G, cyc(G, (1, 1)))
    data = h.to_json()
    assert data["domain_kind"] == CHARACTERS and data["base_tag"] == "r"
    assert MonomialHom.from_json(G, data) == h
    with pytest.raises(InputError):
        MonomialHom(G, "nonsense", "r", (0, 0, 0, 0))
