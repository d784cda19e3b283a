"""Monomial idele and resolvent components as exponent vectors.

Every local component the Swan-subgroup arguments use is a monomial in a
single base (a uniformiser, r, or a scalar x), so it is stored as the
exponent of that base at each character or each element of G(-1).  The
identities behind the Swan-subgroup theorems then become equalities of
integer exponent vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InputError
from .groups import CyclicSubgroup, Element, FinAbGroup, elem_order
from .stickelberger import (CHARACTERS, GROUP_ELEMENTS, Character, GaloisModel,
                            a_hat_lattice, character_group, character_index,
                            d_n_of_model, pairing, theta_transpose)


@dataclass(frozen=True)
class MonomialHom:
    group: FinAbGroup
    domain_kind: str
    base_tag: str
    exponents: tuple  # ints, or Fractions for intermediate values

    def __post_init__(self):
        if self.domain_kind not in (CHARACTERS, GROUP_ELEMENTS):
            raise InputError(f"unknown domain kind {self.domain_kind!r}")
        exps = tuple(int(x) if Fraction(x).denominator == 1 else Fraction(x) for x in self.exponents)
        if len(exps) != self.group.order:
            raise InputError("exponent vector must cover the whole domain")
        object.__setattr__(self, "exponents", exps)

    def at(self, key) -> int:
        G = self.group
        if self.domain_kind == CHARACTERS:
            return self.exponents[character_index(G, key)]
        return self.exponents[G.index_of(key)]

    def support(self) -> list:
        keys = character_group(self.group) if self.domain_kind == CHARACTERS else self.group.elements()
        return [k for k, x in zip(keys, self.exponents) if x]

    def scaled(self, k: int) -> MonomialHom:
        return MonomialHom(self.group, self.domain_kind, self.base_tag, tuple(k * x for x in self.exponents))

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def to_json(self) -> dict:
        return {"domain_kind": self.domain_kind, "base_tag": self.base_tag,
                "exponents": [int(x) for x in self.exponents]}

    @classmethod
    def from_json(cls, G: FinAbGroup, data: dict) -> MonomialHom:
        return cls(G, data["domain_kind"], data["base_tag"], tuple(data["exponents"]))


@dataclass(frozen=True)
class RamificationDatum:
    place_label: str
    s_v: Element


def _on_characters(G, base, fn) -> MonomialHom:
    return MonomialHom(G, CHARACTERS, base, tuple(fn(chi) for chi in character_group(G)))


def _nontrivial(G: FinAbGroup, t) -> Element:
    t = G.element(t)
    if t == G.identity:
        raise InputError("t must not be the identity")
    return t


def c_swan(G: FinAbGroup, H: CyclicSubgroup, base: str = "r") -> MonomialHom:
    """Exponent 0 where chi(H) = 1, exponent 1 elsewhere."""
    return _on_characters(G, base, lambda chi: 0 if chi.kills(H.members) else 1)


def c_family(G: FinAbGroup, t, variant: int, base: str = "x") -> MonomialHom:
    """c_{t,x,1}: <chi,t> + <chi,t^-1>;  c_{t,x,2}: 2<chi,t> - <chi,t^2>."""
    t = _nontrivial(G, t)
    if variant == 1:
        fn = lambda chi: pairing(chi, t) + pairing(chi, G.neg(t))
    elif variant == 2:
        fn = lambda chi: 2 * pairing(chi, t) - pairing(chi, G.scale(2, t))
    else:
        raise InputError("variant must be 1 or 2")
    c = _on_characters(G, base, fn)
    if any(isinstance(x, Fraction) for x in c.exponents):
        raise ArithmeticError("non-integral exponent in c_family")
    return c


def g_family(G: FinAbGroup, t, variant: int, base: str = "x") -> MonomialHom:
    t = _nontrivial(G, t)
    n = elem_order(G, t)
    exps = [0] * G.order
    if variant == 1:
        if n == 2:
            exps[G.index_of(t)] = 2
        else:
            exps[G.index_of(t)] = 1
            exps[G.index_of(G.neg(t))] = 1
    elif variant == 2:
        if n % 2 == 0:
            raise DomainError(f"variant 2 needs |t| odd, got {n}")
        exps[G.index_of(t)] = 2
        exps[G.index_of(G.scale(2, t))] = -1
    else:
        raise InputError("variant must be 1 or 2")
    return MonomialHom(G, GROUP_ELEMENTS, base, tuple(exps))


def rag_exponent(c: MonomialHom, psi: Sequence[int]) -> int:
    """Exponent of rag(c)(psi) = prod_chi c(chi)^{psi(chi)}."""
    if c.domain_kind != CHARACTERS:
        raise InputError("rag restricts a hom on characters")
    return sum(x * p for x, p in zip(c.exponents, psi))


def verify_rag_equals_theta_t(c: MonomialHom, g: MonomialHom) -> bool:
    """rag(c) == Theta^t(g) on every Hermite basis vector of A_Ghat."""
    if c.base_tag != g.base_tag:
        raise InputError(f"base tags differ: {c.base_tag!r} vs {g.base_tag!r}")
    if c.group != g.group:
        raise InputError("homs over different groups")
    return all(rag_exponent(c, psi) == theta_transpose(g, psi)
               for psi in a_hat_lattice(c.group).basis)


# ---------------------------------------------------------------------------
# Swan subgroup computations


def _check_model(H: CyclicSubgroup, model: GaloisModel):
    if model.modulus != H.order:
        raise InputError(f"model modulus {model.modulus} != |H| = {H.order}")


def swan1a_g(G: FinAbGroup, H: CyclicSubgroup, model: GaloisModel, base: str = "r") -> MonomialHom:
    """The hom with exponent 1 on {i*t, -i*t : i in D}.

    When t = -t (|t| <= 2) the two halves coincide and the element carries
    exponent 2, matching g_{t,x,1} for |t| = 2.
    """
    _check_model(H, model)
    t = H.generator
    exps = [0] * G.order
    hits: dict[Element, int] = {}
    for i in model.elements:
        for s in (G.scale(i, t), G.scale(-i, t)):
            hits[s] = hits.get(s, 0) + 1
    halve = model.modulus > 2 and model.contains_minus_one()
    for s, m in hits.items():
        exps[G.index_of(s)] = m // 2 if halve else m
    return MonomialHom(G, GROUP_ELEMENTS, base, tuple(exps))


def orbit_pairing_sum(chi: Character, H: CyclicSubgroup, model: GaloisModel) -> Fraction:
    """sum over i in D of <chi, t^i> + <chi, t^-i>."""
    G = chi.group
    t = H.generator
    return sum((pairing(chi, G.scale(i, t)) + pairing(chi, G.scale(-i, t)) for i in model.elements),
               Fraction(0))


def verify_swan1a(G: FinAbGroup, H: CyclicSubgroup, model: GaloisModel) -> bool:
    """rag(c_H^{d_n}) == Theta^t(g) on A_Ghat, plus the orbit-sum identity."""
    _check_model(H, model)
    d = d_n_of_model(model)
    c = c_swan(G, H).scaled(d)
    g = swan1a_g(G, H, model)
    if not verify_rag_equals_theta_t(c, g):
        return False
    t = H.generator
    for chi in character_group(G):
        expected = 0 if chi(t) == 0 else len(model)
        if orbit_pairing_sum(chi, H, model) != expected:
            return False
    return True


def verify_ccc(G: FinAbGroup, H: CyclicSubgroup) -> bool:
    """c_H(chi) == c(chi) + c(chi^-1) with c = c_{t,r,2}, for |t| odd."""
    if H.order % 2 == 0:
        raise DomainError(f"|t| = {H.order} is even")
    if H.order == 1:
        return c_swan(G, H).is_identity()
    c = c_family(G, H.generator, 2, base="r")
    cs = c_swan(G, H)
    for chi in character_group(G):
        if c.at(chi) + c.at(chi.inverse()) != cs.at(chi):
            return False
    return True


def delta_of_group(G: FinAbGroup) -> int:
    n = G.order
    if n == 1:
        raise DomainError("delta(G) needs G != 1")
    return 2 if n & (n - 1) == 0 else 1


def verify_swan2b_exponent(G: FinAbGroup, t, chi: Character) -> int:
    """Exponent of c(chi) c(chi^-1); equals delta(G) for admissible input."""
    t = _nontrivial(G, t)
    delta = delta_of_group(G)
    if chi(t) == 0:
        raise DomainError("need chi(t) != 1")
    if delta == 1 and elem_order(G, t) % 2 == 0:
        raise DomainError("|t| must be odd when delta(G) = 1")
    c = c_family(G, t, 1 if delta == 2 else 2, base="pi_v0")
    return c.at(chi) + c.at(chi.inverse())


def resolvent_exponents(G: FinAbGroup, data: Sequence[RamificationDatum]) -> list[MonomialHom]:
    """Per place, the exponents <chi,s_v> + <chi,s_v^-1> of pi_v."""
    out = []
    for datum in data:
        s = G.element(datum.s_v)
        base = f"pi_{datum.place_label}"
        h = _on_characters(G, base, lambda chi: pairing(chi, s) + pairing(chi, G.neg(s)))
        expected = c_swan(G, CyclicSubgroup.generated_by(G, s), base)
        if h != expected:
            raise ArithmeticError(f"resolvent exponents at {datum.place_label} differ from c_swan")
        out.append(h)
    return out
