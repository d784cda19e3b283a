"""Characters, the Stickelberger pairing and map, and the lattice A_Ghat.

Roots of unity never appear as complex numbers.  With e = exp(G) a
character is stored by the exponents v_i with chi(g_i) = zeta_e^{v_i}, so
chi(s) = zeta_e^{sum v_i s_i} and the pairing <chi, s> is simply
``(sum v_i s_i mod e) / e``.

Galois actions are modelled by a subgroup D of (Z/m)^x acting on
characters by chi -> chi^d and on G(-1) by s -> d*s.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .errors import DomainError, InputError
from .groups import Element, FinAbGroup, unit_subgroup_closure, units_mod
from .lattice import IntLattice, congruence_kernel

CHARACTERS = "characters"
GROUP_ELEMENTS = "group_elements"


@dataclass(frozen=True)
class Character:
    group: FinAbGroup
    values_exponent: tuple[int, ...]

    def __post_init__(self):
        G = self.group
        v = tuple(int(a) % G.exponent for a in self.values_exponent)
        if len(v) != G.rank:
            raise InputError("character needs one exponent per generator")
        for a, d in zip(v, G.invariant_factors):
            if d * a % G.exponent:
                raise InputError(f"chi(g) = zeta_{G.exponent}^{a} is not a {d}-th root of unity")
        object.__setattr__(self, "values_exponent", v)

    def __call__(self, s: Element) -> int:
        """Exponent k in chi(s) = zeta_e^k, reduced mod e."""
        return sum(a * b for a, b in zip(self.values_exponent, s)) % self.group.exponent

    def power(self, k: int) -> Character:
        return Character(self.group, tuple(k * a for a in self.values_exponent))

    def inverse(self) -> Character:
        return self.power(-1)

    def __mul__(self, other: Character) -> Character:
        return Character(self.group, tuple(a + b for a, b in zip(self.values_exponent, other.values_exponent)))

    @property
    def is_trivial(self) -> bool:
        return not any(self.values_exponent)

    @property
    def order(self) -> int:
        e = self.group.exponent
        return math.lcm(1, *(e // math.gcd(e, a) for a in self.values_exponent))

    def kills(self, members) -> bool:
        """True iff chi is trivial on every element of ``members``."""
        return all(self(s) == 0 for s in members)

    def to_json(self) -> list[int]:
        return list(self.values_exponent)


def character_group(G: FinAbGroup) -> list[Character]:
    """All |G| characters in lexicographic order of exponent vectors."""
    G.elements()  # enforces the enumeration bound
    return list(_characters(G))


@lru_cache(maxsize=None)
def _characters(G: FinAbGroup) -> tuple[Character, ...]:
    e = G.exponent
    dual = FinAbGroup(G.invariant_factors)
    return tuple(Character(G, tuple(j * (e // d) for j, d in zip(js, G.invariant_factors)))
                 for js in dual.elements())


def character_index(G: FinAbGroup, chi: Character) -> int:
    e = G.exponent
    js = tuple(a // (e // d) for a, d in zip(chi.values_exponent, G.invariant_factors))
    return G.index_of(js)


def pairing(chi: Character, s: Element) -> Fraction:
    """<chi, s> = a/|s| with chi(s) = zeta_{|s|}^a and 0 <= a < |s|."""
    G = chi.group
    s = G.element(s)
    return Fraction(chi(s), G.exponent)


@lru_cache(maxsize=None)
def scaled_pairing_matrix(G: FinAbGroup) -> tuple[tuple[int, ...], ...]:
    """Integer matrix e*<chi, s>; rows are characters, columns elements."""
    return tuple(tuple(chi(s) for s in G.elements()) for chi in character_group(G))


# ---------------------------------------------------------------------------
# Rational vectors and the Stickelberger map


@dataclass(frozen=True)
class RationalGroupVector:
    group: FinAbGroup
    kind: str  # CHARACTERS or GROUP_ELEMENTS
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if self.kind not in (CHARACTERS, GROUP_ELEMENTS):
            raise InputError(f"unknown index kind {self.kind!r}")
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if len(coeffs) != self.group.order:
            raise InputError("coefficient vector must cover the whole group")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def of_character(cls, chi: Character, weight=1) -> RationalGroupVector:
        G = chi.group
        c = [Fraction(0)] * G.order
        c[character_index(G, chi)] = Fraction(weight)
        return cls(G, CHARACTERS, tuple(c))

    def __add__(self, other: RationalGroupVector) -> RationalGroupVector:
        if (self.group, self.kind) != (other.group, other.kind):
            raise InputError("vectors live on different index sets")
        return RationalGroupVector(self.group, self.kind,
                                   tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)


def theta(psi: RationalGroupVector) -> RationalGroupVector:
    """Theta(psi) = sum_s <psi, s> s, a vector over G(-1)."""
    if psi.kind != CHARACTERS:
        raise InputError("theta takes a vector over the character group")
    G = psi.group
    M = scaled_pairing_matrix(G)
    e = G.exponent
    out = []
    for j in range(G.order):
        out.append(sum((psi.coefficients[i] * M[i][j] for i in range(G.order)), Fraction(0)) / e)
    return RationalGroupVector(G, GROUP_ELEMENTS, tuple(out))


def a_hat_lattice(G: FinAbGroup) -> IntLattice:
    """A_Ghat = {psi in Z[Ghat] : Theta(psi) integral}, in Hermite form.

    Scaling by e turns integrality of Theta(psi) into the congruence
    psi . (e * pairing matrix) == 0 (mod e).
    """
    G.elements()
    return _a_hat(G)


@lru_cache(maxsize=None)
def _a_hat(G: FinAbGroup) -> IntLattice:
    return congruence_kernel(scaled_pairing_matrix(G), G.exponent)


def in_a_hat(G: FinAbGroup, psi: Sequence[int]) -> bool:
    M = scaled_pairing_matrix(G)
    e = G.exponent
    return all(sum(p * M[i][j] for i, p in enumerate(psi)) % e == 0 for j in range(G.order))


def theta_transpose(g, psi: Sequence[int]) -> int:
    """Exponent of Theta^t(g)(psi) = prod_s g(s)^{<psi, s>}.

    ``g`` is a monomial hom over G(-1); ``psi`` an integer vector over Ghat
    lying in A_Ghat.
    """
    if g.domain_kind != GROUP_ELEMENTS:
        raise InputError("Theta^t takes a hom on G(-1)")
    G = g.group
    psi = [int(a) for a in psi]
    if len(psi) != G.order:
        raise InputError("psi must be indexed by the full character group")
    if not in_a_hat(G, psi):
        raise DomainError("psi is not in A_Ghat")
    M = scaled_pairing_matrix(G)
    total = Fraction(0)
    for j, x in enumerate(g.exponents):
        if x:
            total += Fraction(x) * sum(p * M[i][j] for i, p in enumerate(psi))
    total /= G.exponent
    if total.denominator != 1:
        raise ArithmeticError("non-integral Theta^t exponent on A_Ghat")
    return int(total)


# ---------------------------------------------------------------------------
# Galois model


@dataclass(frozen=True)
class GaloisModel:
    """A subgroup D of (Z/modulus)^x, standing in for the cyclotomic image."""
    modulus: int
    generators: tuple[int, ...] = ()

    def __post_init__(self):
        if self.modulus < 1:
            raise InputError("modulus must be positive")
        gens = tuple(int(g) % self.modulus for g in self.generators)
        for g in gens:
            if math.gcd(g, self.modulus) != 1:
                raise InputError(f"{g} is not a unit modulo {self.modulus}")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def full(cls, n: int) -> GaloisModel:
        return cls(n, units_mod(n))

    @classmethod
    def trivial(cls, n: int) -> GaloisModel:
        return cls(n, ())

    @cached_property
    def elements(self) -> frozenset[int]:
        return unit_subgroup_closure(self.modulus, self.generators)

    def __len__(self) -> int:
        return len(self.elements)

    def contains_minus_one(self) -> bool:
        return (self.modulus - 1) % self.modulus in self.elements

    def acting_residues(self, e: int) -> list[int]:
        """Residues mod lcm(e, modulus) reducing into D; they act through d mod e."""
        L = math.lcm(e, self.modulus)
        return [d for d in units_mod(L) if d % self.modulus in self.elements]

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "elements": sorted(self.elements)}


def is_equivariant(h, model: GaloisModel) -> bool:
    """Whether the exponents of ``h`` are constant on D-orbits."""
    G = h.group
    e = G.exponent
    exps = h.exponents
    for d in model.acting_residues(e):
        if h.domain_kind == CHARACTERS:
            for i, chi in enumerate(character_group(G)):
                if exps[character_index(G, chi.power(d))] != exps[i]:
                    return False
        else:
            for i, s in enumerate(G.elements()):
                if exps[G.index_of(G.scale(d, s))] != exps[i]:
                    return False
    return True


def d_n_of_model(model: GaloisModel) -> int:
    """|D|/2 when -1 is in D, else |D|.

    For n <= 2 inversion is the identity on mu_n and halving would give
    1/2; we return |D| = 1 there.
    """
    if model.modulus > 2 and model.contains_minus_one():
        return len(model) // 2
    return len(model)
