"""Generalised Swan ideals (r, Sigma_H) in ZG as integer lattices.

ZG is identified with Z^|G| via the lexicographic element order, and an
element a of ZG acts on a lattice vector by convolution.  Local freeness at
p is decided by comparing lattices modulo p^N with p^N larger than the
index, which is enough by Nakayama once one lattice contains the other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import sympy

from .errors import DomainError, InputError
from .groups import CyclicSubgroup, Element, FinAbGroup, Subgroup
from .homs import c_swan
from .lattice import IntLattice
from .stickelberger import character_group, character_index


@dataclass(frozen=True)
class GroupRingElement:
    group: FinAbGroup
    coefficients: tuple  # ints or Fractions, aligned with group.elements()

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        if len(coeffs) != self.group.order:
            raise InputError("coefficient vector must cover the whole group")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def zero(cls, G: FinAbGroup) -> GroupRingElement:
        return cls(G, (0,) * G.order)

    @classmethod
    def scalar(cls, G: FinAbGroup, a) -> GroupRingElement:
        return cls(G, (a,) + (0,) * (G.order - 1))

    @classmethod
    def basis(cls, G: FinAbGroup, s: Element) -> GroupRingElement:
        c = [0] * G.order
        c[G.index_of(s)] = 1
        return cls(G, tuple(c))

    def _same(self, other: GroupRingElement):
        if other.group != self.group:
            raise InputError("group ring elements over different groups")

    def __add__(self, other: GroupRingElement) -> GroupRingElement:
        self._same(other)
        return GroupRingElement(self.group, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: GroupRingElement) -> GroupRingElement:
        return self + other.scale(-1)

    def scale(self, k) -> GroupRingElement:
        return GroupRingElement(self.group, tuple(k * a for a in self.coefficients))

    def __mul__(self, other: GroupRingElement) -> GroupRingElement:
        self._same(other)
        G = self.group
        els = G.elements()
        out = [0] * G.order
        for i, a in enumerate(self.coefficients):
            if not a:
                continue
            for j, b in enumerate(other.coefficients):
                if b:
                    out[G.index_of(G.add(els[i], els[j]))] += a * b
        return GroupRingElement(G, tuple(out))

    def shifted(self, s: Element) -> GroupRingElement:
        """s * self."""
        G = self.group
        out = [0] * G.order
        for t, a in zip(G.elements(), self.coefficients):
            out[G.index_of(G.add(s, t))] += a
        return GroupRingElement(G, tuple(out))

    def is_integral(self) -> bool:
        return all(Fraction(a).denominator == 1 for a in self.coefficients)

    def to_json(self) -> list:
        return [int(a) if Fraction(a).denominator == 1 else str(a) for a in self.coefficients]


def group_ring_mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    return a * b


def _members(H) -> frozenset[Element]:
    return H.members


def sigma(G: FinAbGroup, H) -> GroupRingElement:
    """Sigma_H, the sum of the elements of H."""
    mem = _members(H)
    return GroupRingElement(G, tuple(int(s in mem) for s in G.elements()))


def _check_r(H, r: int):
    if r == 0 or math.gcd(r, len(_members(H))) != 1:
        raise InputError(f"r = {r} is not coprime to |H| = {len(_members(H))}")


@dataclass(frozen=True)
class SwanIdeal:
    G: FinAbGroup
    H: Subgroup | CyclicSubgroup
    r: int
    lattice: IntLattice

    def index(self) -> int:
        return self.lattice.index()


def swan_ideal(G: FinAbGroup, H, r: int) -> SwanIdeal:
    """(r, Sigma_H) = ZG r + ZG Sigma_H."""
    r = int(r)
    _check_r(H, r)
    sig = sigma(G, H)
    gens = [[r * int(i == j) for j in range(G.order)] for i in range(G.order)]
    gens += [list(sig.shifted(s).coefficients) for s in G.elements()]
    return SwanIdeal(G, H, r, IntLattice.from_generators(gens, G.order))


def _symmetric(a: int, m: int) -> int:
    a %= m
    return a - m if a > m // 2 else a


def default_precision(p: int, index: int) -> int:
    """Least N >= 1 with p^N > index."""
    N = 1
    while p ** N <= index:
        N += 1
    return N


def local_generator(G: FinAbGroup, H, r: int, p: int, N: int | None = None) -> GroupRingElement:
    """c = r + (1 - r) inv(|H|) Sigma_H, coefficients as symmetric residues mod p^N."""
    r = int(r)
    _check_r(H, r)
    if not sympy.isprime(p):
        raise InputError(f"{p} is not prime")
    h = len(_members(H))
    if r % p:
        raise DomainError(f"p = {p} does not divide r = {r}")
    if h % p == 0:
        raise DomainError(f"p = {p} divides |H| = {h}")
    if N is None:
        N = default_precision(p, swan_ideal(G, H, r).index())
    if N < 1:
        raise InputError("precision must be >= 1")
    q = p ** N
    k = (1 - r) * pow(h, -1, q)
    c = sigma(G, H).scale(k) + GroupRingElement.scalar(G, r)
    return GroupRingElement(G, tuple(_symmetric(a, q) for a in c.coefficients))


def _span_of_translates(c: GroupRingElement) -> list[list[int]]:
    return [list(c.shifted(s).coefficients) for s in c.group.elements()]


def proof_identities(G: FinAbGroup, H, r: int) -> bool:
    """r = (1 + a Sigma)(r - a Sigma) and Sigma = (r - a Sigma) Sigma with a = (r-1)/|H|, in QG."""
    h = len(_members(H))
    a = Fraction(r - 1, h)
    sig = sigma(G, H)
    u = GroupRingElement.scalar(G, Fraction(1)) + sig.scale(a)
    c = GroupRingElement.scalar(G, Fraction(r)) - sig.scale(a)
    return u * c == GroupRingElement.scalar(G, Fraction(r)) and c * sig == sig.scale(Fraction(1))


@dataclass(frozen=True)
class PrimeCheck:
    p: int
    N: int
    passed: bool

    def to_json(self) -> dict:
        return {"p": self.p, "N": self.N, "pass": self.passed}


@dataclass(frozen=True)
class LocalFreenessCertificate:
    index: int
    per_prime: tuple[PrimeCheck, ...]
    index_primes_divide_r: bool
    identities: bool

    @property
    def passed(self) -> bool:
        return self.index_primes_divide_r and self.identities and all(c.passed for c in self.per_prime)


def verify_locally_free(G: FinAbGroup, H, r: int) -> LocalFreenessCertificate:
    """Check that (r, Sigma_H) is generated by the local generator at each p | r.

    At p not dividing r the ideal contains the unit r, so it suffices that p
    does not divide the index.
    """
    I = swan_ideal(G, H, r)
    idx = I.index()
    checks = []
    for p in sorted(sympy.primefactors(abs(r))):
        N = default_precision(p, idx)
        c = local_generator(G, H, r, p, N)
        q = p ** N
        lhs = IntLattice.from_generators(_span_of_translates(c), G.order).plus_multiple_of_full(q)
        rhs = I.lattice.plus_multiple_of_full(q)
        contained = all(v in I.lattice for v in _span_of_translates(c))
        checks.append(PrimeCheck(p, N, contained and lhs == rhs))
    index_ok = all(abs(r) % p == 0 for p in sympy.primefactors(idx))
    return LocalFreenessCertificate(idx, tuple(checks), index_ok, proof_identities(G, H, r))


# ---------------------------------------------------------------------------
# Fibre product model


@dataclass(frozen=True)
class FiberModule:
    """(ZG)(eta) inside ZQ x Gamma_H, with Gamma_H = ZG/(Sigma_H).

    Coordinates are (x, y): x in Z^q over cosets, y over the non-representative
    elements, which form a Z-basis of Gamma_H.
    """
    G: FinAbGroup
    H: Subgroup | CyclicSubgroup
    r: int

    @cached_property
    def cosets(self) -> list[list[int]]:
        """Element indices per coset, cosets ordered by least representative."""
        G = self.G
        mem = sorted(_members(self.H))
        seen: set[int] = set()
        out = []
        for s in G.elements():
            i = G.index_of(s)
            if i in seen:
                continue
            cos = sorted(G.index_of(G.add(s, h)) for h in mem)
            seen.update(cos)
            out.append(cos)
        return out

    @cached_property
    def coset_of(self) -> list[int]:
        out = [0] * self.G.order
        for ci, cos in enumerate(self.cosets):
            for i in cos:
                out[i] = ci
        return out

    @property
    def reps(self) -> list[int]:
        return [cos[0] for cos in self.cosets]

    @cached_property
    def complement(self) -> list[int]:
        reps = set(self.reps)
        return [i for i in range(self.G.order) if i not in reps]

    @property
    def q(self) -> int:
        return len(self.cosets)

    @property
    def h(self) -> int:
        return len(_members(self.H))

    @property
    def rank(self) -> int:
        return self.q + len(self.complement)

    def lift(self, z: Sequence[int]) -> list[int]:
        """Reduce z in ZG modulo coset sums onto the complement basis."""
        z = list(z)
        for cos in self.cosets:
            c = z[cos[0]]
            if c:
                for i in cos:
                    z[i] -= c
        return [z[i] for i in self.complement]

    def to_pair(self, v: Sequence[int]) -> tuple[list[int], list[int]]:
        return list(v[:self.q]), list(v[self.q:])

    def from_pair(self, x: Sequence[int], y: Sequence[int]) -> list[int]:
        if len(x) != self.q or len(y) != len(self.complement):
            raise InputError("pair does not match the fibre module shape")
        return list(x) + list(y)

    def _y_full(self, y: Sequence[int]) -> list[int]:
        full = [0] * self.G.order
        for i, a in zip(self.complement, y):
            full[i] = a
        return full

    def augment(self, y: Sequence[int]) -> list[int]:
        """Image of y under ZG -> ZQ."""
        out = [0] * self.q
        for i, a in zip(self.complement, y):
            out[self.coset_of[i]] += a
        return out

    def contains(self, v: Sequence[int]) -> bool:
        x, y = self.to_pair(v)
        ey = self.augment(y)
        return all((a - self.r * b) % self.h == 0 for a, b in zip(x, ey))

    @cached_property
    def lattice(self) -> IntLattice:
        gens = []
        for j, i in enumerate(self.complement):
            x = [0] * self.q
            x[self.coset_of[i]] = self.r
            gens.append(x + [int(k == j) for k in range(len(self.complement))])
        for ci in range(self.q):
            gens.append([self.h * int(k == ci) for k in range(self.q)] + [0] * len(self.complement))
        return IntLattice.from_generators(gens, self.rank)

    def act(self, s: Element, v: Sequence[int]) -> list[int]:
        """s . (x, y)."""
        G = self.G
        x, y = self.to_pair(v)
        sx = [0] * self.q
        shift = G.index_of(s)
        els = G.elements()
        for ci, a in enumerate(x):
            target = G.index_of(G.add(els[self.reps[ci]], els[shift]))
            sx[self.coset_of[target]] += a
        sy = GroupRingElement(G, tuple(self._y_full(y))).shifted(s)
        return sx + self.lift(sy.coefficients)

    def phi(self, v: Sequence[int]) -> list[Fraction]:
        """phi(x, y) = y r + sum_i ((x_i - y_i r)/|H|) s_i Sigma_H."""
        x, y = self.to_pair(v)
        ey = self.augment(y)
        full = self._y_full(y)
        return [Fraction(self.r * full[g]) + Fraction(x[self.coset_of[g]] - self.r * ey[self.coset_of[g]], self.h)
                for g in range(self.G.order)]


@dataclass(frozen=True)
class PhiCertificate:
    integral: bool
    image_equals_ideal: bool
    injective: bool
    equivariant: bool
    witnesses: bool

    @property
    def passed(self) -> bool:
        return all((self.integral, self.image_equals_ideal, self.injective, self.equivariant, self.witnesses))

    def to_json(self) -> dict:
        return {"integral": self.integral, "image_equals_ideal": self.image_equals_ideal,
                "injective": self.injective, "equivariant": self.equivariant,
                "witnesses": self.witnesses, "pass": self.passed}


def fiber_module(G: FinAbGroup, H, r: int) -> tuple[FiberModule, PhiCertificate]:
    r = int(r)
    _check_r(H, r)
    F = FiberModule(G, H, r)
    basis = [list(b) for b in F.lattice.basis]
    images = [F.phi(b) for b in basis]
    integral = all(a.denominator == 1 for img in images for a in img)
    if not integral:
        return F, PhiCertificate(False, False, False, False, False)
    int_images = [[int(a) for a in img] for img in images]
    image = IntLattice.from_generators(int_images, G.order)
    ideal = swan_ideal(G, H, r).lattice
    injective = F.lattice.is_full_rank() and image.is_full_rank()
    equivariant = True
    for s in G.elements():
        for b, img in zip(basis, int_images):
            moved = F.act(s, b)
            if not F.contains(moved) or F.phi(moved) != list(GroupRingElement(G, tuple(img)).shifted(s).coefficients):
                equivariant = False
                break
        if not equivariant:
            break
    # (rH, 1) |-> r and (|H| H, 0) |-> Sigma_H
    one = [0] * G.order
    one[0] = 1
    w1 = F.from_pair([r] + [0] * (F.q - 1), F.lift(one))
    w2 = F.from_pair([F.h] + [0] * (F.q - 1), [0] * len(F.complement))
    witnesses = (F.contains(w1) and F.contains(w2)
                 and F.phi(w1) == list(GroupRingElement.scalar(G, r).coefficients)
                 and F.phi(w2) == list(sigma(G, H).coefficients))
    return F, PhiCertificate(True, image == ideal, injective, equivariant, witnesses)


def psi_invariance_check(G: FinAbGroup, H, r: int) -> bool:
    """c_swan(G, H) is constant along chi -> chi^k for every k prime to |G|."""
    _check_r(H, int(r))
    if not isinstance(H, CyclicSubgroup):
        raise InputError("psi_invariance_check needs a cyclic subgroup")
    c = c_swan(G, H)
    for k in range(1, max(G.order, 2)):
        if math.gcd(k, G.order) != 1:
            continue
        for chi in character_group(G):
            if c.at(chi) != c.exponents[character_index(G, chi.power(k))]:
                return False
    return True


def swan_certificate(G: FinAbGroup, H: CyclicSubgroup, r: int) -> dict:
    lf = verify_locally_free(G, H, r)
    _, phi = fiber_module(G, H, r)
    return {"group": G.to_json(), "subgroup_gen": list(H.generator), "r": int(r),
            "index": lf.index, "per_prime": [c.to_json() for c in lf.per_prime],
            "index_primes_divide_r": lf.index_primes_divide_r, "identities": lf.identities,
            "locally_free_pass": lf.passed, "phi": phi.to_json(), "phi_pass": phi.passed,
            "pass": lf.passed and phi.passed}
