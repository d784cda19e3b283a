"""Finite abelian groups in invariant-factor form.

Elements are plain tuples of exponents, written additively; ``coords[i]``
lives in ``Z/d_i``.  Element lists are always in lexicographic order, which
puts the identity first.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .errors import InputError, ResourceError
from .lattice import quotient_invariants

# Desk-scale guard for anything that lists every element.
ENUMERATION_LIMIT = 10_000

Element = tuple[int, ...]


@dataclass(frozen=True)
class FinAbGroup:
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        facs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", facs)
        for d in facs:
            if d < 2:
                raise InputError(f"invariant factor {d} < 2")
        for a, b in zip(facs, facs[1:]):
            if b % a:
                raise InputError(f"invariant factors {list(facs)} do not form a divisibility chain")

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> FinAbGroup:
        """Normalise a product of cyclic groups C_{n_1} x ... x C_{n_k}."""
        orders = [int(n) for n in orders]
        if any(n < 1 for n in orders):
            raise InputError("cyclic orders must be positive")
        k = len(orders)
        rel = [[n if i == j else 0 for j in range(k)] for i, n in enumerate(orders)]
        return cls(tuple(quotient_invariants(rel, k)))

    @classmethod
    def cyclic(cls, n: int) -> FinAbGroup:
        return cls.from_orders([n])

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    def elements(self, limit: int | None = None) -> tuple[Element, ...]:
        limit = ENUMERATION_LIMIT if limit is None else limit
        if self.order > limit:
            raise ResourceError(f"|G| = {self.order} exceeds enumeration limit {limit}")
        return _element_list(self.invariant_factors)

    @cached_property
    def _index(self) -> dict[Element, int]:
        return {s: i for i, s in enumerate(self.elements())}

    def index_of(self, s: Element) -> int:
        return self._index[self.element(s)]

    def element(self, coords: Sequence[int]) -> Element:
        """Validate an exponent vector (already reduced) and return it as a tuple."""
        try:
            s = tuple(int(a) for a in coords)
        except (TypeError, ValueError) as exc:
            raise InputError(f"malformed element {coords!r}") from exc
        if len(s) != self.rank:
            raise InputError(f"element {list(s)} has {len(s)} coordinates, group has rank {self.rank}")
        for a, d in zip(s, self.invariant_factors):
            if not 0 <= a < d:
                raise InputError(f"element {list(s)} not reduced modulo {list(self.invariant_factors)}")
        return s

    def reduce(self, coords: Sequence[int]) -> Element:
        return tuple(int(a) % d for a, d in zip(coords, self.invariant_factors))

    def add(self, s: Element, t: Element) -> Element:
        return tuple((a + b) % d for a, b, d in zip(s, t, self.invariant_factors))

    def neg(self, s: Element) -> Element:
        return tuple(-a % d for a, d in zip(s, self.invariant_factors))

    def scale(self, k: int, s: Element) -> Element:
        return tuple(k * a % d for a, d in zip(s, self.invariant_factors))

    def to_json(self) -> list[int]:
        return list(self.invariant_factors)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "1"
        return " x ".join(f"C{d}" for d in self.invariant_factors)


@lru_cache(maxsize=None)
def _element_list(factors: tuple[int, ...]) -> tuple[Element, ...]:
    return tuple(itertools.product(*(range(d) for d in factors)))


def elem_order(G: FinAbGroup, s: Sequence[int]) -> int:
    s = G.element(s)
    return math.lcm(1, *(d // math.gcd(d, a) for a, d in zip(s, G.invariant_factors)))


def abelian_groups(max_order: int) -> Iterator[FinAbGroup]:
    """Every abelian group of order <= max_order, once each, trivial first."""
    def chains(prefix: tuple[int, ...], prod: int):
        yield prefix
        last = prefix[-1] if prefix else 1
        d = last if prefix else 2
        while prod * d <= max_order:
            yield from chains(prefix + (d,), prod * d)
            d += last if prefix else 1

    if max_order < 1:
        return
    found = sorted(chains((), 1), key=lambda f: (math.prod(f), f))
    for f in found:
        yield FinAbGroup(f)


# ---------------------------------------------------------------------------
# Endomorphisms and multiplicative orders


@dataclass(frozen=True)
class PowerMap:
    group: FinAbGroup
    k: int
    images: tuple[Element, ...]  # aligned with group.elements()

    @property
    def is_automorphism(self) -> bool:
        return math.gcd(self.k, self.group.order) == 1

    def __call__(self, s: Element) -> Element:
        return self.images[self.group.index_of(s)]

    def compose(self, other: PowerMap) -> PowerMap:
        """``self`` after ``other``."""
        return PowerMap(self.group, self.k * other.k,
                        tuple(self(t) for t in other.images))


def power_map(G: FinAbGroup, k: int) -> PowerMap:
    return PowerMap(G, k, tuple(G.scale(k, s) for s in G.elements()))


def mult_order(k: int, n: int) -> int:
    """Least m >= 1 with k^m == 1 (mod n)."""
    if n < 1:
        raise InputError("modulus must be >= 1")
    if math.gcd(k, n) != 1:
        raise InputError(f"{k} is not a unit modulo {n}")
    if n == 1:
        return 1
    m, x = 1, k % n
    while x != 1:
        x = x * k % n
        m += 1
    return m


def units_mod(n: int) -> tuple[int, ...]:
    """(Z/n)^x as sorted residues; for n = 1 this is (0,)."""
    if n == 1:
        return (0,)
    return tuple(a for a in range(1, n) if math.gcd(a, n) == 1)


def unit_subgroup_closure(n: int, gens: Sequence[int]) -> frozenset[int]:
    one = 1 % n
    out = {one}
    frontier = [one]
    gens = [g % n for g in gens]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % n
            if y not in out:
                out.add(y)
                frontier.append(y)
    return frozenset(out)


def unit_subgroups(n: int) -> list[frozenset[int]]:
    """All subgroups of (Z/n)^x, sorted by (size, residues)."""
    units = units_mod(n)
    cyclic = {unit_subgroup_closure(n, [a]) for a in units}
    subs = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        S = frontier.pop()
        for C in cyclic:
            J = unit_subgroup_closure(n, list(S | C))
            if J not in subs:
                subs.add(J)
                frontier.append(J)
    return sorted(subs, key=lambda S: (len(S), sorted(S)))


# ---------------------------------------------------------------------------
# Subgroups


@dataclass(frozen=True)
class Subgroup:
    group: FinAbGroup
    members: frozenset[Element]

    @property
    def order(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class CyclicSubgroup:
    group: FinAbGroup
    generator: Element
    order: int

    def __post_init__(self):
        object.__setattr__(self, "generator", self.group.element(self.generator))
        if elem_order(self.group, self.generator) != self.order:
            raise InputError(f"generator {list(self.generator)} does not have order {self.order}")

    @classmethod
    def generated_by(cls, G: FinAbGroup, t: Sequence[int]) -> CyclicSubgroup:
        t = G.element(t)
        return cls(G, t, elem_order(G, t))

    @cached_property
    def members(self) -> frozenset[Element]:
        return frozenset(self.multiples())

    def multiples(self) -> list[Element]:
        """[0*t, 1*t, ..., (n-1)*t]."""
        return [self.group.scale(i, self.generator) for i in range(self.order)]


def _span(G: FinAbGroup, gens: Sequence[Element]) -> frozenset[Element]:
    out = {G.identity}
    frontier = [G.identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = G.add(x, g)
            if y not in out:
                out.add(y)
                frontier.append(y)
    return frozenset(out)


def cyclic_subgroups(G: FinAbGroup, limit: int | None = None) -> list[CyclicSubgroup]:
    """One entry per cyclic subgroup, generator = lexicographically least.

    Sorted by (order, generator).
    """
    seen: dict[frozenset[Element], Element] = {}
    for s in G.elements(limit):
        span = _span(G, [s])
        if span not in seen:
            seen[span] = s  # elements come in lex order, so first hit is least
    subs = [CyclicSubgroup(G, g, len(S)) for S, g in seen.items()]
    return sorted(subs, key=lambda H: (H.order, H.generator))


def subgroups(G: FinAbGroup, limit: int | None = None) -> list[Subgroup]:
    """All subgroups, as joins of cyclic ones; sorted by (order, members)."""
    cyc = [H.members for H in cyclic_subgroups(G, limit)]
    subs = set(cyc)
    frontier = list(cyc)
    while frontier:
        S = frontier.pop()
        for C in cyc:
            if C <= S:
                continue
            J = _span(G, sorted(S | C))
            if J not in subs:
                subs.add(J)
                frontier.append(J)
    return [Subgroup(G, S) for S in sorted(subs, key=lambda S: (len(S), sorted(S)))]


@dataclass(frozen=True)
class QuotientResult:
    invariant_factors: tuple[int, ...]
    surjects: bool  # onto C_n^{k-1}


def quotient_by_cyclic(n: int, k: int, x: Sequence[int]) -> QuotientResult:
    """Structure of (C_n)^k / <x> and whether it maps onto (C_n)^{k-1}."""
    if n < 1 or k < 0:
        raise InputError("need n >= 1 and k >= 0")
    x = [int(a) for a in x]
    if len(x) != k or any(not 0 <= a < n for a in x):
        raise InputError(f"element {x} is not a reduced vector in (C_{n})^{k}")
    rel = [[n if i == j else 0 for j in range(k)] for i in range(k)] + [x]
    facs = tuple(quotient_invariants(rel, k)) if k else ()
    divisible = sum(1 for d in facs if d % n == 0)
    return QuotientResult(facs, n == 1 or divisible >= k - 1)
