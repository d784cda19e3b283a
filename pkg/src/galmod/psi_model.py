"""Finite abelian groups with a (Z/n)^x action, as stand-ins for Cl(O_K G).

Written additively: Xi_k(c) = c + Psi_k(c), Xi'_k(c) = -c + Psi_k(c).
R_sd is ker Xi_{-1} and A^t is im Xi'_2, both taken inside a user-supplied
Psi-stable subgroup R.

Automorphisms are held two ways: as integer matrices (column j is the
image of generator j) for serialisation, and as permutations of the element
list for fast evaluation.  Internally everything works on element indices.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

import sympy

from .errors import DomainError, InputError
from .groups import Element, FinAbGroup, elem_order, mult_order, units_mod

Perm = tuple[int, ...]


@dataclass(frozen=True)
class _Tables:
    add: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    gens: tuple[int, ...]  # index of each standard generator
    words: tuple[tuple[tuple[int, int], ...], ...]  # element -> ((j, a_j), ...)


@lru_cache(maxsize=None)
def _tables(A: FinAbGroup) -> _Tables:
    els = A.elements()
    add = tuple(tuple(A.index_of(A.add(s, t)) for t in els) for s in els)
    neg = tuple(A.index_of(A.neg(s)) for s in els)
    gens = tuple(A.index_of(tuple(int(i == j) for i in range(A.rank))) for j in range(A.rank))
    words = tuple(tuple((j, a) for j, a in enumerate(s) if a) for s in els)
    return _Tables(add, neg, gens, words)


def _extend(A: FinAbGroup, images: Sequence[int]) -> list[int]:
    """The endomorphism sending generator j to element index images[j]."""
    T = _tables(A)
    mult = []
    for j, g in enumerate(images):
        row = [0] * A.invariant_factors[j]
        for a in range(1, A.invariant_factors[j]):
            row[a] = T.add[row[a - 1]][g]
        mult.append(row)
    out = []
    for w in T.words:
        x = 0
        for j, a in w:
            x = T.add[x][mult[j][a]]
        out.append(x)
    return out


def matrix_to_perm(A: FinAbGroup, M: Sequence[Sequence[int]]) -> Perm:
    """Validate that M defines an automorphism of A and return it as a permutation."""
    r = A.rank
    try:
        M = [[int(a) for a in row] for row in M]
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed action matrix {M!r}") from exc
    if len(M) != r or any(len(row) != r for row in M):
        raise InputError(f"action matrix must be {r} x {r}")
    for j, d in enumerate(A.invariant_factors):
        for i, di in enumerate(A.invariant_factors):
            if d * M[i][j] % di:
                raise InputError("action matrix is not well defined on the group")
    cols = [A.index_of(A.reduce([M[i][j] for i in range(r)])) for j in range(r)]
    perm = tuple(_extend(A, cols))
    if len(set(perm)) != len(perm):
        raise InputError("action matrix is not bijective")
    return perm


def perm_to_matrix(A: FinAbGroup, perm: Perm) -> list[list[int]]:
    els = A.elements()
    cols = [els[perm[g]] for g in _tables(A).gens]
    return [[cols[j][i] for j in range(A.rank)] for i in range(A.rank)]


@dataclass(frozen=True)
class PsiModule:
    A: FinAbGroup
    n: int
    action: Mapping[int, Perm] = field(compare=False)  # residue k -> Psi_k

    def __post_init__(self):
        if self.n < 1:
            raise InputError("n must be >= 1")
        act = {k % self.n: tuple(p) for k, p in self.action.items()}
        if set(act) != set(units_mod(self.n)):
            raise InputError(f"action must be given on exactly (Z/{self.n})^x")
        object.__setattr__(self, "action", act)
        size = self.A.order
        T = _tables(self.A)
        for k, p in act.items():
            if len(p) != size or sorted(p) != list(range(size)):
                raise InputError(f"Psi_{k} is not a bijection")
            if list(p) != _extend(self.A, [p[g] for g in T.gens]):
                raise InputError(f"Psi_{k} is not a homomorphism")
        if act[1 % self.n] != tuple(range(size)):
            raise InputError("Psi_1 must be the identity")
        for k in act:
            for l in act:
                pk, pl, pkl = act[k], act[l], act[k * l % self.n]
                if any(pk[pl[a]] != pkl[a] for a in range(size)):
                    raise InputError(f"Psi_{k} Psi_{l} != Psi_{k * l % self.n}")

    @classmethod
    def _trusted(cls, A: FinAbGroup, n: int, action: dict[int, Perm]) -> PsiModule:
        """Skip validation; only for actions valid by construction."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "A", A)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "action", action)
        return obj

    @classmethod
    def from_matrices(cls, A: FinAbGroup, n: int, matrices: Mapping[int, Sequence[Sequence[int]]]) -> PsiModule:
        return cls(A, n, {k: matrix_to_perm(A, M) for k, M in matrices.items()})

    @classmethod
    def from_generators(cls, A: FinAbGroup, n: int, gens: Mapping[int, Sequence[Sequence[int]]]) -> PsiModule:
        """Close an action given on generators of (Z/n)^x; conflicts are errors."""
        if n < 1:
            raise InputError("n must be >= 1")
        size = A.order
        table: dict[int, Perm] = {1 % n: tuple(range(size))}
        gperms = {}
        for k, M in gens.items():
            if math.gcd(k, n) != 1:
                raise InputError(f"{k} is not a unit modulo {n}")
            gperms[k % n] = matrix_to_perm(A, M)
        frontier = [1 % n]
        while frontier:
            k = frontier.pop()
            for g, pg in gperms.items():
                kg = k * g % n
                comp = tuple(pg[a] for a in table[k])
                if kg in table:
                    if table[kg] != comp:
                        raise InputError(f"action is inconsistent at k = {kg}")
                else:
                    table[kg] = comp
                    frontier.append(kg)
        return cls(A, n, table)

    @classmethod
    def trivial(cls, A: FinAbGroup, n: int) -> PsiModule:
        return cls(A, n, {k: tuple(range(A.order)) for k in units_mod(n)})

    def _perm(self, k: int) -> Perm:
        if math.gcd(k, self.n) != 1:
            raise InputError(f"{k} is not coprime to {self.n}")
        return self.action[k % self.n]

    def psi(self, k: int, c: Element) -> Element:
        A = self.A
        return A.elements()[self._perm(k)[A.index_of(c)]]

    def to_json(self) -> dict:
        return {"invariant_factors": self.A.to_json(), "n": self.n,
                "action": {str(k): perm_to_matrix(self.A, p) for k, p in sorted(self.action.items())}}

    @classmethod
    def from_json(cls, data: Mapping) -> PsiModule:
        """Accepts the action on all of (Z/n)^x or only on generators."""
        try:
            A = FinAbGroup(tuple(data["invariant_factors"]))
            n = int(data["n"])
            mats = {int(k): M for k, M in data.get("action", {}).items()}
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise InputError(f"malformed module: {exc}") from exc
        if n >= 1 and {k % n for k in mats} == set(units_mod(n)):
            return cls.from_matrices(A, n, mats)
        return cls.from_generators(A, n, mats)


@dataclass(frozen=True)
class PsiSubgroup:
    parent: PsiModule
    elements: frozenset[Element]

    def __post_init__(self):
        A = self.parent.A
        idx = frozenset(A.index_of(s) for s in self.elements)
        object.__setattr__(self, "elements", frozenset(A.elements()[i] for i in idx))
        _check_subgroup(self.parent, idx)

    @classmethod
    def _from_indices(cls, M: PsiModule, idx: frozenset[int], check: bool = True) -> PsiSubgroup:
        if check:
            _check_subgroup(M, idx)
        obj = object.__new__(cls)
        els = M.A.elements()
        object.__setattr__(obj, "parent", M)
        object.__setattr__(obj, "elements", frozenset(els[i] for i in idx))
        return obj

    @classmethod
    def whole(cls, M: PsiModule) -> PsiSubgroup:
        return cls._from_indices(M, frozenset(range(M.A.order)), check=False)

    def indices(self) -> frozenset[int]:
        A = self.parent.A
        return frozenset(A.index_of(s) for s in self.elements)

    def sorted(self) -> list[Element]:
        return sorted(self.elements)


def _check_subgroup(M: PsiModule, idx: frozenset[int]):
    T = _tables(M.A)
    if 0 not in idx:
        raise InputError("subgroup must contain the identity")
    for a in idx:
        if T.neg[a] not in idx or any(T.add[a][b] not in idx for b in idx):
            raise InputError("not a subgroup")
    for k, p in M.action.items():
        if any(p[a] not in idx for a in idx):
            raise InputError(f"subgroup is not stable under Psi_{k}")


def xi(module: PsiModule, k: int, c: Element) -> Element:
    A = module.A
    return A.add(c, module.psi(k, c))


def xi_prime(module: PsiModule, k: int, c: Element) -> Element:
    A = module.A
    return A.add(A.neg(c), module.psi(k, c))


def _xi_idx(M: PsiModule, k: int, a: int) -> int:
    return _tables(M.A).add[a][M._perm(k)[a]]


def _xi_prime_idx(M: PsiModule, k: int, a: int) -> int:
    T = _tables(M.A)
    return T.add[T.neg[a]][M._perm(k)[a]]


def sd_kernel(R: PsiSubgroup) -> PsiSubgroup:
    M = R.parent
    return PsiSubgroup._from_indices(M, frozenset(a for a in R.indices() if _xi_idx(M, -1, a) == 0))


def at_image(R: PsiSubgroup) -> PsiSubgroup:
    M = R.parent
    if M.n % 2 == 0:
        raise DomainError("A^t is only defined for odd n")
    return PsiSubgroup._from_indices(M, frozenset(_xi_prime_idx(M, 2, a) for a in R.indices()))


def check_chain(R: PsiSubgroup) -> bool:
    """A^t(R) <= R_sd(R) <= R."""
    sd = sd_kernel(R)
    return at_image(R).elements <= sd.elements <= R.elements


def check_criteria_a(module: PsiModule, c: Element) -> bool:
    """For c with Psi_{-1}(c) = c: whether c is in ker Xi_{-1}.

    Raises if that answer ever disagrees with 2c = 0.
    """
    A = module.A
    c = A.element(c)
    if module.psi(-1, c) != c:
        raise DomainError("criterion (a) needs Psi_{-1}(c) = c")
    in_kernel = xi(module, -1, c) == A.identity
    if in_kernel != (A.scale(2, c) == A.identity):
        raise ArithmeticError("Xi_{-1}(c) = 1 and c^2 = 1 disagree")
    return in_kernel


def check_criteria_b(module: PsiModule, R: PsiSubgroup) -> bool:
    """Every Psi_2-fixed c in A^t(R) has n(2) c = 0, and the telescoping
    sum over j < n(2) of Psi_{2^j}(Xi'_2(d)) vanishes for every d in R."""
    n = module.n
    if n % 2 == 0:
        raise DomainError("criterion (b) needs n odd")
    T = _tables(module.A)
    m = mult_order(2, n)
    perms = [module._perm(pow(2, j, n)) for j in range(m)]
    image = set()
    for d in R.indices():
        c = _xi_prime_idx(module, 2, d)
        image.add(c)
        total = 0
        for p in perms:
            total = T.add[total][p[c]]
        if total:
            return False
    psi2 = module._perm(2)
    for c in image:
        if psi2[c] == c:
            x = 0
            for _ in range(m):
                x = T.add[x][c]
            if x:
                return False
    return True


# ---------------------------------------------------------------------------
# Prime-level report


R_NOT_SD = "in R \\ R_sd"
SD_NOT_AT = "in R_sd \\ A^t"
NO_CONCLUSION = "no conclusion"


@dataclass(frozen=True)
class PrimeReport:
    p: int
    c_order: int
    conclusion: str
    n2: int  # multiplicative order of 2 mod p

    def to_json(self) -> dict:
        return {"p": self.p, "c_order": self.c_order, "conclusion": self.conclusion,
                "mult_order_2": self.n2}


def criteria_prime_report(p: int, c_order: int) -> PrimeReport:
    """Which conclusion applies to an invariant class of the given order in Cl^0(O_K C_p).

    Order not dividing p-1: its (p-1)/2 power lies in R but not R_sd.
    Order 2 with p = -1 mod 8: it lies in R_sd but not A^t.
    """
    if p < 3 or not sympy.isprime(p):
        raise InputError(f"{p} is not an odd prime")
    if c_order < 1:
        raise InputError("c_order must be >= 1")
    n2 = mult_order(2, p)
    if (p - 1) % c_order:
        conclusion = R_NOT_SD
    elif c_order == 2 and p % 8 == 7:
        if n2 % 2 == 0:
            raise ArithmeticError(f"order of 2 mod {p} is even although p = -1 mod 8")
        conclusion = SD_NOT_AT
    else:
        conclusion = NO_CONCLUSION
    return PrimeReport(p, c_order, conclusion, n2)


# ---------------------------------------------------------------------------
# Exhaustive enumeration


@lru_cache(maxsize=None)
def automorphisms(A: FinAbGroup) -> tuple[Perm, ...]:
    """All automorphisms of A as permutations of A.elements()."""
    els = A.elements()
    choices = [[i for i, s in enumerate(els) if d % elem_order(A, s) == 0]
               for d in A.invariant_factors]
    out = []
    for imgs in itertools.product(*choices):
        perm = _extend(A, imgs)
        if len(set(perm)) == len(perm):
            out.append(tuple(perm))
    return tuple(out)


def all_actions(A: FinAbGroup, n: int) -> Iterator[PsiModule]:
    """Every (Z/n)^x action on A, for n with cyclic unit group.

    An action is fixed by the image alpha of a generator of (Z/n)^x, subject
    only to alpha^phi(n) = 1.
    """
    units = units_mod(n)
    if n <= 2:
        yield PsiModule.trivial(A, n)
        return
    phi = len(units)
    gen = next((g for g in units if mult_order(g, n) == phi), None)
    if gen is None:
        raise InputError(f"(Z/{n})^x is not cyclic")
    ident = tuple(range(A.order))
    for alpha in automorphisms(A):
        powers = [ident]
        for _ in range(phi):
            powers.append(tuple(alpha[i] for i in powers[-1]))
        if powers[phi] != ident:
            continue
        yield PsiModule._trusted(A, n, {pow(gen, i, n): powers[i] for i in range(phi)})
