"""Exact integer lattices: Hermite and Smith normal forms.

Row convention throughout: a lattice is the Z-span of the rows of a matrix.
Hermite form is upper echelon with positive pivots and entries above each
pivot reduced into ``[0, pivot)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError

Matrix = list[list[int]]


def hermite_form(rows: Iterable[Sequence[int]], ncols: int) -> Matrix:
    """Row Hermite normal form of the span of ``rows``; zero rows dropped."""
    A = [list(map(int, r)) for r in rows]
    for r in A:
        if len(r) != ncols:
            raise InputError(f"row of length {len(r)}, expected {ncols}")
    A = [r for r in A if any(r)]
    top = 0
    for col in range(ncols):
        if top == len(A):
            break
        while True:
            nz = [i for i in range(top, len(A)) if A[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][col]))
            A[top], A[piv] = A[piv], A[top]
            p = A[top][col]
            done = True
            for i in range(top + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[top])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if top < len(A) and A[top][col]:
            if A[top][col] < 0:
                A[top] = [-a for a in A[top]]
            p = A[top][col]
            for i in range(top):
                q = A[i][col] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[top])]
            top += 1
            A = A[:top] + [r for r in A[top:] if any(r)]
    return A[:top]


def smith_diagonal(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Diagonal of the Smith normal form, length ``min(nrows, ncols)``.

    Entries are non-negative and form a divisibility chain (zeros last).
    """
    A = [list(map(int, r)) for r in rows]
    m, n = len(A), ncols
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return [abs(A[i][i]) for i in range(t)] + [0] * (min(m, n) - t)
            i, j = best
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(A[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
    return [abs(A[i][i]) for i in range(min(m, n))]


def quotient_invariants(relations: Sequence[Sequence[int]], rank: int) -> list[int]:
    """Invariant factors of Z^rank / span(relations), units dropped.

    A free summand shows up as a trailing 0.
    """
    diag = smith_diagonal(relations, rank) if relations else []
    diag = diag + [0] * (rank - len(diag))
    return [d for d in diag if d != 1]


@dataclass(frozen=True)
class IntLattice:
    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], ambient_rank: int) -> IntLattice:
        H = hermite_form(gens, ambient_rank)
        return cls(ambient_rank, tuple(tuple(r) for r in H))

    @classmethod
    def full(cls, ambient_rank: int) -> IntLattice:
        return cls.from_generators(identity_rows(ambient_rank), ambient_rank)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(j for j, a in enumerate(r) if a) for r in self.basis]

    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_rank

    def index(self) -> int:
        """[Z^N : L]; only defined for full-rank lattices."""
        if not self.is_full_rank():
            raise InputError("index of a lattice that is not full rank")
        return math.prod(r[j] for r, j in zip(self.basis, self.pivots))

    def reduce(self, v: Sequence[int]) -> list[int]:
        v = list(v)
        for row, j in zip(self.basis, self.pivots):
            q = v[j] // row[j]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return v

    def __contains__(self, v: Sequence[int]) -> bool:
        if len(v) != self.ambient_rank:
            return False
        return not any(self.reduce(v))

    def __add__(self, other: IntLattice) -> IntLattice:
        if other.ambient_rank != self.ambient_rank:
            raise InputError("ambient ranks differ")
        return IntLattice.from_generators(self.basis + other.basis, self.ambient_rank)

    def plus_multiple_of_full(self, m: int) -> IntLattice:
        """L + m Z^N."""
        gens = list(self.basis) + [[m * a for a in r] for r in identity_rows(self.ambient_rank)]
        return IntLattice.from_generators(gens, self.ambient_rank)

    def to_json(self) -> dict:
        return {"ambient_rank": self.ambient_rank, "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, data: dict) -> IntLattice:
        return cls.from_generators(data["basis"], int(data["ambient_rank"]))


def identity_rows(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def congruence_kernel(matrix: Sequence[Sequence[int]], modulus: int) -> IntLattice:
    """The lattice {v in Z^N : v . matrix == 0 (mod modulus)}.

    ``matrix`` is N x k. Computed by taking the Hermite form of the rows
    ``[matrix | I]`` and ``[modulus * I_k | 0]`` and keeping the rows whose
    first k entries vanish.
    """
    N = len(matrix)
    k = len(matrix[0]) if N else 0
    if modulus < 1:
        raise InputError("modulus must be positive")
    gens = [list(matrix[i]) + [int(i == j) for j in range(N)] for i in range(N)]
    gens += [[modulus * int(i == j) for j in range(k)] + [0] * N for i in range(k)]
    H = hermite_form(gens, k + N)
    kern = [r[k:] for r in H if not any(r[:k])]
    return IntLattice(N, tuple(tuple(r) for r in kern))
