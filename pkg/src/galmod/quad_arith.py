"""Quadratic-field arithmetic: Legendre symbols, V_p(O_K), fundamental units.

O_K has Z-basis (1, w) with w = sqrt(D), or w = (1 + sqrt(D))/2 when
D = 1 mod 4.  An element x + y w is a pair (x, y); w is a root of
X^2 - T X + N.  Residues mod p are pairs reduced mod p.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
import sympy
from sympy.ntheory import discrete_log, primitive_root, sqrt_mod
from sympy.ntheory.factor_ import core

from .errors import DomainError, InputError
from .lattice import quotient_invariants

SPLIT, INERT, RAMIFIED = "split", "inert", "ramified"

Pair = tuple[int, int]


def _odd_prime(p: int):
    if not isinstance(p, int) or p < 3 or not sympy.isprime(p):
        raise InputError(f"{p} is not an odd prime")


@dataclass(frozen=True)
class QuadField:
    D: int

    def __post_init__(self):
        D = int(self.D)
        object.__setattr__(self, "D", D)
        if D in (0, 1) or core(abs(D)) != abs(D):
            raise InputError(f"D = {D} is not a squarefree integer other than 0, 1")

    @property
    def omega_is_half(self) -> bool:
        return self.D % 4 == 1

    @property
    def disc(self) -> int:
        return self.D if self.omega_is_half else 4 * self.D

    @property
    def conductor(self) -> int:
        return abs(self.disc)

    @property
    def trace_w(self) -> int:
        return 1 if self.omega_is_half else 0

    @property
    def norm_w(self) -> int:
        return (1 - self.D) // 4 if self.omega_is_half else -self.D

    @property
    def is_real(self) -> bool:
        return self.D > 0

    def norm(self, a: Pair) -> int:
        x, y = a
        return x * x + self.trace_w * x * y + self.norm_w * y * y

    def mul(self, a: Pair, b: Pair, p: int | None = None) -> Pair:
        (x, y), (u, v) = a, b
        re = x * u - self.norm_w * y * v
        im = x * v + y * u + self.trace_w * y * v
        if p is None:
            return (re, im)
        return (re % p, im % p)

    def power(self, a: Pair, k: int, p: int) -> Pair:
        result: Pair = (1 % p, 0)
        base = (a[0] % p, a[1] % p)
        while k:
            if k & 1:
                result = self.mul(result, base, p)
            base = self.mul(base, base, p)
            k >>= 1
        return result

    def unit_generators(self) -> list[Pair]:
        """Generators of O_K^x: a root of unity, plus the fundamental unit if real."""
        if self.D == -1:
            return [(0, 1)]  # i, order 4
        if self.D == -3:
            return [(0, 1)]  # (1 + sqrt(-3))/2, order 6
        if self.D < 0:
            return [(-1, 0)]
        return [(-1, 0), fundamental_unit(self).unit]

    def to_json(self) -> dict:
        return {"D": self.D, "disc": self.disc}


# ---------------------------------------------------------------------------
# Legendre symbols


def legendre(a: int, p: int) -> int:
    """(a/p) by reciprocity (Jacobi-symbol reduction)."""
    _odd_prime(p)
    a %= p
    if a == 0:
        return 0
    n, result = p, 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def reciprocity_laws(p: int, q: int | None = None) -> dict[str, bool]:
    """The supplementary laws at p and, given q, the main law for (p, q)."""
    out = {"two": legendre(2, p) == (-1) ** ((p * p - 1) // 8),
           "minus_one": legendre(-1, p) == (-1) ** ((p - 1) // 2)}
    if q is not None and q != p:
        _odd_prime(q)
        out["main"] = legendre(q, p) * legendre(p, q) == (-1) ** (((p - 1) // 2) * ((q - 1) // 2))
    return out


def p_mod8_criterion(p: int) -> bool:
    """p = -1 mod 8, cross-checked against (-1/p) = -1 and (2/p) = 1."""
    _odd_prime(p)
    result = p % 8 == 7
    if result != (legendre(-1, p) == -1 and legendre(2, p) == 1):
        raise ArithmeticError(f"mod 8 criterion disagrees with the symbols at p = {p}")
    return result


def splitting_type(K: QuadField, p: int) -> str:
    if p == 2:
        raise DomainError("p = 2 is not supported")
    _odd_prime(p)
    if K.disc % p == 0:
        return RAMIFIED
    return SPLIT if legendre(K.disc, p) == 1 else INERT


# ---------------------------------------------------------------------------
# Fundamental units


@dataclass(frozen=True)
class FundamentalUnit:
    unit: Pair
    norm: int


def fundamental_unit(K: QuadField) -> FundamentalUnit:
    """Least unit > 1, from the continued fraction of w."""
    if K.D <= 0:
        raise DomainError("fundamental units exist only for real quadratic fields")
    d = K.D
    P, Q = (1, 2) if K.omega_is_half else (0, 1)
    s = math.isqrt(d)
    h_prev, h = 1, 0
    k_prev, k = 0, 1
    while True:
        a = (P + s) // Q
        h_prev, h = a * h_prev + h, h_prev
        k_prev, k = a * k_prev + k, k_prev
        # (h_prev, k_prev) is the newest convergent
        eta = (h_prev, -k_prev)
        n = K.norm(eta)
        if n in (1, -1):
            return FundamentalUnit((h_prev - k_prev * K.trace_w, k_prev), n)
        P = a * Q - P
        Q = (d - P * P) // Q


# ---------------------------------------------------------------------------
# Residue rings and V_p


def _order_in(K: QuadField, a: Pair, p: int, group_order: int) -> int:
    m = group_order
    for q in sympy.primefactors(group_order):
        while m % q == 0 and K.power(a, m // q, p) == (1, 0):
            m //= q
    return m


def _fp2_generator(K: QuadField, p: int) -> Pair:
    n = p * p - 1
    qs = sympy.primefactors(n)
    for x in range(p):
        for y in range(1, p):
            g = (x, y)
            if all(K.power(g, n // q, p) != (1, 0) for q in qs):
                return g
    raise ArithmeticError("no generator found; ring is not a field")


def _bsgs(K: QuadField, g: Pair, h: Pair, p: int, n: int) -> int:
    """log_g h in a cyclic group of order n inside (O_K/p)^x."""
    m = math.isqrt(n) + 1
    table = {}
    e: Pair = (1, 0)
    for j in range(m):
        table.setdefault(e, j)
        e = K.mul(e, g, p)
    step = K.power(g, n - m, p)  # g^-m
    y = (h[0] % p, h[1] % p)
    for i in range(m + 1):
        if y in table:
            return (i * m + table[y]) % n
        y = K.mul(y, step, p)
    raise ArithmeticError("discrete logarithm not found")


@dataclass(frozen=True)
class VpResult:
    p: int
    splitting: str
    full_group: tuple[int, ...]
    unit_image_order: int
    vp_factors: tuple[int, ...]
    has_order_four: bool

    @property
    def vp_order(self) -> int:
        return math.prod(self.vp_factors)

    def to_json(self) -> dict:
        return {"p": self.p, "splitting": self.splitting, "full_group": list(self.full_group),
                "unit_image_order": self.unit_image_order, "vp_factors": list(self.vp_factors),
                "vp_order": self.vp_order, "has_order_four": self.has_order_four}


def residue_logs(K: QuadField, p: int, a: Pair) -> tuple[list[list[int]], list[int]]:
    """Relations of (O_K/p)^x in log coordinates, and the log vector of a."""
    kind = splitting_type(K, p)
    x, y = a[0] % p, a[1] % p
    if kind == INERT:
        n = p * p - 1
        g = _fp2_generator(K, p)
        return [[n]], [_bsgs(K, g, (x, y), p, n)]
    g = primitive_root(p)
    if kind == SPLIT:
        s = sqrt_mod(K.disc % p, p)
        inv2 = pow(2, -1, p)
        roots = [(K.trace_w + s) * inv2 % p, (K.trace_w - s) * inv2 % p]
        vals = [(x + y * rho) % p for rho in roots]
        if 0 in vals:
            raise InputError(f"{a} is not a unit modulo {p}")
        return [[p - 1, 0], [0, p - 1]], [discrete_log(p, v, g) for v in vals]
    # ramified: O_K/p = F_p[e]/(e^2) with w = rho + e
    rho = K.trace_w * pow(2, -1, p) % p
    u = (x + y * rho) % p
    if u == 0:
        raise InputError(f"{a} is not a unit modulo {p}")
    return [[p - 1, 0], [0, p]], [discrete_log(p, u, g), y * pow(u, -1, p) % p]


def vp_structure(K: QuadField, p: int) -> VpResult:
    """Structure of V_p(O_K) = (O_K/p)^x / image of O_K^x."""
    kind = splitting_type(K, p)
    rels = None
    unit_logs = []
    for u in K.unit_generators():
        rels, v = residue_logs(K, p, u)
        unit_logs.append(v)
    rank = len(rels[0])
    full = tuple(quotient_invariants(rels, rank))
    vp = tuple(quotient_invariants(rels + unit_logs, rank))
    full_order, vp_order = math.prod(full), math.prod(vp)
    if full_order % vp_order:
        raise ArithmeticError("V_p order does not divide the residue group order")
    return VpResult(p, kind, full, full_order // vp_order, vp, any(d % 4 == 0 for d in vp))


def element_order_mod_p(K: QuadField, a: Pair, p: int) -> int:
    rels, _ = residue_logs(K, p, a)
    group_order = math.prod(quotient_invariants(rels, len(rels[0])))
    return _order_in(K, a, p, group_order)


@dataclass(frozen=True)
class RemarkReport:
    D: int
    p: int
    eps: Pair
    power_is_minus_one: bool
    n_p: int
    first_quotient: Fraction
    vp_order: int

    @property
    def passed(self) -> bool:
        q = self.first_quotient
        return (self.power_is_minus_one and q.denominator == 1 and q.numerator % 2 == 1
                and self.vp_order % 2 == 1 and self.vp_order == (self.p ** 2 - 1) // self.n_p)

    def to_json(self) -> dict:
        return {"D": self.D, "p": self.p, "eps": list(self.eps),
                "eps_power_is_minus_one": self.power_is_minus_one, "n_p": self.n_p,
                "first_quotient": str(self.first_quotient), "vp_order": self.vp_order,
                "pass": self.passed}


def remark_check(K: QuadField, p: int) -> RemarkReport:
    """For eps of norm -1 and p inert, p = 3 mod 4: eps^(p+1) = -1 and |V_p| odd."""
    if not K.is_real:
        raise DomainError("needs a real quadratic field")
    fu = fundamental_unit(K)
    if fu.norm != -1:
        raise DomainError(f"fundamental unit of Q(sqrt {K.D}) has norm +1")
    if splitting_type(K, p) != INERT:
        raise DomainError(f"{p} is not inert in Q(sqrt {K.D})")
    if p % 4 != 3:
        raise DomainError(f"{p} is not 3 mod 4")
    eps = fu.unit
    minus_one = K.power(eps, p + 1, p) == (p - 1, 0)
    n_p = _order_in(K, eps, p, p * p - 1)
    return RemarkReport(K.D, p, eps, minus_one, n_p, Fraction(2 * (p + 1), n_p),
                        vp_structure(K, p).vp_order)


# ---------------------------------------------------------------------------
# Chevalley's formula and the class-number bound


@dataclass(frozen=True)
class ChevalleyInput:
    h_K: int
    r: int
    e_list: tuple[int, ...] = ()
    norm_index: int = 1
    degree: int = 1

    def __post_init__(self):
        object.__setattr__(self, "e_list", tuple(int(e) for e in self.e_list))
        if self.h_K < 1:
            raise InputError("h_K must be positive")
        if self.r < 0:
            raise InputError("r must be non-negative")
        if any(e < 1 for e in self.e_list):
            raise InputError("ramification indices must be positive")
        if self.norm_index < 1 or self.degree < 1:
            raise InputError("norm index and degree must be positive")


@dataclass(frozen=True)
class ChevalleyResult:
    value: Fraction
    integral: bool

    def to_json(self) -> dict:
        return {"value": str(self.value), "integral": self.integral}


def chevalley(data: ChevalleyInput) -> ChevalleyResult:
    """h_K 2^r prod(e) / (norm_index * degree)."""
    value = Fraction(data.h_K * 2 ** data.r * math.prod(data.e_list), data.norm_index * data.degree)
    return ChevalleyResult(value, value.denominator == 1)


@dataclass(frozen=True)
class Lem3Bound:
    value: Fraction
    integral: bool
    even: bool
    hypothesis_ok: bool

    def to_json(self) -> dict:
        return {"value": str(self.value), "integral": self.integral, "even": self.even,
                "hypothesis_ok": self.hypothesis_ok}


def lem3_bound(r1: int, r2: int, n0: int, p: int) -> Lem3Bound:
    """2^r1 (p-1)^r2 / n0, the forced divisor of the ambiguous class number.

    The evenness hypothesis is r1 >= 1 and r1 >= 2 when r2 = 0; a real place
    also forces n0 = 2, which matters when r2 = 0.
    """
    _odd_prime(p)
    if r1 < 0 or r2 < 0:
        raise InputError("r1 and r2 must be non-negative")
    if n0 < 1 or (p - 1) % n0:
        raise InputError(f"n0 = {n0} does not divide p - 1 = {p - 1}")
    value = Fraction(2 ** r1 * (p - 1) ** r2, n0)
    integral = value.denominator == 1
    even = integral and value.numerator % 2 == 0
    hyp = r1 >= 1 and (r2 >= 1 or (r1 >= 2 and n0 == 2))
    return Lem3Bound(value, integral, even, hyp)


# ---------------------------------------------------------------------------
# Swan subgroup tables and the prime search


def _imaginary(D: int) -> QuadField:
    K = QuadField(D)
    if D >= 0:
        raise DomainError("needs an imaginary quadratic field")
    if D in (-1, -3):
        raise DomainError("D = -1 and D = -3 are out of scope here")
    return K


@dataclass(frozen=True)
class KobayashiResult:
    D: int
    p: int
    symbol: int
    candidates: tuple[int, int]  # cyclic orders; which one occurs is left open
    r_strictly_contains_sd: bool
    sd_strictly_contains_at: bool

    def to_json(self) -> dict:
        return {"D": self.D, "p": self.p, "legendre": self.symbol,
                "candidates": [f"C{n}" for n in self.candidates],
                "candidate_orders": list(self.candidates),
                "R_strictly_contains_R_sd": self.r_strictly_contains_sd,
                "R_sd_strictly_contains_A_t": self.sd_strictly_contains_at}


def kobayashi_swan(D: int, p: int) -> KobayashiResult:
    _odd_prime(p)
    _imaginary(D)
    if D % p == 0:
        raise DomainError(f"p = {p} divides D = {D}")
    s = legendre(D, p)
    base = p + 1 if s == -1 else p - 1
    return KobayashiResult(D, p, s, (base // 2, base),
                           s == -1 and p != 3, s == -1 and p % 8 == 7)


def explicit_prime_search(m: int, bound: int, field: int | None = None) -> list[dict]:
    """Primes p <= bound with p = -1 mod 8 and p = -1 mod 2m, ascending.

    With ``field`` = D, each prime also carries whether V_p(O_K) has an
    element of order four; D must be imaginary with conductor m.
    """
    if m < 3:
        raise InputError("conductor m must be >= 3")
    K = None
    if field is not None:
        K = QuadField(field)
        if K.D >= 0 or K.conductor != m:
            raise DomainError(f"Q(sqrt {field}) is not imaginary of conductor {m}")
    out = []
    for p in sympy.primerange(3, bound + 1):
        if p % 8 == 7 and (p + 1) % (2 * m) == 0:
            entry = {"p": p}
            if K is not None:
                entry["has_order_four"] = vp_structure(K, p).has_order_four
            out.append(entry)
    return out


def example_deduction(D: int, p: int) -> bool:
    """Every prime q | D is a square mod p, and so (D/p) = -1."""
    _odd_prime(p)
    K = _imaginary(D)
    m = K.conductor
    if p % 8 != 7 or (p + 1) % (2 * m):
        raise DomainError(f"p = {p} is not -1 mod 8 and -1 mod {2 * m}")
    squares = all(legendre(q, p) == 1 for q in sympy.primefactors(abs(D)))
    return squares and legendre(-1, p) == -1 and legendre(D, p) == -1
