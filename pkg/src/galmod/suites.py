"""Exhaustive verification suites shared by the CLI and the acceptance tests.

Each suite returns a SuiteResult; the first counterexample found is kept
and the suite stops there.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable, Iterator

import sympy

from . import homs, psi_model, quad_arith, swan_lattice
from .errors import ResourceError
from .groups import (CyclicSubgroup, FinAbGroup, abelian_groups, cyclic_subgroups,
                     elem_order, quotient_by_cyclic, subgroups, unit_subgroups)
from .stickelberger import GaloisModel, character_group, is_equivariant, pairing

MAX_SIZE_BOUND = 64
SWAN_R_VALUES = (2, -2, 3, -3, 5, 7)
PSI_MODULI = (3, 5, 7, 9)


@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    checked: int = 0
    counterexample: dict | None = None
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "counterexample": self.counterexample, "seconds": round(self.seconds, 3)}


def _run(name: str, cases: Iterator[tuple[bool, Callable[[], dict]]]) -> SuiteResult:
    """Consume (ok, describe) pairs until the first failure."""
    res = SuiteResult(name)
    start = time.perf_counter()
    for ok, describe in cases:
        res.checked += 1
        if not ok:
            res.passed = False
            res.counterexample = describe()
            break
    res.seconds = time.perf_counter() - start
    return res


def _group_json(G: FinAbGroup) -> list[int]:
    return G.to_json()


# ---------------------------------------------------------------------------
# Stickelberger and homs


def pair_sum(max_order: int = 24) -> SuiteResult:
    """<chi,s> + <chi,-s> is 0 if chi(s) = 1 and 1 otherwise."""
    def cases():
        for G in abelian_groups(max_order):
            for chi in character_group(G):
                for s in G.elements():
                    total = pairing(chi, s) + pairing(chi, G.neg(s))
                    yield total == (0 if chi(s) == 0 else 1), \
                        lambda G=G, chi=chi, s=s, total=total: {
                            "group": _group_json(G), "chi": chi.to_json(), "s": list(s), "sum": str(total)}
    return _run("pair_sum", cases())


def pairing_equivariance(max_order: int = 24) -> SuiteResult:
    """<chi^d, s> = <chi, d s> for d prime to exp(G)."""
    def cases():
        for G in abelian_groups(max_order):
            e = G.exponent
            ds = [d for d in range(1, max(e, 2)) if math.gcd(d, e) == 1]
            for chi in character_group(G):
                for s in G.elements():
                    for d in ds:
                        yield pairing(chi.power(d), s) == pairing(chi, G.scale(d, s)), \
                            lambda G=G, chi=chi, s=s, d=d: {
                                "group": _group_json(G), "chi": chi.to_json(), "s": list(s), "d": d}
    return _run("pairing_equivariance", cases())


def rag_theta_t(max_order: int = 16) -> SuiteResult:
    """rag(c_{t,x,i}) = Theta^t(g_{t,x,i}) on A_Ghat, all t and both variants."""
    def cases():
        for G in abelian_groups(max_order):
            for t in G.elements()[1:]:
                for variant in (1, 2):
                    if variant == 2 and elem_order(G, t) % 2 == 0:
                        continue
                    c = homs.c_family(G, t, variant)
                    g = homs.g_family(G, t, variant)
                    yield homs.verify_rag_equals_theta_t(c, g), \
                        lambda G=G, t=t, variant=variant: {
                            "group": _group_json(G), "t": list(t), "variant": variant}
    return _run("rag_theta_t", cases())


def swan1a(max_n: int = 12) -> SuiteResult:
    """rag(c_H^{d_n}) = Theta^t(g) for G = H = C_n and every D <= (Z/n)^x."""
    def cases():
        for n in range(2, max_n + 1):
            G = FinAbGroup.cyclic(n)
            H = CyclicSubgroup.generated_by(G, (1,))
            for D in unit_subgroups(n):
                model = GaloisModel(n, tuple(sorted(D)))
                yield homs.verify_swan1a(G, H, model), \
                    lambda n=n, D=D: {"n": n, "D": sorted(D)}
    return _run("swan1a", cases())


def ccc_cyclic(max_n: int = 12) -> SuiteResult:
    """c_H = c(chi) c(chi^-1) for every odd-order H in C_n."""
    def cases():
        for n in range(1, max_n + 1):
            G = FinAbGroup.cyclic(n)
            for H in cyclic_subgroups(G):
                if H.order % 2:
                    yield homs.verify_ccc(G, H), lambda n=n, H=H: {"n": n, "subgroup_gen": list(H.generator)}
    return _run("ccc_cyclic", cases())


def ccc(max_order: int = 30, max_h: int = 15) -> SuiteResult:
    def cases():
        for G in abelian_groups(max_order):
            for H in cyclic_subgroups(G):
                if H.order % 2 and H.order <= max_h:
                    yield homs.verify_ccc(G, H), \
                        lambda G=G, H=H: {"group": _group_json(G), "subgroup_gen": list(H.generator)}
    return _run("ccc", cases())


def swan2b(max_order: int = 16) -> SuiteResult:
    """c(chi) c(chi^-1) has exponent delta(G) for every admissible (t, chi)."""
    def cases():
        for G in abelian_groups(max_order):
            if G.order == 1:
                continue
            delta = homs.delta_of_group(G)
            for t in G.elements()[1:]:
                if delta == 1 and elem_order(G, t) % 2 == 0:
                    continue
                for chi in character_group(G):
                    if chi(t) == 0:
                        continue
                    got = homs.verify_swan2b_exponent(G, t, chi)
                    yield got == delta, lambda G=G, t=t, chi=chi, got=got: {
                        "group": _group_json(G), "t": list(t), "chi": chi.to_json(),
                        "exponent": got, "delta": delta}
    return _run("swan2b", cases())


def equivariance(max_order: int = 12) -> SuiteResult:
    """c_swan is equivariant for every D; c_family variant 1 for every D;
    families and g_family variant 1 for D = 1 mod |t|."""
    def cases():
        for G in abelian_groups(max_order):
            e = G.exponent
            models = [GaloisModel(e, tuple(sorted(D))) for D in unit_subgroups(e)] if e > 1 else []
            for H in cyclic_subgroups(G):
                for M in models:
                    yield is_equivariant(homs.c_swan(G, H), M), \
                        lambda G=G, H=H, M=M: {"group": _group_json(G), "hom": "c_swan",
                                               "subgroup_gen": list(H.generator), "D": sorted(M.elements)}
            for t in G.elements()[1:]:
                n = elem_order(G, t)
                for M in models:
                    fixes = all(d % n == 1 % n for d in M.elements)
                    homs_to_check = [("c_family_1", homs.c_family(G, t, 1))]
                    if fixes:
                        homs_to_check.append(("g_family_1", homs.g_family(G, t, 1)))
                        if n % 2:
                            homs_to_check.append(("c_family_2", homs.c_family(G, t, 2)))
                            homs_to_check.append(("g_family_2", homs.g_family(G, t, 2)))
                    for label, h in homs_to_check:
                        yield is_equivariant(h, M), \
                            lambda G=G, t=t, M=M, label=label: {"group": _group_json(G), "hom": label,
                                                                "t": list(t), "D": sorted(M.elements)}
    return _run("equivariance", cases())


# ---------------------------------------------------------------------------
# Swan lattices


def swan_lattice_suite(max_order: int = 12, r_values=SWAN_R_VALUES) -> SuiteResult:
    """Local freeness and the fibre-product isomorphism for every (G, H, r)."""
    def cases():
        for G in abelian_groups(max_order):
            for H in subgroups(G):
                for r in r_values:
                    if math.gcd(r, H.order) != 1:
                        continue
                    lf = swan_lattice.verify_locally_free(G, H, r)
                    _, phi = swan_lattice.fiber_module(G, H, r)
                    yield lf.passed and phi.passed, \
                        lambda G=G, H=H, r=r, lf=lf, phi=phi: {
                            "group": _group_json(G), "subgroup": sorted(map(list, H.members)), "r": r,
                            "index": lf.index, "per_prime": [c.to_json() for c in lf.per_prime],
                            "phi": phi.to_json()}
    return _run("swan_lattice", cases())


# ---------------------------------------------------------------------------
# Psi-modules


def _modules(max_order: int, moduli=PSI_MODULI):
    for n in moduli:
        for A in abelian_groups(max_order):
            for M in psi_model.all_actions(A, n):
                yield M


def psi_criteria(max_order: int = 16, moduli=PSI_MODULI) -> SuiteResult:
    """Criterion (a) at every Psi_{-1}-fixed class; criterion (b) with the
    telescoping identity on R = A."""
    def cases():
        for M in _modules(max_order, moduli):
            R = psi_model.PsiSubgroup.whole(M)
            for c in M.A.elements():
                if M.psi(-1, c) == c:
                    try:
                        psi_model.check_criteria_a(M, c)
                        ok = True
                    except ArithmeticError:
                        ok = False
                    yield ok, lambda M=M, c=c: {"module": M.to_json(), "c": list(c), "criterion": "a"}
            yield psi_model.check_criteria_b(M, R), \
                lambda M=M: {"module": M.to_json(), "criterion": "b"}
    return _run("psi_criteria", cases())


def psi_chain(max_order: int = 16, moduli=PSI_MODULI) -> SuiteResult:
    """A^t <= R_sd <= R on R = A for every action."""
    def cases():
        for M in _modules(max_order, moduli):
            R = psi_model.PsiSubgroup.whole(M)
            yield psi_model.check_chain(R), lambda M=M, R=R: {
                "module": M.to_json(),
                "at_image": sorted(map(list, psi_model.at_image(R).elements)),
                "sd_kernel": sorted(map(list, psi_model.sd_kernel(R).elements))}
    return _run("psi_chain", cases())


def psi_chain_inversion(max_order: int = 16, moduli=PSI_MODULI) -> SuiteResult:
    """The chain on actions where Psi_{-1} is inversion."""
    def cases():
        for M in _modules(max_order, moduli):
            A = M.A
            if all(M.psi(-1, c) == A.neg(c) for c in A.elements()):
                yield psi_model.check_chain(psi_model.PsiSubgroup.whole(M)), \
                    lambda M=M: {"module": M.to_json()}
    return _run("psi_chain_inversion", cases())


# ---------------------------------------------------------------------------
# Groups and quadratic fields


def quotient_flag(max_n: int = 6, max_k: int = 3) -> SuiteResult:
    """C_n^k / <x> surjects onto C_n^(k-1) for every x."""
    def cases():
        for n in range(1, max_n + 1):
            for k in range(0, max_k + 1):
                for x in itertools.product(range(n), repeat=k):
                    res = quotient_by_cyclic(n, k, x)
                    yield res.surjects, lambda n=n, k=k, x=x, res=res: {
                        "n": n, "k": k, "x": list(x), "invariant_factors": list(res.invariant_factors)}
    return _run("quotient_flag", cases())


def reciprocity(bound: int = 200) -> SuiteResult:
    primes = list(sympy.primerange(3, bound + 1))

    def cases():
        for p in primes:
            for law, ok in quad_arith.reciprocity_laws(p).items():
                yield ok, lambda p=p, law=law: {"p": p, "law": law}
            for q in primes:
                if q != p:
                    yield quad_arith.reciprocity_laws(p, q)["main"], lambda p=p, q=q: {"p": p, "q": q, "law": "main"}
    return _run("reciprocity", cases())


def remark(fields=(2, 5, 13), bound: int = 100) -> SuiteResult:
    def cases():
        for D in fields:
            K = quad_arith.QuadField(D)
            for p in sympy.primerange(3, bound + 1):
                if p % 4 == 3 and quad_arith.splitting_type(K, p) == quad_arith.INERT:
                    rep = quad_arith.remark_check(K, p)
                    yield rep.passed, lambda rep=rep: rep.to_json()
    return _run("remark", cases())


def explicit_witness(fields=((-1, 4), (-3, 3), (-2, 8), (-7, 7)), bound: int = 400) -> SuiteResult:
    """V_p has an element of order four for every searched prime."""
    def cases():
        for D, m in fields:
            for entry in quad_arith.explicit_prime_search(m, bound, field=D):
                yield entry["has_order_four"], lambda D=D, entry=entry: {"D": D, **entry}
    return _run("explicit_witness", cases())


# ---------------------------------------------------------------------------


def all_suites(size_bound: int) -> list[SuiteResult]:
    """Every suite with group orders capped at size_bound (and each suite's own cap)."""
    if size_bound < 1:
        raise ValueError("size_bound must be >= 1")
    if size_bound > MAX_SIZE_BOUND:
        raise ResourceError(f"size_bound {size_bound} exceeds {MAX_SIZE_BOUND}")
    b = size_bound
    return [
        pair_sum(min(b, 24)),
        pairing_equivariance(min(b, 24)),
        rag_theta_t(min(b, 16)),
        swan1a(min(b, 12)),
        ccc(min(b, 30)),
        swan2b(min(b, 16)),
        equivariance(min(b, 12)),
        swan_lattice_suite(min(b, 12)),
        psi_criteria(min(b, 16)),
        psi_chain(min(b, 16)),
        psi_chain_inversion(min(b, 16)),
        quotient_flag(min(b, 6), 3),
        reciprocity(),
        remark(),
        explicit_witness(),
    ]
