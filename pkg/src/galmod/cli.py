"""galmod command line.

Every command prints one JSON object {command, inputs, outputs, status}.
Exit codes: 0 ok, 1 a verification suite failed, 2 bad usage or input,
3 domain error, 4 resource error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import psi_model, quad_arith, suites, swan_lattice
from .errors import DomainError, InputError, ResourceError
from .groups import CyclicSubgroup, FinAbGroup
from .stickelberger import a_hat_lattice

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_DOMAIN, EXIT_RESOURCE = 0, 1, 2, 3, 4


def parse_ints(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(a) for a in text.split(",")]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def parse_group(text: str) -> FinAbGroup:
    """'2,4' is C2 x C4; '1' is the trivial group."""
    orders = parse_ints(text)
    if not orders:
        raise InputError("empty group spec")
    return FinAbGroup.from_orders(orders)


def _load_json(text: str):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# Commands; each returns (inputs, outputs, exit_code)


def cmd_stickelberger(args):
    G = parse_group(args.group)
    L = a_hat_lattice(G)
    return ({"group": args.group},
            {"invariant_factors": G.to_json(), "order": G.order, "basis": [list(r) for r in L.basis],
             "index": L.index()}, EXIT_OK)


def cmd_swan(args):
    G = parse_group(args.group)
    coords = parse_ints(args.gen)
    if coords and len(coords) != G.rank:
        raise InputError(f"generator needs {G.rank} coordinates")
    t = G.reduce(coords) if coords else G.identity
    H = CyclicSubgroup.generated_by(G, t)
    inputs = {"group": args.group, "gen": list(t), "r": args.r}
    try:
        cert = swan_lattice.swan_certificate(G, H, args.r)
    except InputError as exc:
        if "coprime" in str(exc):
            raise DomainError(str(exc)) from exc
        raise
    return inputs, cert, EXIT_OK


def cmd_search(args):
    primes = quad_arith.explicit_prime_search(args.m, args.bound, field=args.field)
    out = {"primes": [e["p"] for e in primes]}
    if args.field is not None:
        out["witnesses"] = primes
    return {"m": args.m, "bound": args.bound, "field": args.field}, out, EXIT_OK


def cmd_vp(args):
    K = quad_arith.QuadField(args.D)
    return {"D": args.D, "p": args.p}, quad_arith.vp_structure(K, args.p).to_json(), EXIT_OK


def cmd_chevalley(args):
    if args.lem3:
        r1, r2, n0, p = args.lem3
        return ({"r1": r1, "r2": r2, "n0": n0, "p": p},
                quad_arith.lem3_bound(r1, r2, n0, p).to_json(), EXIT_OK)
    data = quad_arith.ChevalleyInput(args.h, args.r, tuple(parse_ints(args.e)), args.norm_index, args.degree)
    inputs = {"h_K": data.h_K, "r": data.r, "e_list": list(data.e_list),
              "norm_index": data.norm_index, "degree": data.degree}
    return inputs, quad_arith.chevalley(data).to_json(), EXIT_OK


def cmd_kobayashi(args):
    return {"D": args.D, "p": args.p}, quad_arith.kobayashi_swan(args.D, args.p).to_json(), EXIT_OK


def cmd_psi(args):
    if args.prime_report:
        p, order = args.prime_report
        return {"p": p, "c_order": order}, psi_model.criteria_prime_report(p, order).to_json(), EXIT_OK
    if not args.module:
        raise InputError("psi needs --module or --prime-report")
    M = psi_model.PsiModule.from_json(_load_json(args.module))
    if args.subgroup:
        R = psi_model.PsiSubgroup(M, frozenset(tuple(s) for s in _load_json(args.subgroup)))
    else:
        R = psi_model.PsiSubgroup.whole(M)
    out = {"module": M.to_json(), "R": [list(s) for s in R.sorted()],
           "sd_kernel": [list(s) for s in psi_model.sd_kernel(R).sorted()]}
    if M.n % 2:
        out["at_image"] = [list(s) for s in psi_model.at_image(R).sorted()]
        out["chain"] = psi_model.check_chain(R)
        out["criteria_b"] = psi_model.check_criteria_b(M, R)
    return {"module": args.module, "subgroup": args.subgroup}, out, EXIT_OK


def cmd_verify_all(args):
    results = suites.all_suites(args.size_bound)
    ok = all(r.passed for r in results)
    out = {"all_passed": ok, "suites": [r.to_json() for r in results],
           "seconds": round(sum(r.seconds for r in results), 3)}
    return {"size_bound": args.size_bound}, out, EXIT_OK if ok else EXIT_FAILED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="galmod", description="Galois module structure calculators.")
    ap.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stickelberger", help="Hermite basis and index of A_Ghat")
    p.add_argument("group", help="cyclic orders, e.g. 2,4")
    p.set_defaults(func=cmd_stickelberger)

    p = sub.add_parser("swan", help="local-freeness and fibre-product certificate for (r, Sigma_H)")
    p.add_argument("group")
    p.add_argument("--gen", default="", help="generator of H as coordinates, e.g. 3 or 0,2")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_swan)

    p = sub.add_parser("search", help="primes p = -1 mod 8 and -1 mod 2m")
    p.add_argument("m", type=int)
    p.add_argument("bound", type=int)
    p.add_argument("--field", type=int, default=None, help="D of an imaginary field of conductor m")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("vp", help="structure of V_p(O_K) for K = Q(sqrt D)")
    p.add_argument("D", type=int)
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_vp)

    p = sub.add_parser("chevalley", help="ambiguous class number formula")
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--e", default="", help="ramification indices, comma separated")
    p.add_argument("--norm-index", type=int, default=1)
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--lem3", type=int, nargs=4, metavar=("R1", "R2", "N0", "P"),
                   help="evaluate 2^r1 (p-1)^r2 / n0 instead")
    p.set_defaults(func=cmd_chevalley)

    p = sub.add_parser("kobayashi", help="candidate Swan subgroups T(O_K C_p)")
    p.add_argument("D", type=int)
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_kobayashi)

    p = sub.add_parser("psi", help="R_sd, A^t and the criteria for a Psi-module")
    p.add_argument("--module", help="module JSON, or @file")
    p.add_argument("--subgroup", help="JSON list of elements of R, or @file (default: all of A)")
    p.add_argument("--prime-report", type=int, nargs=2, metavar=("P", "C_ORDER"))
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("verify-all", help="run every exhaustive suite")
    p.add_argument("--size-bound", type=int, default=12)
    p.set_defaults(func=cmd_verify_all)
    return ap


def _pretty(result: dict) -> str:
    lines = [f"{result['command']}  [{result['status']}]"]
    outputs = result.get("outputs") or {}
    if result["command"] == "verify-all" and "suites" in outputs:
        lines.append(f"{'suite':<22}{'result':<8}{'checked':>9}{'seconds':>10}")
        for s in outputs["suites"]:
            lines.append(f"{s['name']:<22}{'pass' if s['passed'] else 'FAIL':<8}{s['checked']:>9}{s['seconds']:>10.3f}")
            if s["counterexample"]:
                lines.append(f"  counterexample: {json.dumps(s['counterexample'])}")
        return "\n".join(lines)
    for key, val in result.get("inputs", {}).items():
        lines.append(f"  in  {key}: {json.dumps(val)}")
    if "error" in result:
        lines.append(f"  error: {result['error']}")
    for key, val in outputs.items():
        lines.append(f"  out {key}: {json.dumps(val)}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    echo = {k: v for k, v in vars(args).items() if k not in ("func", "pretty", "command")}
    result = {"command": args.command, "inputs": echo, "outputs": None, "status": "ok"}
    try:
        inputs, outputs, code = args.func(args)
    except InputError as exc:
        print(f"galmod {args.command}: {exc}", file=sys.stderr)
        ap.print_usage(sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        result.update(status="domain_error", error=str(exc))
        code = EXIT_DOMAIN
    except ResourceError as exc:
        result.update(status="resource_error", error=str(exc))
        code = EXIT_RESOURCE
    except OSError as exc:
        print(f"galmod {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    else:
        result.update(inputs=inputs, outputs=outputs)
        if code == EXIT_FAILED:
            result["status"] = "failed"
    print(_pretty(result) if args.pretty else json.dumps(result, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
