"""uqsl2 command line.

Exit status: 0 success, 1 mathematical failure (identity fails, membership
false, check fails), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .catalog import run_catalog
from .coeff_field import DivisionByZero, ParseError, parse_subst
from .expr import evaluate
from .ncalgebra import BASES, EQUITABLE, REGIONS, convert, format_element, membership, to_records
from .presentations import (ISOMORPHISMS, PRESENTATIONS, get_morphism, named, report_passes,
                            verify_presentation)
from . import repr as reps

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit_element(u, as_json: bool) -> str:
    return json.dumps(to_records(u)) if as_json else format_element(u)


def _parse_error(exc: ParseError) -> str:
    pos = getattr(exc, "pos", None)
    text = getattr(exc, "text", None)
    msg = f"error: {exc.args[0] if exc.args else exc}"
    if text is not None and pos is not None:
        msg += f"\n  {text}\n  {' ' * pos}^"
    return msg


def cmd_normalize(args, out):
    u = evaluate(args.expr, basis=args.basis)
    print(_emit_element(u, args.json), file=out)
    return EXIT_OK


def cmd_convert(args, out):
    print(_emit_element(convert(evaluate(args.expr), args.basis), args.json), file=out)
    return EXIT_OK


def cmd_apply(args, out):
    spec = args.morphism + (f":{args.subst}" if args.subst else "")
    try:
        m = get_morphism(spec)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    u = evaluate(args.expr, basis=args.basis)
    print(_emit_element(m(u), args.json), file=out)
    return EXIT_OK


def cmd_member(args, out):
    u = evaluate(args.expr)
    try:
        result = membership(u, args.region)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        print(json.dumps({"region": args.region, "member": result}), file=out)
    else:
        print("true" if result else "false", file=out)
    return EXIT_OK if result else EXIT_FAIL


def cmd_verify(args, out):
    ids = [args.id] if args.id else list(PRESENTATIONS)
    records, ok = [], True
    for pid in ids:
        if pid in PRESENTATIONS:
            rep = verify_presentation(pid)
            records.extend(rep)
            ok &= report_passes(rep)
        elif pid in ISOMORPHISMS:
            res = ISOMORPHISMS[pid].check()
            records.append({"id": pid, "relation-index": None,
                            "status": "pass" if res["ok"] else "fail", "residual": ""})
            ok &= res["ok"]
        else:
            raise UsageError(f"unknown presentation {pid!r}")
    if args.json:
        print(json.dumps(records), file=out)
    else:
        for r in records:
            idx = "" if r["relation-index"] is None else f"[{r['relation-index']}]"
            line = f"{r['id']}{idx}: {r['status']}"
            if r["status"] == "fail":
                line += f"  residual = {r['residual']}"
            print(line, file=out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_catalog(args, out):
    report = run_catalog(args.filter or "")
    print(json.dumps(report.to_dict()) if args.json else report.format(), file=out)
    return EXIT_OK if report.ok else EXIT_FAIL


def _standard(args):
    if args.standard is None:
        raise UsageError("--standard <d> is required")
    try:
        return reps.standard_module(args.standard)
    except reps.RepError as exc:
        raise UsageError(str(exc)) from None


def cmd_rep(args, out):
    rep = _standard(args)
    if args.basis == EQUITABLE:
        rep = reps.to_equitable(rep)
    if args.element:
        m = reps.rep_eval(rep, evaluate(args.element))
        print(json.dumps(m.to_records()) if args.json else m.format(), file=out)
    elif args.json:
        print(json.dumps(rep.to_records()), file=out)
    else:
        for g, m in rep.images.items():
            print(f"{g}:", file=out)
            print(m.format(), file=out)
    return EXIT_OK


def cmd_psi_check(args, out):
    std = _standard(args)
    d = args.standard
    a = reps.A_VAR
    E = reps.to_equitable(std)
    K, B, Amat = reps.build_KBA(E)
    p = reps.psi(K, B)
    E2 = reps.extend_to_uq(reps.second_module(K, B, Amat))
    lam = reps.rep_eval(E, named("Lambda"))
    checks = {
        "nu_x = a^-1 psi": reps.rep_eval(E, named("nu_x")) == p.scale(a.inv()),
        "nu_z = a psi (second module)": reps.rep_eval(E2, named("nu_z")) == p.scale(a),
        "casimir forms": all(c == lam for c in reps.casimir_forms(Amat, K, B, p)),
        "psi lowers K-eigenspaces": reps.psi_lowers(p, K, d),
    }
    return _print_checks(checks, args, out)


def cmd_td_check(args, out):
    std = _standard(args)
    E = reps.to_equitable(std)
    _, _, Amat = reps.build_KBA(E)
    params = reps.TDParams.q_racah(args.standard)
    report = reps.is_tridiagonal_pair(Amat, E["y"], params)
    checks = {f"condition ({k})": report[k] for k in ("i", "ii", "iii", "iv")}
    return _print_checks(checks, args, out)


def _print_checks(checks, args, out):
    if args.json:
        print(json.dumps(checks), file=out)
    else:
        for name, ok in checks.items():
            print(f"{name}: {'pass' if ok else 'fail'}", file=out)
    return EXIT_OK if all(checks.values()) else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="uqsl2", description="Exact computations in U_q(sl2).")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def add(name, func, expr=True, **kw):
        p = sub.add_parser(name, **kw)
        if expr:
            p.add_argument("expr")
        p.add_argument("--json", action="store_true", help="structured output")
        p.set_defaults(func=func)
        return p

    p = add("normalize", cmd_normalize, help="normal form of an expression")
    p.add_argument("--basis", choices=BASES, default=EQUITABLE)
    p = add("convert", cmd_convert, help="change PBW basis")
    p.add_argument("--basis", choices=BASES, default="chevalley", help="target basis")
    p = add("apply", cmd_apply, help="apply sigma, tau or dagger")
    p.add_argument("--morphism", required=True)
    p.add_argument("--subst", default=None, help="a=<scalar> or q=<scalar>")
    p.add_argument("--basis", choices=BASES, default=EQUITABLE)
    p = add("member", cmd_member, help="subspace membership")
    p.add_argument("--region", required=True, help=", ".join(REGIONS))
    p = add("verify", cmd_verify, expr=False, help="check presentations")
    p.add_argument("id", nargs="?")
    p = add("catalog", cmd_catalog, expr=False, help="run the identity catalog")
    p.add_argument("--filter", default="")
    for name, func, text in (("rep", cmd_rep, "matrix of an element on a standard module"),
                             ("psi-check", cmd_psi_check, "psi and Casimir checks on a standard module"),
                             ("td-check", cmd_td_check, "tridiagonal pair conditions on a standard module")):
        p = add(name, func, expr=False, help=text)
        p.add_argument("--standard", type=int)
        if name == "rep":
            p.add_argument("--element", default=None)
            p.add_argument("--basis", choices=BASES, default="chevalley")
    return parser


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "subst", None):
            parse_subst(args.subst)
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except ParseError as exc:
        print(_parse_error(exc), file=err)
        return EXIT_USAGE
    except DivisionByZero as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except reps.RepError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
