"""Batch command line front end.

Every invocation is a pure function of its arguments and flags: parse the
inputs, run one library operation, print a JSON envelope.  Success prints
{"ok": true, "result": ...} and exits 0; mathematical failures print
{"ok": false, "error": {"kind": ..., "message": ...}} and exit 2 (3 for
syntax errors, 4 for I/O problems).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .errors import ParseError, TemperedHahnError
from . import acceptance
from .blowup import (
    blowup_apply,
    evenup_plan,
    evenup_target_signature,
    integrate,
    isp_related,
    plan_apply,
    plan_from_json,
    plan_to_json,
)
from .euler import (
    chi_alt,
    lambda_add,
    lambda_from_json,
    lambda_mul,
    lambda_to_json,
    oclass_add,
    oclass_from_pair,
    oclass_mul,
    oclass_pow,
    signature,
)
from .exprparse import parse_series_expr
from .hahn import to_json
from .scalar import NumericContext, scalar_from_str, scalar_to_str
from .tempered import (
    exp_series,
    log_series,
    pow_unit,
    tempered_exp,
    tempered_power,
)
from .valuation import ac, av, classify, gamma_to_json, lg, pi, vv


def _read_input(path: Optional[str]) -> Optional[str]:
    if path is None:
        return None
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _parse_pair(text: str):
    """An OClass literal: '(d,c)' or 'd,c' or a JSON pair."""
    body = text.strip().strip("()[]")
    parts = [p.strip() for p in body.split(",")]
    if len(parts) != 2:
        raise ParseError(f"expected a pair '(dim,chi)', got {text!r}")
    try:
        return oclass_from_pair((int(parts[0]), int(parts[1])))
    except ValueError:
        raise ParseError(f"pair entries must be integers: {text!r}") from None


def _parse_lambda(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad graded class JSON: {exc}") from None
    return lambda_from_json(obj)


def _parse_int_list(text: str) -> List[int]:
    try:
        return [int(p) for p in text.replace("[", "").replace("]", "").split(",")]
    except ValueError:
        raise ParseError(f"expected a comma-separated integer list, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="temperedhahn",
        description="Batch calculator for truncated Hahn series, tempered powers "
                    "and the class-semiring blowup calculus.")
    ap.add_argument("--mode", choices=("exact", "float"), default="exact",
                    help="number backend for expression literals (default exact)")
    ap.add_argument("--precision", type=int, default=256, metavar="P",
                    help="float precision in bits (default 256)")
    ap.add_argument("--trunc", type=int, default=32, metavar="W",
                    help="default truncation order for dividing/analytic ops (default 32)")
    ap.add_argument("--input", default=None, metavar="FILE",
                    help="read the main positional payload from FILE ('-' for stdin)")
    ap.add_argument("--output", default=None, metavar="FILE",
                    help="write the JSON result to FILE ('-' for stdout, the default)")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("eval-series").add_argument("expr", nargs="?")
    for name in ("vv", "ac", "pi", "lg", "av", "classify", "exp", "log"):
        sub.add_parser(name).add_argument("expr", nargs="?")
    p = sub.add_parser("pow")
    p.add_argument("base", nargs="?")
    p.add_argument("exponent", nargs="?")
    p = sub.add_parser("tpow")
    p.add_argument("expr", nargs="?")
    p.add_argument("gamma", nargs="?")
    p = sub.add_parser("texp")
    p.add_argument("base", nargs="?")
    p.add_argument("arg", nargs="?")
    p = sub.add_parser("oclass")
    p.add_argument("op", choices=("add", "mul", "pow"))
    p.add_argument("left", nargs="?")
    p.add_argument("right", nargs="?")
    p = sub.add_parser("lambda")
    p.add_argument("op", choices=("add", "mul", "chi-alt", "signature", "top"))
    p.add_argument("left", nargs="?")
    p.add_argument("right", nargs="?")
    p = sub.add_parser("blowup-apply")
    p.add_argument("cls", nargs="?")
    p.add_argument("plan", nargs="?")
    p = sub.add_parser("evenup")
    p.add_argument("cls", nargs="?")
    p.add_argument("m", nargs="?")
    p.add_argument("l", nargs="?", type=int)
    p = sub.add_parser("isp")
    p.add_argument("left", nargs="?")
    p.add_argument("right", nargs="?")
    sub.add_parser("integrate").add_argument("cls", nargs="?")
    sub.add_parser("selftest").add_argument("suite", nargs="?", default="all")
    return ap


def _fill_missing(ns, names: List[str], payload: Optional[str]) -> None:
    """Positional arguments omitted on the command line come from --input,
    one per line."""
    missing = [n for n in names if getattr(ns, n, None) is None]
    if not missing:
        return
    if payload is None:
        raise ParseError(f"missing argument(s) {missing}; pass them or use --input")
    lines = [ln for ln in payload.splitlines() if ln.strip()]
    if len(lines) < len(missing):
        raise ParseError(f"--input supplies {len(lines)} value(s), need {len(missing)}")
    for name, line in zip(missing, lines):
        setattr(ns, name, line.strip())


def _dispatch(ns, ctx: NumericContext, float_mode: bool):
    cmd = ns.command

    def series(text):
        return parse_series_expr(ctx, text, float_mode)

    if cmd == "eval-series":
        return to_json(series(ns.expr))
    if cmd == "vv":
        return gamma_to_json(vv(ctx, series(ns.expr)))
    if cmd == "ac":
        return scalar_to_str(ac(ctx, series(ns.expr)))
    if cmd == "pi":
        return to_json(pi(ctx, vv(ctx, series(ns.expr))))
    if cmd == "lg":
        return to_json(lg(ctx, series(ns.expr)))
    if cmd == "av":
        a, g = av(ctx, series(ns.expr))
        return {"ac": scalar_to_str(a), "vv": gamma_to_json(g)}
    if cmd == "classify":
        m = classify(ctx, series(ns.expr))
        return {"in_O": m.in_O, "in_M": m.in_M, "in_U": m.in_U,
                "in_Uplus": m.in_Uplus, "in_KD": m.in_KD, "in_Delta": m.in_Delta}
    if cmd == "exp":
        return to_json(exp_series(ctx, series(ns.expr), ctx.trunc))
    if cmd == "log":
        return to_json(log_series(ctx, series(ns.expr), ctx.trunc))
    if cmd == "pow":
        return to_json(pow_unit(ctx, series(ns.base), series(ns.exponent), ctx.trunc))
    if cmd == "tpow":
        g = scalar_from_str(ctx, ns.gamma)
        return to_json(tempered_power(ctx, series(ns.expr), g, ctx.trunc))
    if cmd == "texp":
        return to_json(tempered_exp(ctx, series(ns.base), series(ns.arg), ctx.trunc))
    if cmd == "oclass":
        a = _parse_pair(ns.left)
        if ns.op == "pow":
            out = oclass_pow(a, int(ns.right))
        else:
            b = _parse_pair(ns.right)
            out = oclass_add(a, b) if ns.op == "add" else oclass_mul(a, b)
        return [out.dim, out.chi]
    if cmd == "lambda":
        u = _parse_lambda(ns.left)
        if ns.op == "chi-alt":
            return chi_alt(u)
        if ns.op == "signature":
            return [list(p) for p in signature(u)]
        if ns.op == "top":
            return u.top()
        v = _parse_lambda(ns.right)
        out = lambda_add(u, v) if ns.op == "add" else lambda_mul(u, v)
        return lambda_to_json(out)
    if cmd == "blowup-apply":
        u = _parse_lambda(ns.cls)
        try:
            plan = plan_from_json(json.loads(ns.plan))
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad plan JSON: {exc}") from None
        return lambda_to_json(plan_apply(u, plan))
    if cmd == "evenup":
        u = _parse_lambda(ns.cls)
        m = _parse_int_list(ns.m)
        plan = evenup_plan(u, m, ns.l)
        final = plan_apply(u, plan)
        return {"plan": plan_to_json(plan),
                "final_signature": [list(p) for p in signature(final)],
                "target_signature": [list(p) for p in evenup_target_signature(u, m, ns.l)],
                "result": lambda_to_json(final)}
    if cmd == "isp":
        return isp_related(_parse_lambda(ns.left), _parse_lambda(ns.right))
    if cmd == "integrate":
        return integrate(_parse_lambda(ns.cls))
    if cmd == "selftest":
        results = acceptance.run(ns.suite)
        for r in results:
            print(f"criterion {r['criterion']}: {'PASS' if r['ok'] else 'FAIL'} - {r['detail']}",
                  file=sys.stderr)
        if not all(r["ok"] for r in results):
            raise TemperedHahnError("selftest failed")
        return results
    raise ParseError(f"unknown command {cmd!r}")


_POSITIONALS = {
    "eval-series": ["expr"], "vv": ["expr"], "ac": ["expr"], "pi": ["expr"],
    "lg": ["expr"], "av": ["expr"], "classify": ["expr"], "exp": ["expr"],
    "log": ["expr"], "pow": ["base", "exponent"], "tpow": ["expr", "gamma"],
    "texp": ["base", "arg"], "oclass": ["left", "right"],
    "lambda": ["left", "right"], "blowup-apply": ["cls", "plan"],
    "evenup": ["cls", "m", "l"], "isp": ["left", "right"],
    "integrate": ["cls"], "selftest": [],
}


def run(argv: List[str]) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out_path = ns.output
    try:
        payload = _read_input(ns.input)
    except OSError as exc:
        _emit(out_path, {"ok": False, "error": {"kind": "IOError", "message": str(exc)}})
        return 4
    ctx = NumericContext(precision=ns.precision, trunc=ns.trunc)
    float_mode = ns.mode == "float"
    try:
        names = _POSITIONALS.get(ns.command, [])
        if ns.command == "lambda" and ns.op in ("chi-alt", "signature", "top"):
            names = ["left"]
        _fill_missing(ns, names, payload)
        result = _dispatch(ns, ctx, float_mode)
    except ParseError as exc:
        _emit(out_path, {"ok": False, "error": {"kind": exc.kind, "message": str(exc)}})
        return 3
    except TemperedHahnError as exc:
        _emit(out_path, {"ok": False, "error": {"kind": exc.kind, "message": str(exc)}})
        return 2
    except OSError as exc:
        _emit(out_path, {"ok": False, "error": {"kind": "IOError", "message": str(exc)}})
        return 4
    try:
        _emit(out_path, {"ok": True, "result": result})
    except OSError as exc:
        print(json.dumps({"ok": False, "error": {"kind": "IOError", "message": str(exc)}}))
        return 4
    return 0


def _emit(out_path: Optional[str], obj) -> None:
    text = json.dumps(obj, sort_keys=True)
    if out_path is None or out_path == "-":
        print(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
