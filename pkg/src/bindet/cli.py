"""Command-line front end.

Exit codes: 0 success, 1 domain error (e.g. J not <= I where required),
2 usage or parse error. Results go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .binomial import pi, q_quotient, rat_str
from .errors import BinDetError, ParseError
from .formulas import DEFAULT_TERM_CAP, Method, counting_identity_lhs, det, size_reduction_expand
from .indexsets import IndexSet, format_indexset, parse_indexset
from .interchange import double_interchange, interchange, pi_product_identity_report
from .nullspace import family_params, nullspace_cramer, nullspace_lambda
from .verify import SUITE_NAMES, InstanceGen, run_suite


class _UsageError(Exception):
    pass


def _indexset_arg(text: str) -> IndexSet:
    try:
        return parse_indexset(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _num(x, pretty: bool) -> str:
    x = Fraction(x)
    if not pretty:
        return rat_str(x)
    if x.denominator == 1:
        return f"{x.numerator:,}"
    return f"{x.numerator:,}/{x.denominator:,}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bindet", description="Exact binomial determinants.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, rows=True, cols=True):
        if rows:
            p.add_argument("--rows", type=_indexset_arg, required=True, help="row index set I")
        if cols:
            p.add_argument("--cols", type=_indexset_arg, required=True, help="column index set J")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--pretty", action="store_true", help="thousands separators in text mode")

    p = sub.add_parser("det", help="evaluate det(B^I_J)")
    common(p)
    p.add_argument("--method", default="auto", choices=[m.value for m in Method])
    p.add_argument("--term-cap", type=int, default=DEFAULT_TERM_CAP)

    p = sub.add_parser("pi", help="pi^I_J, and q^J_I(n) when --n is given")
    common(p)
    p.add_argument("--n", type=int)

    p = sub.add_parser("expand", help="size-reduction terms, or the nested tuple count")
    p.add_argument("--rows", type=_indexset_arg, required=True)
    p.add_argument("--cols", type=_indexset_arg)
    p.add_argument("--count", action="store_true", help="count nested tuple chains over --rows")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--term-cap", type=int, default=DEFAULT_TERM_CAP)

    p = sub.add_parser("nullspace", help="left nullspace generator of a d x (d-1) matrix")
    common(p)
    p.add_argument("--method", choices=("auto", "cramer", "lambda"), default="auto")

    p = sub.add_parser("interchange", help="det(I,J) = q^J_I(n) det(n-J, n-I)")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--pi-product", action="store_true", help="also check the pi-product identity")
    p.add_argument("--no-verify", action="store_true")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", default="all", choices=("all",) + SUITE_NAMES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-d", type=int, default=6)
    p.add_argument("--max-index", type=int, default=20)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _cmd_det(a) -> tuple[dict, str]:
    rep = det(a.rows, a.cols, method=a.method, term_cap=a.term_cap)
    return rep.to_json(), _num(rep.value, a.pretty)


def _cmd_pi(a) -> tuple[dict, str]:
    p = pi(a.rows, a.cols)
    out = {"rows": format_indexset(a.rows), "cols": format_indexset(a.cols), "pi": rat_str(p)}
    text = _num(p, a.pretty)
    if a.n is not None:
        q = q_quotient(a.cols, a.rows, a.n)
        out["n"] = a.n
        out["q"] = rat_str(q)
        text += f"\nq {_num(q, a.pretty)}"
    return out, text


def _cmd_expand(a) -> tuple[dict, str]:
    if a.count:
        value = counting_identity_lhs(a.rows, a.term_cap)
        return {"rows": format_indexset(a.rows), "count": str(value)}, _num(value, a.pretty)
    if a.cols is None:
        raise _UsageError("expand needs --cols unless --count is given")
    terms = size_reduction_expand(a.rows, a.cols, a.term_cap)
    p = pi(a.rows, a.cols)
    values = [det(t.reduced_rows, t.reduced_cols, term_cap=a.term_cap).value for t in terms]
    total = p * sum(values)
    out = {
        "rows": format_indexset(a.rows),
        "cols": format_indexset(a.cols),
        "pi": rat_str(p),
        "terms": [
            {"ks": list(t.ks), "cols": format_indexset(t.reduced_cols), "det": str(v)}
            for t, v in zip(terms, values)
        ],
        "det": rat_str(total),
    }
    lines = [
        f"{','.join(map(str, t.ks))} {format_indexset(t.reduced_cols)} {_num(v, a.pretty)}"
        for t, v in zip(terms, values)
    ]
    lines.append(f"pi {_num(p, a.pretty)}")
    lines.append(f"det {_num(total, a.pretty)}")
    return out, "\n".join(lines)


def _cmd_nullspace(a) -> tuple[dict, str]:
    params = family_params(a.rows, a.cols)
    method = a.method
    if method == "auto":
        method = "lambda" if params is not None else "cramer"
    out = {"rows": format_indexset(a.rows), "cols": format_indexset(a.cols), "method": method}
    if method == "lambda":
        if params is None:
            raise BinDetError("lambda form needs rows [i,i+d-1] and cols {0} u [j,j+d-3], 1 <= j <= i+1")
        form, vec = nullspace_lambda(*params)
        out["lambda"] = rat_str(form.lam)
    else:
        vec = nullspace_cramer(a.rows, a.cols)
    out.update(vec.to_json())
    text = "coeffs " + ",".join(_num(c, a.pretty) for c in vec.coeffs)
    text += "\nintegral " + ",".join(_num(c, a.pretty) for c in vec.integral_coeffs)
    return out, text


def _cmd_interchange(a) -> tuple[dict, str]:
    res = interchange(a.rows, a.cols, a.n, verify=False if a.no_verify else None)
    out = {"rows": format_indexset(a.rows), "cols": format_indexset(a.cols), **res.to_json()}
    lines = [
        f"q {_num(res.q_factor, a.pretty)}",
        f"new_rows {format_indexset(res.new_rows)}",
        f"new_cols {format_indexset(res.new_cols)}",
    ]
    if a.m is not None:
        factor, I2, J2 = double_interchange(a.rows, a.cols, a.n, a.m)
        out["m"] = a.m
        out["double"] = {
            "factor": rat_str(factor),
            "rows": format_indexset(I2),
            "cols": format_indexset(J2),
        }
        lines.append(f"double {_num(factor, a.pretty)} {format_indexset(I2)} {format_indexset(J2)}")
    if a.pi_product:
        if not a.rows.is_interval():
            raise BinDetError("--pi-product needs an interval row set")
        rep = pi_product_identity_report(a.rows.first, len(a.rows), a.cols, a.n)
        out["pi_product"] = rep.to_json()
        lines.append(f"pi_product {rat_str(rep.pi_product)} det {rep.det}")
        lines.append("matching " + (",".join(rep.matching) or "none"))
    return out, "\n".join(lines)


def _cmd_verify(a) -> tuple[dict, str, int]:
    gen = InstanceGen(seed=a.seed, max_d=a.max_d, max_index=a.max_index)
    names = [n for n in SUITE_NAMES if not n.endswith("-exhaustive")] if a.suite == "all" else [a.suite]
    reports = [run_suite(n, gen, a.trials, workers=a.workers) for n in names]
    ok = all(r.passed for r in reports)
    lines = [
        f"{'PASS' if r.passed else 'FAIL'} {r.suite} trials={r.trials} "
        f"failures={len(r.failures)} elapsed_ms={r.elapsed_ms:.1f}"
        for r in reports
    ]
    for r in reports:
        for f in r.failures[:5]:
            lines.append(f"  replay: {f.replay}")
    return {"reports": [r.to_json() for r in reports], "passed": ok}, "\n".join(lines), 0 if ok else 1


COMMANDS = {
    "det": _cmd_det,
    "pi": _cmd_pi,
    "expand": _cmd_expand,
    "nullspace": _cmd_nullspace,
    "interchange": _cmd_interchange,
    "verify": _cmd_verify,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = COMMANDS[args.verb](args)
    except _UsageError as exc:
        print(f"bindet: error: {exc}", file=sys.stderr)
        return 2
    except BinDetError as exc:
        print(f"bindet: {exc}", file=sys.stderr)
        return 1
    code = 0
    if len(result) == 3:
        payload, text, code = result
    else:
        payload, text = result
    print(_dumps(payload) if args.format == "json" else text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
