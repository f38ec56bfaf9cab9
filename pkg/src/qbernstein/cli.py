"""Command-line front end: ``qbernstein {check,beta,bernstein,padic}``.

Exit codes: 0 success, 1 unexpected failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from datetime import datetime, timezone
from fractions import Fraction

from . import padic
from .bernstein import NumericCtx, basis, basis_eval_real
from .carlitz import carlitz_beta
from .field import FieldError, ratq_eval
from .registry import REGISTRY, expected_status, run_suite
from .report import ERROR, FAILED


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on its own errors; keep that, but never print a traceback
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _frac(text: str) -> Fraction:
    return Fraction(text)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qbernstein", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="run registered identity checks")
    c.add_argument("--filter", default="*", help="glob over check ids, e.g. 'thm*' or 'eq1?'")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--format", choices=("text", "json"), default="text")

    b = sub.add_parser("beta", help="tabulate Carlitz q-Bernoulli numbers")
    b.add_argument("--max-n", type=int, required=True)
    b.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("bernstein", help="print one two-variable q-Bernstein basis polynomial")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--q", type=float)
    s.add_argument("--x1", type=float)
    s.add_argument("--x2", type=float)

    a = sub.add_parser("padic", help="p-adic Riemann-sum convergence check")
    a.add_argument("--p", type=int, required=True)
    a.add_argument("--q", type=int, required=True, help="integer q0 with q0 = 1 mod p")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--level", type=int, default=5, help="largest N in the p^N Riemann sums")
    a.add_argument("--digits", type=int, default=12, help="p-adic working precision M")
    a.add_argument("--check", choices=("eq4", "eq15", "eq18"), default="eq4")
    a.add_argument("--x0", type=int, default=0, help="shift for the eq15 check")
    return p


def _is_expected_fail(r) -> bool:
    return r.status == FAILED and expected_status(r.id, r.params) == FAILED


def _cmd_check(args, out) -> int:
    if args.jobs < 1:
        raise _Usage("--jobs must be >= 1")
    reports, code = run_suite(args.filter, args.jobs)
    if not reports:
        raise _Usage(f"no check id matches {args.filter!r}; known ids: {', '.join(REGISTRY)}")
    counts = Counter(r.status for r in reports)
    expected_fail = sum(_is_expected_fail(r) for r in reports)
    summary = {"total": len(reports), **dict(sorted(counts.items())),
               "expected_fail": expected_fail, "exit_code": code}
    if args.format == "json":
        doc = {
            "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "reports": [r.to_json() for r in reports],
            "summary": summary,
        }
        out.write(json.dumps(doc, indent=1) + "\n")
    else:
        for r in reports:
            params = ",".join(f"{k}={v}" for k, v in r.params.items())
            tag = " (expected)" if _is_expected_fail(r) else ""
            line = f"{r.status:<24}{tag:<11} {r.id}[{params}]"
            if r.status in (FAILED, ERROR):
                line += f"  lhs={r.lhs}  rhs={r.rhs}"
            if r.status == ERROR or (r.notes and r.status != "verified"):
                line += f"  -- {r.notes}"
            out.write(line + "\n")
        parts = ", ".join(f"{k}={v}" for k, v in summary.items())
        out.write(f"summary: {parts}\n")
    return code


def _cmd_beta(args, out) -> int:
    if args.max_n < 0:
        raise _Usage("--max-n must be >= 0")
    rows = []
    for n in range(args.max_n + 1):
        b = carlitz_beta(n)
        rows.append({"n": n, "beta": b.render(), "at_q_1": str(ratq_eval(b, 1))})
    if args.format == "json":
        out.write(json.dumps(rows, indent=1) + "\n")
    else:
        for r in rows:
            out.write(f"{r['n']:>3}  {r['beta']}    [q=1: {r['at_q_1']}]\n")
    return 0


def _cmd_bernstein(args, out) -> int:
    if args.n < 0 or args.k < 0:
        raise _Usage("--n and --k must be >= 0")
    out.write(basis(args.k, args.n).expr.render() + "\n")
    given = [v is not None for v in (args.q, args.x1, args.x2)]
    if any(given):
        if not all(given):
            raise _Usage("numeric evaluation needs all of --q, --x1, --x2")
        try:
            ctx = NumericCtx(args.q, args.x1, args.x2)
        except ValueError as exc:
            raise _Usage(str(exc)) from None
        out.write(repr(basis_eval_real(args.k, args.n, ctx)) + "\n")
    return 0


def _cmd_padic(args, out) -> int:
    if args.level < 1 or args.digits < 1 or args.n < 0:
        raise _Usage("--level and --digits must be >= 1 and --n >= 0")
    try:
        if args.check == "eq4":
            rep = padic.check_eq4_padic(args.n, args.p, args.q, args.level, args.digits)
        elif args.check == "eq15":
            rep = padic.check_eq15_padic(args.n, args.x0, args.p, args.q, args.level, args.digits)
        else:
            rep = padic.check_eq18_padic(args.n, args.p, args.q, args.level, args.digits)
    except (padic.PadicError, FieldError, ValueError) as exc:
        raise _Usage(str(exc)) from None
    params = {"p": args.p, "q0": args.q, "n": args.n, "level": args.level, "digits": args.digits}
    if args.check == "eq15":
        params["x0"] = args.x0
    doc = {"check": args.check, "params": params, "levels": rep.data["levels"],
           "verdict": rep.status, "notes": rep.notes}
    out.write(json.dumps(doc, indent=1) + "\n")
    return 0 if rep.ok else 1


class _Usage(Exception):
    pass


_COMMANDS = {"check": _cmd_check, "beta": _cmd_beta, "bernstein": _cmd_bernstein, "padic": _cmd_padic}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.cmd](args, out)
    except _Usage as exc:
        sys.stderr.write(f"qbernstein {args.cmd}: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
