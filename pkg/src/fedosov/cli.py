"""Command line front end.

::

    fedosov validate problem.json
    fedosov star problem.json --u x1 --v x2 --order 1
    fedosov check problem.json --suite flatness

Exit status is 0 on success, 1 when a validation or certificate fails and 2
for usage, I/O and parse errors.  Errors go to stderr as a single line
``error[<kind>]: <message>``.
"""

from __future__ import annotations

import argparse
import json
import sys

from .checks import SUITES, CheckContext, run_suite
from .engine import build_fedosov, curvature, hseries_to_records, star_product
from .errors import CertificationError, InvalidConnectionError, ProblemSpecError, StructureError
from .poly import PolySyntaxError, parse_poly

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class CliError(Exception):
    def __init__(self, kind, message, code):
        super().__init__(message)
        self.kind = kind
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message, EXIT_USAGE)


def _dump(obj):
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _load(path):
    from .problem import load_problem

    try:
        return load_problem(path)
    except OSError as exc:
        raise CliError("io", f"{path}: {exc.strerror or exc}", EXIT_USAGE) from None
    except ProblemSpecError as exc:
        raise CliError("parse", str(exc), EXIT_USAGE) from None


def _setup(problem):
    try:
        st = problem.structure()
        conn = problem.connection(st)
    except (StructureError, InvalidConnectionError) as exc:
        raise CliError("validation", str(exc), EXIT_FAIL) from None
    return st, conn


def cmd_validate(args, out):
    problem = _load(args.spec)
    report = {"structure": "ok", "connection": "ok", "notes": problem.notes}
    code = EXIT_OK
    try:
        st = problem.structure()
    except StructureError as exc:
        st = None
        report["structure"] = f"FAIL ({exc})"
        report["connection"] = "skipped"
        code = EXIT_FAIL
    if st is not None:
        try:
            problem.connection(st)
        except InvalidConnectionError as exc:
            report["connection"] = f"FAIL ({exc})"
            code = EXIT_FAIL
    if args.output == "json":
        out.write(_dump(report) + "\n")
    else:
        out.write(f"structure: {report['structure']}\n")
        out.write(f"connection: {report['connection']}\n")
        for note in problem.notes:
            out.write(f"note: {note}\n")
    return code


def _element_out(e, args, out):
    if args.output == "text":
        out.write(f"{e}\n")
    else:
        out.write(_dump(e.to_records()) + "\n")


def cmd_curvature(args, out):
    st, conn = _setup(_load(args.spec))
    _element_out(curvature(st, conn), args, out)
    return EXIT_OK


def cmd_gamma(args, out):
    problem = _load(args.spec)
    st, conn = _setup(problem)
    data = build_fedosov(st, conn, problem.truncation)
    _element_out(data.gamma, args, out)
    return EXIT_OK


def _poly_arg(text, nv, flag):
    try:
        return parse_poly(text, nv)
    except PolySyntaxError as exc:
        raise CliError("parse", f"{flag}: {exc}", EXIT_USAGE) from None


def cmd_star(args, out):
    problem = _load(args.spec)
    st, conn = _setup(problem)
    if args.order < 0:
        raise CliError("usage", "--order must be non-negative", EXIT_USAGE)
    u = _poly_arg(args.u, st.nvars, "--u")
    v = _poly_arg(args.v, st.nvars, "--v")
    data = build_fedosov(st, conn, max(problem.truncation, 2 * args.order + 2, 3))
    res = star_product(data, u, v, args.order)
    if args.output in (None, "json"):
        out.write(_dump(hseries_to_records(res)) + "\n")
    if args.output in (None, "text"):
        out.write(f"{res}\n")
    return EXIT_OK


def cmd_check(args, out):
    problem = _load(args.spec)
    st, conn = _setup(problem)
    ctx = CheckContext(st, conn, N=problem.truncation, seed=args.seed)
    results = run_suite(ctx, args.suite)
    passed = sum(r.passed for r in results)
    if args.output == "json":
        out.write(_dump({
            "suite": args.suite,
            "results": [{"name": r.name, "pass": r.passed, "cases": r.count, "detail": r.detail}
                        for r in results],
            "passed": passed,
            "failed": len(results) - passed,
        }) + "\n")
    else:
        for r in results:
            out.write(r.line() + "\n")
        out.write(f"{passed}/{len(results)} checks passed\n")
    return EXIT_OK if passed == len(results) else EXIT_FAIL


def build_parser():
    p = _Parser(prog="fedosov", description="Exact Fedosov quantization of polynomial symplectic algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_, default_output):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("spec", help="problem spec (JSON)")
        sp.add_argument("--output", choices=("json", "text"), default=default_output)
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "validate the Poisson structure and connection", "text")
    add("curvature", cmd_curvature, "print the curvature element R", "json")
    add("gamma", cmd_gamma, "print the correction series gamma", "json")
    sp = add("star", cmd_star, "star product of two polynomials", None)
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)
    sp.add_argument("--order", type=int, default=2, help="highest power of h (default 2)")
    sp = add("check", cmd_check, "run invariant suites", "text")
    sp.add_argument("--suite", default="all", choices=[*SUITES, "all"])
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except CliError as exc:
        err.write(f"error[{exc.kind}]: {exc}\n")
        return exc.code
    except CertificationError as exc:
        err.write(f"error[certification]: {str(exc).splitlines()[0]}\n")
        return EXIT_FAIL
    except ValueError as exc:
        err.write(f"error[value]: {str(exc).splitlines()[0]}\n")
        return EXIT_USAGE


def run():
    sys.exit(main())
