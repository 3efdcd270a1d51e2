"""Command-line front end: ``collostab analyze|tableau|sample-R|verify-paper``."""

from __future__ import annotations

import argparse
import csv
import json
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor

import mpmath

from .collocation import (
    CollocationMethod,
    NodeError,
    method_from_nodes,
    method_from_pi,
    method_gauss,
    method_uniform_closed,
    method_uniform_open,
)
from .exactmath import ContractError
from .worked_examples import format_results, run_fixture_suite
from .report import SCHEMA_VERSION, ReportDocument, build_document, render_text
from .stability import (
    SingularStageSystem,
    classify,
    dahlquist_validate,
    laplace_cross_check,
    sample_axis,
    stability_function,
)

EXIT_OK, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _add_source(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--nodes", help="comma-separated nodes, e.g. 1/3,2/3 (use --nodes=-1/2,... for a leading minus)")
    g.add_argument("--gauss", type=int, metavar="S", help="S Gauss points")
    g.add_argument("--uniform-closed", type=int, metavar="S", help="S uniform nodes including 0 and 1")
    g.add_argument("--uniform-open", type=int, metavar="S", help="S uniform nodes i/(S+1)")
    g.add_argument("--pi", metavar="COEFFS", help="node polynomial coefficients, constant term first")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="collostab", description="Exact stability analysis of collocation Runge-Kutta methods.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="decide the eight stability notions")
    _add_source(a, required=False)
    a.add_argument("--batch", metavar="FILE", help="one method per line (same flags as the command line), analyzed concurrently")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.add_argument("--force-full", action="store_true", help="skip structural fast paths")
    a.add_argument("--dahlquist", metavar="A_REAL,A_IMAG,H,N", help="integrate y'=ay and compare with R(ah)^n (write --dahlquist=-1,0,0.5,50 when A_REAL is negative)")
    a.add_argument("--laplace", action="store_true", help="Laplace-integral cross-check of R at 1, 2 and 1+i")
    a.add_argument("--xmin", type=float)
    a.add_argument("--xmax", type=float)
    a.add_argument("--num", type=int)
    a.add_argument("--workers", type=int, default=None, help="processes for --batch")

    t = sub.add_parser("tableau", help="print the Butcher tableau")
    _add_source(t)
    t.add_argument("--format", choices=("text", "json"), default="text")

    r = sub.add_parser("sample-R", help="CSV of |R(ix)| and the boundary deficit")
    _add_source(r)
    r.add_argument("--xmin", type=float, default=-10.0)
    r.add_argument("--xmax", type=float, default=10.0)
    r.add_argument("--num", type=int, default=201)
    r.add_argument("--output", "-o", help="write CSV here instead of stdout")

    sub.add_parser("verify-paper", help="run the worked-example suite")
    return parser


def method_from_args(ns: argparse.Namespace) -> CollocationMethod:
    if ns.nodes is not None:
        return method_from_nodes(ns.nodes)
    for name, make in (("gauss", method_gauss), ("uniform_closed", method_uniform_closed), ("uniform_open", method_uniform_open)):
        s = getattr(ns, name)
        if s is not None:
            if s < 1:
                raise InputError(f"--{name.replace('_', '-')} needs S >= 1")
            return make(s)
    if ns.pi is not None:
        return method_from_pi(ns.pi)
    raise InputError("one of --nodes, --gauss, --uniform-closed, --uniform-open, --pi is required")


def _parse_dahlquist(text: str):
    try:
        ar, ai, h, n = text.split(",")
        return complex(float(ar), float(ai)), float(h), int(n)
    except ValueError:
        raise InputError("--dahlquist expects A_REAL,A_IMAG,H,N") from None


def analyze(ns: argparse.Namespace) -> ReportDocument:
    method = method_from_args(ns)
    report = classify(method, force_full=ns.force_full)
    checks = {}
    if ns.dahlquist:
        a, h, n = _parse_dahlquist(ns.dahlquist)
        try:
            checks["dahlquist_deviation"] = dahlquist_validate(method, a, h, n, report.stability)
        except SingularStageSystem as exc:
            checks["dahlquist_deviation"] = f"singular: {exc}"
    if ns.laplace:
        checks["laplace_deviation"] = max(laplace_cross_check(method.pi, lam) for lam in (1, 2, 1 + 1j))
    samples = None
    if any(v is not None for v in (ns.xmin, ns.xmax, ns.num)):
        samples = sample_axis(
            report.stability,
            -10.0 if ns.xmin is None else ns.xmin,
            10.0 if ns.xmax is None else ns.xmax,
            201 if ns.num is None else ns.num,
        )
    return build_document(report, samples, checks)


def _analyze_line(args: tuple[str, str, bool]) -> dict:
    line, fmt, force_full = args
    ns = build_parser().parse_args(["analyze", *shlex.split(line)])
    ns.force_full = ns.force_full or force_full
    doc = analyze(ns)
    return {"input": line, "document": json.loads(doc.to_json(None))}


def _batch(ns: argparse.Namespace, out) -> int:
    try:
        with open(ns.batch, encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    except OSError as exc:
        raise InputError(f"cannot read batch file: {exc}") from None
    for line in lines:  # validate everything up front so bad input fails fast with exit code 2
        method_from_args(build_parser().parse_args(["analyze", *shlex.split(line)]))
    with ProcessPoolExecutor(max_workers=ns.workers) as pool:
        results = list(pool.map(_analyze_line, [(ln, ns.format, ns.force_full) for ln in lines]))
    if ns.format == "json":
        out.write(json.dumps({"schema_version": SCHEMA_VERSION, "batch": results}, indent=2, ensure_ascii=False) + "\n")
    else:
        for r in results:
            doc = ReportDocument(**r["document"])
            out.write(f"== {r['input']}\n{render_text(doc)}\n\n")
    return EXIT_OK


def cmd_analyze(ns, out) -> int:
    if ns.batch:
        return _batch(ns, out)
    doc = analyze(ns)
    out.write((doc.to_json() if ns.format == "json" else render_text(doc)) + "\n")
    return EXIT_OK


def cmd_tableau(ns, out) -> int:
    method = method_from_args(ns)
    tab = method.tableau
    if tab is None:
        with_numbers = True
        A, b = method.numeric_tableau(20)
        rows = [[mpmath.nstr(A[i, j], 15) for j in range(method.s)] for i in range(method.s)]
        bs = [mpmath.nstr(b[i], 15) for i in range(method.s)]
        cs = [mpmath.nstr(c, 15) for c in method.nodes.nodes]
    else:
        with_numbers = False
        rows = [[str(v) for v in row] for row in tab.A]
        bs = [str(v) for v in tab.b]
        cs = [str(c) for c in method.nodes.nodes]
    if ns.format == "json":
        out.write(json.dumps({"schema_version": SCHEMA_VERSION, "c": cs, "A": rows, "b": bs, "exact": not with_numbers}, indent=2) + "\n")
        return EXIT_OK
    width = max(len(x) for x in cs + bs + [v for r in rows for v in r])
    cw = max(len(x) for x in cs)
    for c, row in zip(cs, rows):
        out.write(f"{c:>{cw}} | " + "  ".join(f"{v:>{width}}" for v in row) + "\n")
    out.write("-" * (cw + 1) + "+" + "-" * ((width + 2) * method.s) + "\n")
    out.write(f"{'':>{cw}} | " + "  ".join(f"{v:>{width}}" for v in bs) + "\n")
    if with_numbers:
        out.write("(approximate: nodes are not exactly representable)\n")
    return EXIT_OK


def cmd_sample_R(ns, out) -> int:
    method = method_from_args(ns)
    sf = stability_function(method.pi, method.s)
    try:
        rows = sample_axis(sf, ns.xmin, ns.xmax, ns.num)
    except ContractError as exc:
        raise InputError(str(exc)) from None
    fh = open(ns.output, "w", newline="", encoding="utf-8") if ns.output else out
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "abs_R", "deficit"])
        for x, r, d in rows:
            w.writerow([repr(x), "inf" if r == float("inf") else repr(r), repr(d)])
    finally:
        if ns.output:
            fh.close()
    return EXIT_OK


def cmd_verify_paper(ns, out) -> int:
    results = run_fixture_suite()
    out.write(format_results(results) + "\n")
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY


COMMANDS = {"analyze": cmd_analyze, "tableau": cmd_tableau, "sample-R": cmd_sample_R, "verify-paper": cmd_verify_paper}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        ns = build_parser().parse_args(argv)
        if ns.command == "analyze" and not ns.batch and all(
            getattr(ns, k) is None for k in ("nodes", "gauss", "uniform_closed", "uniform_open", "pi")
        ):
            raise InputError("a method source or --batch is required")
        if getattr(ns, "num", None) is not None and ns.num < 2:
            raise InputError("--num must be at least 2")
        return COMMANDS[ns.command](ns, out)
    except (InputError, NodeError, ContractError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
