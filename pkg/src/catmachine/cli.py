"""Command-line entry point.

Exit status: 0 on success, 1 when a check fails, 2 on usage or input format
errors.  ``--format records`` switches the report to one JSON object per line.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .battery import run_battery
from .core import infer_type
from .errors import CatMachineError, MorphismTypeError, ParseError, ScopeError
from .formats import load_semantics, parse_diagram, parse_value
from .lam import compile_term, parse_term_file
from .laws import check_diagram, normalize
from .machine import apply_mor, show_value, value_to_json
from .suite import run_suite
from .syntax import parse_mor

OK, FAILED, USAGE = 0, 1, 2


class _Out:
    def __init__(self, fmt, stream):
        self.records = fmt == "records"
        self.stream = stream

    def emit(self, human, record):
        if self.records:
            print(json.dumps(record), file=self.stream)
        elif human is not None:
            print(human, file=self.stream)


def _read(arg):
    """A path to an existing file is read; anything else is taken as literal text."""
    if os.path.isfile(arg):
        with open(arg) as fh:
            return fh.read()
    return arg


def _morphism(arg):
    text = "\n".join(line for line in _read(arg).splitlines() if not line.lstrip().startswith("#"))
    return parse_mor(text)


def _semantics(args):
    return load_semantics(args.semantics, args.cap)


def cmd_typecheck(args, out):
    m = _morphism(args.input)
    try:
        d, c = infer_type(m)
    except MorphismTypeError as exc:
        out.emit(f"type error: {exc}", {"ok": False, "error": str(exc)})
        return FAILED
    out.emit(f"{d} -> {c}", {"ok": True, "dom": str(d), "cod": str(c)})
    return OK


def _compiled(args):
    s = _semantics(args)
    ctx, term = parse_term_file(_read(args.input))
    return s, ctx, term, compile_term(term, ctx, s)


def cmd_compile(args, out):
    _, ctx, _, m = _compiled(args)
    if args.normalize:
        m = normalize(m)[0]
    d, c = infer_type(m)
    out.emit(str(m), {"morphism": str(m), "dom": str(d), "cod": str(c)})
    return OK


def cmd_run(args, out):
    s, ctx, _, m = _compiled(args)
    env = parse_value(args.env, ctx.shape(), s)
    trace = [] if args.trace else None
    v = apply_mor(m, env, s, trace)
    cod = infer_type(m)[1]
    if trace is not None:
        for node, x, y in trace:
            out.emit(f"  {node} : {show_value(x)} |-> {show_value(y)}",
                     {"node": str(node), "in": value_to_json(x), "out": value_to_json(y)})
    shown = show_value(v, cod, s)
    out.emit(shown, {"value": shown, "type": str(cod)})
    return OK


def cmd_normalize(args, out):
    m = _morphism(args.input)
    normal, trace = normalize(m)
    for k, step in enumerate(trace, 1):
        out.emit(f"  {k}. {step.rule}: {step.before}  =>  {step.after}",
                 {"step": k, "rule": step.rule, "before": str(step.before),
                  "after": str(step.after)})
    out.emit(f"{normal}\n({len(trace)} step{'s' if len(trace) != 1 else ''})",
             {"normal": str(normal), "steps": len(trace)})
    return OK


def cmd_check_laws(args, out):
    report = run_battery(_semantics(args), pairs=args.pairs, seed=args.seed)
    for rec in report.records():
        mark = "ok  " if rec["failures"] == 0 else "FAIL"
        out.emit(f"{mark} {rec['law']}: {rec['checked']} checked, {rec['failures']} failed", rec)
    for f in report.failures:
        out.emit(f"  {f.law}: {f.detail}" + (f" at {f.witness}" if f.witness else ""),
                 f.record())
    return OK if report.passed else FAILED


def cmd_check_diagram(args, out):
    dg = parse_diagram(_read(args.input))
    s = _semantics(args) if args.semantics else None
    report = check_diagram(dg, s)
    for r in report.results:
        rec = r.record()
        cx = f" (counterexample {rec['counterexample']})" if "counterexample" in rec else ""
        out.emit(f"{rec['verdict']:<10} {rec['claim']}{cx}", rec)
    return OK if report.commutes else FAILED


def cmd_suite(args, out):
    report = run_suite(_semantics(args))
    for r in report.results:
        rec = r.record()
        mark = "pass" if r.passed else "FAIL"
        extra = ""
        if not r.passed:
            extra = f"  expected {r.expected}"
            if r.error:
                extra += f"  error {r.error}"
            elif r.counterexample is not None:
                extra += f"  counterexample {r.counterexample}"
        out.emit(f"{mark} {r.id:<10} {r.verdict:<40} {r.paper_location}{extra}", rec)
    n = sum(r.passed for r in report.results)
    if not out.records:
        out.emit(f"{n}/{len(report.results)} cases match their expected verdicts", None)
    return OK if report.passed else FAILED


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--semantics", help="semantics file, or 'default' / 'singleton'")
    common.add_argument("--cap", type=int, help="enumeration cap on domain sizes")
    common.add_argument("--format", choices=("human", "records"), default="human")

    p = argparse.ArgumentParser(prog="catmachine",
                                description="Categorical combinators on finite semantics.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("typecheck", parents=[common], help="infer dom -> cod of a morphism")
    sp.add_argument("input", help="morphism file or literal")
    sp.set_defaults(fn=cmd_typecheck)

    sp = sub.add_parser("compile", parents=[common], help="compile a lambda term file")
    sp.add_argument("input", help="term file")
    sp.add_argument("--normalize", action="store_true", help="normalize the compiled code")
    sp.set_defaults(fn=cmd_compile)

    sp = sub.add_parser("run", parents=[common], help="compile and evaluate a term")
    sp.add_argument("input", help="term file")
    sp.add_argument("--env", required=True, help="environment literal such as [[e1, p], q]")
    sp.add_argument("--trace", action="store_true", help="print every evaluated node")
    sp.set_defaults(fn=cmd_run)

    sp = sub.add_parser("normalize", parents=[common], help="normal form and rewrite trace")
    sp.add_argument("input", help="morphism file or literal")
    sp.set_defaults(fn=cmd_normalize)

    sp = sub.add_parser("check-laws", parents=[common], help="randomized law soundness battery")
    sp.add_argument("--pairs", type=int, default=500)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_check_laws)

    sp = sub.add_parser("check-diagram", parents=[common], help="check every claim of a diagram")
    sp.add_argument("input", help="diagram file")
    sp.set_defaults(fn=cmd_check_diagram)

    sp = sub.add_parser("suite", parents=[common], help="run the figure/lemma/theorem suite")
    sp.set_defaults(fn=cmd_suite)
    return p


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    out = _Out(args.format, stdout)
    try:
        return args.fn(args, out)
    except ParseError as exc:
        print(f"error: line {exc.line}, column {exc.col}: {exc.message}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (MorphismTypeError, ScopeError) as exc:
        print(f"type error: {exc}", file=sys.stderr)
        return FAILED
    except CatMachineError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
