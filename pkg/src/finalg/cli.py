"""Command-line interface.

Exit status: 0 when everything holds (or nothing was found), 1 when a
statement fails, a closure check fails or a separating witness is found,
2 on malformed input, exceeded budgets or timeouts.
"""
from __future__ import annotations

import argparse
import json
import signal
import sys
from contextlib import contextmanager
from pathlib import Path

from .algebra import AlgebraError
from .catalog import identify
from .equations import AlgebraVars, equation_to_implication, format_statement, format_vars, satisfies
from .formats import FormatError, format_algebra, read_algebra, read_dfa, read_equations
from .memo import EnumerationMemo
from .monads import check_t_algebra, enumerate_t_algebras, infer_monad, parse_monad, syntactic_monoid
from .pseudovariety import CLOSURE_KINDS, PRESETS, Presented, check_closure, preset
from .separation import separate
from .terms import TermSyntaxError, EvaluationError, parse_term

DEFAULT_BOUND = 4


class UsageError(Exception):
    pass


class Timeout(Exception):
    pass


@contextmanager
def _time_limit(seconds):
    if not seconds or not hasattr(signal, "SIGALRM"):
        yield
        return

    def on_alarm(signum, frame):
        raise Timeout(f"timed out after {seconds} s")

    old = signal.signal(signal.SIGALRM, on_alarm)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _names(alg) -> str:
    return identify(alg) or f"<{alg.size()} elements>"


def _assignment(h) -> str:
    return ", ".join(f"{k}->{v}" for k, v in h.items())


def _map_text(m) -> str:
    parts = []
    for sort, mp in m.as_dict().items():
        parts.extend(f"{a}->{b}" for a, b in mp.items())
    return " ".join(parts)


def _indent(text: str, pad: str = "    ") -> str:
    return "".join(pad + line + "\n" for line in text.splitlines())


class Output:
    def __init__(self, structured: bool, stream=None):
        self.structured = structured
        self.stream = stream or sys.stdout

    def line(self, text: str = ""):
        if not self.structured:
            print(text, file=self.stream)

    def emit(self, payload: dict):
        if self.structured:
            json.dump(payload, self.stream, indent=2, sort_keys=True)
            self.stream.write("\n")


# -- commands -------------------------------------------------------------------


def cmd_check(args, out: Output) -> int:
    docs_path = Path(args.algebra)
    doc = read_algebra(docs_path)
    spec = doc.monad or infer_monad(doc.algebra)
    A = check_t_algebra(spec, doc.algebra)
    eqs = read_equations(args.equations, default_monad=spec)
    results, failed = [], False
    for sl in eqs.statements:
        v = satisfies(A, sl.statement)
        failed |= not v.holds
        results.append({"line": sl.line, "statement": sl.text, "holds": v.holds, "witness": v.witness})
        if v.holds:
            out.line(f"line {sl.line}: HOLDS  {sl.text}")
        else:
            out.line(f"line {sl.line}: FAILS  {sl.text}  at {_assignment(v.witness)}")
    code = 1 if failed else 0
    out.emit({"command": "check", "algebra": str(docs_path), "monad": spec.name, "results": results, "exit": code})
    return code


CLASSIFY_PRESETS = ("Aperiodic", "Groups", "Commutative", "Idempotent", "JTrivial", "TrivialUnits")


def cmd_classify(args, out: Output) -> int:
    d = read_dfa(args.dfa)
    M, letters = syntactic_monoid(d)
    verdicts = {}
    for name in CLASSIFY_PRESETS:
        p = preset(name)
        verdicts[name] = all(satisfies(M.algebra, s).holds for s in p.statements)
    ident = identify(M.algebra)
    out.line(f"# syntactic monoid: {M.size()} elements" + (f" ({ident})" if ident else ""))
    out.line("# letters: " + " ".join(f"{a}->{m}" for a, m in letters.items()))
    out.line(format_algebra(M.algebra, M.spec).rstrip())
    for name, ok in verdicts.items():
        out.line(f"{name}: {'YES' if ok else 'NO'}")
    out.emit({"command": "classify", "size": M.size(), "identified": ident, "letters": letters,
              "monoid": format_algebra(M.algebra, M.spec), "presets": verdicts, "exit": 0})
    return 0


def _counterexample_json(cx):
    if cx is None:
        return None
    return {
        "sources": [format_algebra(a) for a in cx.sources],
        "source_names": [identify(a) for a in cx.sources],
        "result": format_algebra(cx.result),
        "result_name": identify(cx.result),
        "maps": [m.as_dict() for m in cx.maps],
        "statement": None if cx.statement is None else format_statement(cx.statement),
        "witness": cx.witness,
    }


def cmd_closure(args, out: Output) -> int:
    eqs = read_equations(args.classfile)
    stmts = [sl.statement for sl in eqs.statements]
    spec = eqs.monad
    for name in eqs.presets:
        p = preset(name)
        if stmts and p.spec != spec:
            raise UsageError(f"preset {name} lives on {p.spec.name}, the file uses {spec.name}")
        spec = p.spec
        stmts.extend(p.statements)
    bound = args.bound if args.bound is not None else (eqs.bound if eqs.bound is not None else 3)
    kinds = args.kinds.split(",") if args.kinds else list(CLOSURE_KINDS)
    memo = EnumerationMemo(args.memo) if args.memo else None
    report = check_closure(Presented(tuple(stmts), spec), bound, kinds, memo=memo, budget=args.budget, jobs=args.jobs)
    if memo is not None:
        memo.save()
    out.line(f"class over {spec.name}, bound {bound}: {len(report.members)} members")
    payload = {}
    for kind, r in report.results.items():
        out.line(f"{kind}: {'PASS' if r.passed else 'FAIL'} ({r.checked} checked)")
        cx = r.counterexample
        if cx is not None:
            arrow = " x ".join(_names(a) for a in cx.sources)
            sym = {"products": "=", "subalgebras": "<-<", "quotients": "->>", "split-quotients": "->>"}[kind]
            out.line(f"  witness: {arrow} {sym} {_names(cx.result)}")
            for m in cx.maps:
                out.line(f"  map: {_map_text(m)}")
            if cx.statement is not None:
                out.line(f"  fails {format_statement(cx.statement)} at {_assignment(cx.witness)}")
            out.line("  result:")
            out.line(_indent(format_algebra(cx.result)).rstrip("\n"))
        payload[kind] = {"passed": r.passed, "checked": r.checked, "counterexample": _counterexample_json(cx)}
    code = 0 if report.passed else 1
    out.emit({"command": "closure", "monad": spec.name, "bound": bound, "members": len(report.members),
              "kinds": payload, "exit": code})
    return code


def cmd_separate(args, out: Output) -> int:
    spec = parse_monad(args.monad)
    bound = args.bound if args.bound is not None else (args.n if args.n is not None else DEFAULT_BOUND)
    prod = spec.signature.product or "mul"
    u, v = parse_term(args.u, prod, spec.signature.sorts), parse_term(args.v, prod, spec.signature.sorts)
    memo = EnumerationMemo(args.memo) if args.memo else None
    s = separate(u, v, spec, bound, memo=memo, budget=args.budget, jobs=args.jobs)
    if memo is not None:
        memo.save()
    if s is None:
        out.line(f"not separated by any {spec.name} algebra of size <= {bound}")
        out.emit({"command": "separate", "u": args.u, "v": args.v, "bound": bound, "separated": False,
                  "witness": None, "exit": 0})
        return 0
    alg = s.algebra.algebra
    out.line(f"separated by {_names(alg)} (size {alg.size()}) at {_assignment(s.assignment)}: "
             f"{args.u} -> {s.left}, {args.v} -> {s.right}")
    out.line(format_algebra(alg, s.algebra.spec).rstrip())
    out.emit({"command": "separate", "u": args.u, "v": args.v, "bound": bound, "separated": True,
              "witness": {"algebra": format_algebra(alg, s.algebra.spec), "name": identify(alg),
                          "size": alg.size(), "assignment": s.assignment, "left": s.left, "right": s.right},
              "exit": 1})
    return 1


def cmd_enumerate(args, out: Output) -> int:
    spec = parse_monad(args.monad)
    memo = EnumerationMemo(args.memo) if args.memo else None
    if memo is not None:
        algs = memo.enumerate(spec, args.n, budget=args.budget, jobs=args.jobs)
        memo.save()
    else:
        algs = enumerate_t_algebras(spec, args.n, budget=args.budget, jobs=args.jobs)
    if args.count:
        out.line(str(len(algs)))
    else:
        for i, A in enumerate(algs):
            if i:
                out.line("---")
            out.line(format_algebra(A.algebra, spec).rstrip())
    out.emit({"command": "enumerate", "monad": spec.name, "size": args.n, "count": len(algs),
              "algebras": [] if args.count else [format_algebra(A.algebra, spec) for A in algs], "exit": 0})
    return 0


def cmd_translate(args, out: Output) -> int:
    eqs = read_equations(args.equations)
    gens = args.generators.split(",") if args.generators else None
    rows = []
    for sl in eqs.statements:
        s = sl.statement
        if isinstance(s.vars, AlgebraVars):
            t = equation_to_implication(s, gens)
            text = format_statement(t)
            names = format_vars(t.vars)
        else:
            text, names = sl.text, format_vars(s.vars)
        rows.append({"line": sl.line, "input": sl.text, "vars": names, "output": text})
        out.line(f"vars: {names}")
        out.line(text)
    out.emit({"command": "translate", "monad": eqs.monad.name, "statements": rows, "exit": 0})
    return 0


def cmd_presets(args, out: Output) -> int:
    rows = []
    for p in PRESETS.values():
        prod = p.spec.signature.product or "mul"
        stmts = [format_statement(s, prod) for s in p.statements]
        rows.append({"name": p.name, "monad": p.spec.name, "statements": stmts, "description": p.description})
        out.line(f"{p.name:<15} {p.spec.name:<11} {'; '.join(stmts)}")
    out.emit({"command": "presets", "presets": rows, "exit": 0})
    return 0


# -- argument parsing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--structured", action="store_true", help="write one JSON document to stdout")
    common.add_argument("--memo", metavar="PATH", help="on-disk memo of enumeration results")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for monoid enumeration")
    common.add_argument("--budget", type=int, default=None, help="largest size the enumerator may attempt")
    common.add_argument("--timeout", type=float, default=None, help="abort after this many seconds")

    parser = argparse.ArgumentParser(prog="finalg", description="Finite algebras, pi-terms and pseudovarieties.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check statements in an algebra")
    p.add_argument("algebra")
    p.add_argument("equations")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", parents=[common], help="syntactic monoid of a DFA and preset verdicts")
    p.add_argument("dfa")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("closure", parents=[common], help="closure checks for a class file")
    p.add_argument("classfile")
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--kinds", default=None, help="comma-separated subset of " + ",".join(CLOSURE_KINDS))
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("separate", parents=[common], help="search for an algebra separating two pi-terms")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("n", nargs="?", type=int, default=None, help="size bound (same as --bound)")
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--monad", default="Set:Word")
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("enumerate", parents=[common], help="all T-algebras of a given size")
    p.add_argument("monad")
    p.add_argument("n", type=int)
    p.add_argument("--count", action="store_true", help="print only the number of algebras")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("translate", parents=[common], help="rewrite equations over an algebra as implications")
    p.add_argument("equations")
    p.add_argument("--generators", default=None, help="comma-separated generators of the variable monoid")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("presets", parents=[common], help="list the preset classes")
    p.add_argument("action", nargs="?", default="list", choices=["list"])
    p.set_defaults(func=cmd_presets)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    out = Output(args.structured)
    try:
        with _time_limit(args.timeout):
            return args.func(args, out)
    except (FormatError, AlgebraError, TermSyntaxError, EvaluationError, UsageError, Timeout, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if args.structured:
            out.emit({"command": args.command, "error": str(exc), "exit": 2})
        return 2


if __name__ == "__main__":
    sys.exit(main())
