"""Plain-text file formats for algebras, automata and equation/class files.

Algebra files::

    # comments run to the end of the line
    monad: Set:Word              # optional; fixes the signature
    sorts: M                     # required when no monad is given
    elements: 1 a b              # or "elements <sort>: ..." when many-sorted
    op mul(M,M)->M assoc product
    op unit()->M unit
    mul a a = b                  # one table row per defined entry
    unit = 1
    ordered                      # marks an ordered algebra (may be discrete)
    order: a <= b <= 1           # "order <sort>: ..." when many-sorted

Operation flags are ``assoc`` (designated associative), ``product`` (written
as juxtaposition in terms) ``unit`` (written ``1``) and ``partial``.  A file
may hold several algebras separated by lines consisting of ``---``.

Automaton files have ``states:``, ``alphabet:``, ``init:``, ``final:`` lines
and one ``trans: q a -> r`` line per transition.

Equation files hold one statement per line (``eq:``, ``ineq:``, ``impl:``),
each interpreted over the variables declared by the closest preceding
``vars: x y`` or ``varalg: <algebra file>`` line.  Class files add
``bound: n`` and ``preset: <name>`` lines.  ``monad:`` selects the monad
(default ``Set:Word``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import AlgebraError, FiniteAlgebra, InvalidAlgebra, OpSymbol, Signature, validate_algebra
from .equations import AlgebraVars, EquationLike, FreeVars, StatementSyntaxError, format_statement, format_vars, parse_statement
from .monads import Dfa, MonadSpec, parse_monad


class FormatError(ValueError):
    """Parse error with a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1, source: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


@dataclass
class _Line:
    number: int
    text: str    # comment stripped, right-stripped
    indent: int  # offset of the first non-space character


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            yield _Line(i, body, len(body) - len(body.lstrip()))


def _keyword(line: _Line):
    """Split ``key[ arg]: rest`` returning (key, arg, rest, value_column0)."""
    m = re.match(r"\s*([A-Za-z_]+)(?:\s+([^:\s]+))?\s*:", line.text)
    if not m:
        return None
    rest = line.text[m.end():]
    return m.group(1), m.group(2), rest, m.end() + len(rest) - len(rest.lstrip())


# -- algebras --------------------------------------------------------------------


_OP_DECL = re.compile(r"\s*op\s+([A-Za-z_][A-Za-z0-9_']*)\s*\(([^)]*)\)\s*->\s*([A-Za-z_][A-Za-z0-9_]*)((?:\s+\w+)*)\s*$")
_FLAGS = ("assoc", "product", "unit", "partial")


@dataclass
class AlgebraDoc:
    algebra: FiniteAlgebra
    monad: MonadSpec | None = None
    line: int = 1


def _split_blocks(text: str):
    block, start = [], 1
    for i, raw in enumerate(text.splitlines(), start=1):
        if raw.strip() == "---":
            yield start, block
            block, start = [], i + 1
        else:
            block.append(raw)
    yield start, block


def parse_algebras(text: str, source: str | None = None) -> list[AlgebraDoc]:
    out = []
    for start, block in _split_blocks(text):
        body = "\n" * (start - 1) + "\n".join(block)
        if any(l.strip() and not l.strip().startswith("#") for l in block):
            out.append(_parse_one(body, source))
    if not out:
        raise FormatError("no algebra found", 1, 1, source)
    return out


def parse_algebra(text: str, source: str | None = None) -> AlgebraDoc:
    docs = parse_algebras(text, source)
    if len(docs) != 1:
        raise FormatError(f"expected one algebra, found {len(docs)}", docs[1].line, 1, source)
    return docs[0]


def _parse_one(text: str, source) -> AlgebraDoc:
    err = lambda msg, line, col=1: FormatError(msg, line, col, source)
    monad_spec = None
    sorts: list[str] | None = None
    decls: list[tuple[OpSymbol, set[str], int]] = []
    elements: dict[str | None, tuple[list[str], int]] = {}
    rows: list[tuple[_Line, str, list[tuple[str, int]], tuple[str, int]]] = []
    order_lines: list[tuple[_Line, str | None, list[tuple[str, int]]]] = []
    ordered = False
    first_line = None

    for line in _lines(text):
        first_line = first_line or line.number
        stripped = line.text.strip()
        if stripped == "ordered":
            ordered = True
            continue
        m = _OP_DECL.match(line.text)
        if m:
            name, args, result, flags = m.groups()
            args = tuple(a.strip() for a in args.split(",") if a.strip())
            flags = set(flags.split())
            bad = flags - set(_FLAGS)
            if bad:
                raise err(f"unknown operation flag {sorted(bad)[0]!r}", line.number, line.text.index(sorted(bad)[0]) + 1)
            decls.append((OpSymbol(name, args, result, "partial" in flags), flags, line.number))
            continue
        if stripped.startswith("op ") or stripped == "op":
            raise err("malformed operation declaration, expected 'op name(S,...)->S [flags]'",
                      line.number, line.indent + 1)
        kw = _keyword(line)
        if kw and kw[0] in ("monad", "sorts", "elements", "order"):
            key, arg, rest, at = kw
            if key == "monad":
                try:
                    monad_spec = parse_monad(rest.strip())
                except AlgebraError as exc:
                    raise err(str(exc), line.number, at + 1) from None
            elif key == "sorts":
                sorts = rest.split()
            elif key == "elements":
                if arg in elements:
                    raise err(f"elements of {arg or 'the sort'} declared twice", line.number, line.indent + 1)
                elements[arg] = (rest.split(), line.number)
            else:
                order_lines.append((line, arg, _tokens(line.text, at)))
            continue
        # a table row: "<op> a b = c"
        toks = _tokens(line.text, 0)
        if "=" not in [t for t, _ in toks]:
            raise err("expected a declaration or a table row 'op a b = c'", line.number, line.indent + 1)
        eq = [t for t, _ in toks].index("=")
        if eq == 0 or eq != len(toks) - 2:
            raise err("table rows have the form 'op a b = c'", line.number, toks[min(eq, len(toks) - 1)][1] + 1)
        rows.append((line, toks[0][0], toks[1:eq], toks[eq + 1]))

    if first_line is None:
        raise err("empty algebra", 1)
    sig = _signature(monad_spec, sorts, decls, err, first_line)
    carriers = {}
    for key, (names, ln) in elements.items():
        sort = key if key is not None else (sig.sorts[0] if len(sig.sorts) == 1 else None)
        if sort is None:
            raise err("'elements:' needs a sort name when there are several sorts", ln)
        if sort not in sig.sorts:
            raise err(f"unknown sort {sort!r}", ln)
        if sort in carriers:
            raise err(f"elements of {sort} declared twice", ln)
        carriers[sort] = names
    for s in sig.sorts:
        if not carriers.get(s):
            raise err(f"sort {s} has no elements", first_line)

    tables: dict[str, dict] = {o.name: {} for o in sig.ops}
    for line, op, args, res in rows:
        if not sig.has_op(op):
            raise err(f"unknown operation {op!r}", line.number, line.indent + 1)
        o = sig.op(op)
        if len(args) != o.arity:
            raise err(f"{op} takes {o.arity} arguments, got {len(args)}", line.number, line.indent + 1)
        for (a, col), s in zip(args + [res], o.args + (o.result,)):
            if a not in carriers[s]:
                raise err(f"unknown element {a!r} of sort {s}", line.number, col + 1)
        key = tuple(a for a, _ in args)
        if key in tables[op]:
            raise err(f"duplicate entry for {op} {' '.join(key)}", line.number, line.indent + 1)
        tables[op][key] = res[0]

    order = None
    if ordered or order_lines:
        order = {s: [] for s in sig.sorts}
        for line, arg, toks in order_lines:
            sort = arg if arg is not None else (sig.sorts[0] if len(sig.sorts) == 1 else None)
            if sort not in sig.sorts:
                raise err("'order:' needs a valid sort name", line.number, line.indent + 1)
            names = [t for t, _ in toks]
            if len(names) < 3 or names[1::2] != ["<="] * (len(names) // 2) or len(names) % 2 == 0:
                raise err("order lines have the form 'a <= b [<= c ...]'", line.number, line.indent + 1)
            for (a, col) in toks[::2]:
                if a not in carriers[sort]:
                    raise err(f"unknown element {a!r} of sort {sort}", line.number, col + 1)
            chain = names[::2]
            order[sort].extend(zip(chain, chain[1:]))
    try:
        alg = validate_algebra(sig, {"carriers": carriers, "tables": tables, "order": order})
    except InvalidAlgebra as exc:
        raise err(str(exc.violations[0]), first_line) from None
    except AlgebraError as exc:
        raise err(str(exc), first_line) from None
    return AlgebraDoc(alg, monad_spec, first_line)


def _tokens(text: str, offset: int = 0) -> list[tuple[str, int]]:
    """Whitespace-separated tokens of ``text[offset:]`` with absolute columns."""
    return [(m.group(), m.start()) for m in re.compile(r"\S+").finditer(text, offset)]


def _signature(monad_spec, sorts, decls, err, first_line) -> Signature:
    if not decls:
        if monad_spec is not None:
            return monad_spec.signature
        if sorts is None:
            raise err("give a 'monad:' line or declare 'sorts:'", first_line)
        try:
            return Signature(tuple(sorts))
        except AlgebraError as exc:
            raise err(str(exc), first_line) from None
    if sorts is None:
        if monad_spec is None:
            raise err("'sorts:' must be declared", first_line)
        sorts = list(monad_spec.signature.sorts)
    assoc = {o.name for o, f, _ in decls if "assoc" in f}
    prods = [o.name for o, f, _ in decls if "product" in f]
    units = [o.name for o, f, _ in decls if "unit" in f]
    if len(prods) > 1 or len(units) > 1:
        raise err("at most one product and one unit operation", decls[0][2])
    try:
        sig = Signature(tuple(sorts), tuple(o for o, _, _ in decls), assoc,
                        prods[0] if prods else None, units[0] if units else None)
    except AlgebraError as exc:
        raise err(str(exc), decls[0][2]) from None
    if monad_spec is not None and sig != monad_spec.signature:
        raise err(f"declared operations do not match the signature of {monad_spec.name}", decls[0][2])
    return sig


def format_algebra(alg: FiniteAlgebra, monad: MonadSpec | None = None) -> str:
    """Text form that :func:`parse_algebra` reads back to an equal algebra."""
    sig = alg.signature
    multi = len(sig.sorts) > 1
    out = []
    if monad is not None:
        out.append(f"monad: {monad.name}")
    out.append("sorts: " + " ".join(sig.sorts))
    for s, names in zip(sig.sorts, alg.carriers):
        out.append(f"elements {s}: " if multi else "elements: ")
        out[-1] += " ".join(names)
    for o in sig.ops:
        flags = [f for f, on in (("assoc", o.name in sig.designated_assoc), ("product", o.name == sig.product),
                                 ("unit", o.name == sig.unit), ("partial", o.partial)) if on]
        out.append(f"op {o.name}({','.join(o.args)})->{o.result}" + "".join(" " + f for f in flags))
    for o in sig.ops:
        for args, r in alg.entries(o.name):
            if r is None:
                continue
            names = [alg.carriers[sig.sort_index(s)][a] for s, a in zip(o.args, args)]
            out.append(" ".join([o.name, *names, "=", alg.carriers[sig.sort_index(o.result)][r]]))
    if alg.is_ordered:
        out.append("ordered")
        for k, s in enumerate(sig.sorts):
            for a, b in _covers(alg, k):
                out.append((f"order {s}: " if multi else "order: ") + f"{alg.carriers[k][a]} <= {alg.carriers[k][b]}")
    return "\n".join(out) + "\n"


def _covers(alg: FiniteAlgebra, k: int):
    strict = set(alg.strict_order_pairs(k))
    for a, b in sorted(strict):
        if not any((a, c) in strict and (c, b) in strict for c in range(alg.size(alg.signature.sorts[k]))):
            yield a, b


def format_algebras(algs, monad: MonadSpec | None = None) -> str:
    return "---\n".join(format_algebra(getattr(a, "algebra", a), monad) for a in algs)


def read_algebra(path) -> AlgebraDoc:
    p = Path(path)
    return parse_algebra(p.read_text(encoding="utf-8"), str(p))


# -- automata ---------------------------------------------------------------------


def parse_dfa(text: str, source: str | None = None) -> Dfa:
    err = lambda msg, line, col=1: FormatError(msg, line, col, source)
    fields: dict[str, tuple[list[str], int]] = {}
    trans: dict[tuple[str, str], str] = {}
    for line in _lines(text):
        kw = _keyword(line)
        if not kw or kw[1] is not None:
            raise err("expected 'states:', 'alphabet:', 'init:', 'final:' or 'trans:'", line.number, line.indent + 1)
        key, _, rest, at = kw
        if key == "trans":
            m = re.fullmatch(r"\s*(\S+)\s+(\S+)\s*->\s*(\S+)\s*", rest)
            if not m:
                raise err("transitions have the form 'trans: q a -> r'", line.number, at + 1)
            q, a, r = m.groups()
            if (q, a) in trans:
                raise err(f"duplicate transition from {q} on {a}", line.number, at + 1)
            trans[(q, a)] = r
        elif key in ("states", "alphabet", "init", "final"):
            if key in fields:
                raise err(f"'{key}:' given twice", line.number, line.indent + 1)
            fields[key] = (rest.split(), line.number)
        else:
            raise err(f"unknown key {key!r}", line.number, line.indent + 1)
    for key in ("states", "alphabet", "init"):
        if key not in fields:
            raise err(f"missing '{key}:' line", 1)
    init, ln = fields["init"]
    if len(init) != 1:
        raise err("'init:' takes exactly one state", ln)
    try:
        return Dfa(tuple(fields["states"][0]), tuple(fields["alphabet"][0]), trans, init[0],
                   frozenset(fields.get("final", ([], 0))[0]))
    except AlgebraError as exc:
        raise err(str(exc), 1) from None


def format_dfa(d: Dfa) -> str:
    out = ["states: " + " ".join(d.states), "alphabet: " + " ".join(d.alphabet), f"init: {d.initial}",
           "final: " + " ".join(q for q in d.states if q in d.finals)]
    for q in d.states:
        for a in d.alphabet:
            out.append(f"trans: {q} {a} -> {d.transitions[(q, a)]}")
    return "\n".join(out) + "\n"


def read_dfa(path) -> Dfa:
    p = Path(path)
    return parse_dfa(p.read_text(encoding="utf-8"), str(p))


# -- equation and class files --------------------------------------------------------


@dataclass
class StatementLine:
    line: int
    text: str
    statement: EquationLike


@dataclass
class EquationFile:
    monad: MonadSpec
    statements: list[StatementLine] = field(default_factory=list)
    bound: int | None = None
    presets: list[str] = field(default_factory=list)


def parse_equations(text: str, source: str | None = None, base_dir=None, resolve_algebra=None,
                    default_monad: MonadSpec | None = None) -> EquationFile:
    """Parse an equation or class file.

    ``varalg:`` paths are resolved relative to ``base_dir``; a name that is
    not a file is looked up by ``resolve_algebra`` (by default the catalogue
    of named monoids).
    """
    err = lambda msg, line, col=1: FormatError(msg, line, col, source)
    if resolve_algebra is None:
        from .catalog import NAMED_MONOIDS

        resolve_algebra = lambda name: NAMED_MONOIDS[name]() if name in NAMED_MONOIDS else None
    base = Path(base_dir) if base_dir is not None else Path(".")
    result = EquationFile(default_monad or parse_monad("Set:Word"))
    vars_obj = None
    seen_statement = False
    for line in _lines(text):
        kw = _keyword(line)
        if not kw or kw[1] is not None:
            raise err("expected 'key: value'", line.number, line.indent + 1)
        key, _, rest, at = kw
        if key == "monad":
            if seen_statement:
                raise err("'monad:' must precede all statements", line.number, line.indent + 1)
            try:
                result.monad = parse_monad(rest.strip())
            except AlgebraError as exc:
                raise err(str(exc), line.number, at + 1) from None
        elif key == "vars":
            try:
                vars_obj = FreeVars.of(rest)
            except AlgebraError as exc:
                raise err(str(exc), line.number, at + 1) from None
        elif key == "varalg":
            name = rest.strip()
            p = base / name
            if p.is_file():
                try:
                    X = read_algebra(p).algebra
                except FormatError as exc:
                    raise err(f"in {name}: {exc}", line.number, at + 1) from None
            else:
                X = resolve_algebra(name)
                if X is None:
                    raise err(f"no algebra file or named algebra {name!r}", line.number, at + 1)
            vars_obj = AlgebraVars(X)
        elif key == "bound":
            try:
                result.bound = int(rest)
            except ValueError:
                raise err("'bound:' takes an integer", line.number, at + 1) from None
        elif key == "preset":
            result.presets.append(rest.strip())
        elif key in ("eq", "ineq", "impl"):
            if vars_obj is None:
                raise err("statements must be preceded by 'vars:' or 'varalg:'", line.number, line.indent + 1)
            sig = result.monad.signature
            stmt_text = line.text.strip()
            try:
                stmt = parse_statement(stmt_text, vars_obj, sig.product or "mul", sig.sorts)
            except StatementSyntaxError as exc:
                raise err(exc.message, line.number, line.indent + exc.pos + 1) from None
            result.statements.append(StatementLine(line.number, stmt_text, stmt))
            seen_statement = True
        else:
            raise err(f"unknown key {key!r}", line.number, line.indent + 1)
    return result


def read_equations(path, default_monad: MonadSpec | None = None) -> EquationFile:
    p = Path(path)
    return parse_equations(p.read_text(encoding="utf-8"), str(p), p.parent, default_monad=default_monad)


def format_equations(statements, monad: MonadSpec | None = None) -> str:
    """Statements over free variables in equation-file form."""
    out = [] if monad is None else [f"monad: {monad.name}"]
    current = None
    product = monad.signature.product if monad is not None and monad.signature.product else "mul"
    for s in statements:
        if not isinstance(s.vars, FreeVars):
            raise AlgebraError("only statements over free variables can be written inline")
        if s.vars != current:
            out.append("vars: " + format_vars(s.vars))
            current = s.vars
        out.append(format_statement(s, product))
    return "\n".join(out) + "\n"
