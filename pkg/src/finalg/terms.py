"""Pi-terms: variables, operations, and the idempotent (pi) power.

Grammar (juxtaposition denotes the signature's designated product)::

    term    := factor+                       left-associative product
    factor  := atom ('^pi' | '^' INT)*
    atom    := '1' | var | IDENT '(' [term (',' term)*] ')' | '(' term ')'
    var     := (IDENT | '{' NAME '}') [':' SORT]

An identifier immediately followed by ``(`` (no whitespace) is an operation
application; ``x (y)`` is a product.  ``^n`` is shorthand for an n-fold
product.  ``{...}`` quotes variable names that are not identifiers, such as
element names of a finite algebra used as variables.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Mapping, Union

from .algebra import AlgebraError, FiniteAlgebra, Signature


class TermSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at column {pos + 1}: {text!r}")


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    name: str
    sort: str | None = None


@dataclass(frozen=True)
class Unit:
    pass


@dataclass(frozen=True)
class Apply:
    op: str
    args: tuple


@dataclass(frozen=True)
class PiPower:
    arg: "PiTerm"
    op: str


PiTerm = Union[Var, Unit, Apply, PiPower]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_INT = re.compile(r"[0-9]+")


def is_identifier(name: str) -> bool:
    return bool(_IDENT.fullmatch(name))


class _Parser:
    def __init__(self, text: str, product: str, sorts):
        self.text = text
        self.pos = 0
        self.product = product
        self.sorts = sorts

    def error(self, msg):
        raise TermSyntaxError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self):
        t = self.term()
        if self.peek():
            self.error("unexpected input")
        return t

    def starts_atom(self) -> bool:
        c = self.peek()
        return bool(c) and (c in "({1" or c.isalpha() or c == "_")

    def term(self):
        if not self.starts_atom():
            self.error("expected a term")
        t = self.factor()
        while self.starts_atom():
            t = Apply(self.product, (t, self.factor()))
        return t

    def factor(self):
        t = self.atom()
        while self.peek() == "^":
            self.pos += 1
            if self.text.startswith("pi", self.pos):
                self.pos += 2
                t = PiPower(t, self.product)
                continue
            m = _INT.match(self.text, self.pos)
            if not m or int(m.group()) < 1:
                self.error("expected 'pi' or a positive integer after '^'")
            self.pos = m.end()
            base = t
            for _ in range(int(m.group()) - 1):
                t = Apply(self.product, (t, base))
        return t

    def sort_suffix(self):
        if self.pos < len(self.text) and self.text[self.pos] == ":":
            self.pos += 1
            m = _IDENT.match(self.text, self.pos)
            if not m:
                self.error("expected a sort name")
            if self.sorts is not None and m.group() not in self.sorts:
                self.error(f"unknown sort {m.group()!r}")
            self.pos = m.end()
            return m.group()
        return None

    def atom(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            t = self.term()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return t
        if c == "{":
            end = self.text.find("}", self.pos)
            if end < 0:
                self.error("unterminated '{'")
            name = self.text[self.pos + 1:end]
            if not name:
                self.error("empty variable name")
            self.pos = end + 1
            return Var(name, self.sort_suffix())
        if c == "1":
            m = _INT.match(self.text, self.pos)
            if m.group() != "1":
                self.error("numerals other than 1 are not terms")
            self.pos = m.end()
            return Unit()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.error("expected a term")
        self.pos = m.end()
        name = m.group()
        if self.pos < len(self.text) and self.text[self.pos] == "(":
            self.pos += 1
            args = []
            if self.peek() != ")":
                args.append(self.term())
                while self.peek() == ",":
                    self.pos += 1
                    args.append(self.term())
            if self.peek() != ")":
                self.error("expected ')' or ','")
            self.pos += 1
            return Apply(name, tuple(args))
        return Var(name, self.sort_suffix())


def parse_term(text: str, product: str = "mul", sorts=None) -> PiTerm:
    """Parse ``text``; juxtaposition and ``^pi`` refer to the op ``product``."""
    return _Parser(text, product, sorts).parse()


def _print(t: PiTerm, product: str) -> str:
    if isinstance(t, Var):
        s = t.name if is_identifier(t.name) else "{" + t.name + "}"
        return s + (":" + t.sort if t.sort else "")
    if isinstance(t, Unit):
        return "1"
    if isinstance(t, PiPower):
        if t.op != product:
            raise ValueError(f"pi-power over {t.op} cannot be written when the product is {product}")
        return _factor(t.arg, product) + "^pi"
    if t.op == product and len(t.args) == 2:
        return _print(t.args[0], product) + " " + _factor(t.args[1], product)
    return t.op + "(" + ", ".join(_print(a, product) for a in t.args) + ")"


def _factor(t: PiTerm, product: str) -> str:
    s = _print(t, product)
    if isinstance(t, Apply) and t.op == product and len(t.args) == 2:
        return "(" + s + ")"
    return s


def print_term(t: PiTerm, product: str = "mul") -> str:
    return _print(t, product)


def variables(t: PiTerm) -> list[str]:
    """Variable names in order of first occurrence."""
    out: list[str] = []

    def walk(u):
        if isinstance(u, Var):
            if u.name not in out:
                out.append(u.name)
        elif isinstance(u, Apply):
            for a in u.args:
                walk(a)
        elif isinstance(u, PiPower):
            walk(u.arg)

    walk(t)
    return out


def substitute(t: PiTerm, mapping: Mapping[str, PiTerm]) -> PiTerm:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Apply):
        return Apply(t.op, tuple(substitute(a, mapping) for a in t.args))
    if isinstance(t, PiPower):
        return PiPower(substitute(t.arg, mapping), t.op)
    return t


def product_of(factors, product: str = "mul") -> PiTerm:
    """Left-nested product of a sequence of terms (``Unit`` when empty)."""
    factors = list(factors)
    if not factors:
        return Unit()
    t = factors[0]
    for f in factors[1:]:
        t = Apply(product, (t, f))
    return t


def term_sort(t: PiTerm, sig: Signature, var_sorts: Mapping[str, str]) -> str:
    """Sort of ``t``; raises :class:`EvaluationError` if ill-sorted."""
    if isinstance(t, Var):
        if t.name not in var_sorts:
            raise EvaluationError(f"unknown variable {t.name!r}")
        if t.sort is not None and t.sort != var_sorts[t.name]:
            raise EvaluationError(f"variable {t.name} annotated {t.sort} but has sort {var_sorts[t.name]}")
        return var_sorts[t.name]
    if isinstance(t, Unit):
        if sig.unit is None:
            raise EvaluationError("signature has no unit")
        return sig.op(sig.unit).result
    if isinstance(t, PiPower):
        if t.op not in sig.designated_assoc:
            raise EvaluationError(f"pi-power needs a designated associative op, {t.op!r} is not")
        s = term_sort(t.arg, sig, var_sorts)
        if s != sig.op(t.op).result:
            raise EvaluationError(f"pi-power over {t.op} applied to sort {s}")
        return s
    try:
        o = sig.op(t.op)
    except AlgebraError as exc:
        raise EvaluationError(str(exc)) from None
    if len(t.args) != o.arity:
        raise EvaluationError(f"{t.op} takes {o.arity} arguments")
    for a, s in zip(t.args, o.args):
        got = term_sort(a, sig, var_sorts)
        if got != s:
            raise EvaluationError(f"argument of {t.op} has sort {got}, expected {s}")
    return o.result


Lookup = Callable[[str, tuple], "int | None"]


def power_cycle_idempotent(a: int, mul: Callable[[int, int], "int | None"]) -> int:
    """The unique idempotent among the powers of ``a`` under associative ``mul``."""
    powers = [a]
    seen = {a: 1}
    x = a
    while True:
        x = mul(x, a)
        if x is None:
            raise EvaluationError("power undefined (element is not composable with itself)")
        if x in seen:
            break
        powers.append(x)
        seen[x] = len(powers)
    index = seen[x]
    period = len(powers) + 1 - index
    k = -(-index // period) * period
    return powers[k - 1]


def idempotent_power(a, op: str, A: FiniteAlgebra):
    """Idempotent power of ``a`` (name or index) under the associative op ``op``."""
    if op not in A.signature.designated_assoc or not A.is_associative(op):
        raise EvaluationError(f"{op} is not certified associative on this algebra")
    if isinstance(a, str):
        sort = A.signature.op(op).result
        i = power_cycle_idempotent(A.index(sort, a), lambda x, y: A.apply(op, x, y))
        return A.name(sort, i)
    return power_cycle_idempotent(a, lambda x, y: A.apply(op, x, y))


class Undefined(Exception):
    """A partially filled table was consulted at an unfilled entry."""


def evaluate_raw(t: PiTerm, lookup: Lookup, assignment: Mapping[str, int], unit: int | None = None) -> int:
    """Evaluate against an arbitrary table lookup; ``lookup`` returns None for
    undefined entries, which raises :class:`Undefined`."""
    if isinstance(t, Var):
        return assignment[t.name]
    if isinstance(t, Unit):
        if unit is None:
            raise EvaluationError("no unit")
        return unit
    if isinstance(t, PiPower):
        a = evaluate_raw(t.arg, lookup, assignment, unit)

        def mul(x, y):
            r = lookup(t.op, (x, y))
            if r is None:
                raise Undefined(t.op)
            return r

        return power_cycle_idempotent(a, mul)
    args = tuple(evaluate_raw(a, lookup, assignment, unit) for a in t.args)
    r = lookup(t.op, args)
    if r is None:
        raise Undefined(t.op)
    return r


def evaluate(t: PiTerm, A: FiniteAlgebra, assignment: Mapping[str, int]) -> int:
    """Evaluate with variables mapped to element indices; returns an index."""
    unit = A.apply(A.signature.unit) if A.signature.unit is not None else None

    def lookup(op, args):
        return A.apply(op, *args)

    for name in variables(t):
        if name not in assignment:
            raise EvaluationError(f"variable {name!r} is not assigned")
    if any(isinstance(x, PiPower) for x in _subterms(t)):
        for x in _subterms(t):
            if isinstance(x, PiPower) and not A.is_associative(x.op):
                raise EvaluationError(f"{x.op} is not associative on this algebra")
    try:
        return evaluate_raw(t, lookup, assignment, unit)
    except Undefined as exc:
        raise EvaluationError(f"{exc.args[0]} is undefined on these arguments") from None


def _subterms(t: PiTerm):
    yield t
    if isinstance(t, Apply):
        for a in t.args:
            yield from _subterms(a)
    elif isinstance(t, PiPower):
        yield from _subterms(t.arg)


def eval_pi_term(t: PiTerm | str, A: FiniteAlgebra, h: Mapping[str, str]) -> str:
    """Evaluate ``t`` in ``A`` under ``h`` (variable -> element name); returns a name.

    Variable sorts are inferred from the term's context in the signature.
    """
    sig = A.signature
    if isinstance(t, str):
        t = parse_term(t, sig.product or "mul", sig.sorts)
    var_sorts = infer_var_sorts(t, sig)
    for name, sort in var_sorts.items():
        if name not in h:
            raise EvaluationError(f"variable {name!r} is not assigned")
    assignment = {v: A.index(var_sorts[v], h[v]) for v in var_sorts}
    out_sort = term_sort(t, sig, var_sorts)
    return A.name(out_sort, evaluate(t, A, assignment))


def infer_var_sorts(t: PiTerm, sig: Signature, default: str | None = None) -> dict[str, str]:
    """Assign each variable the sort forced by its position (or annotation)."""
    out: dict[str, str] = {}
    if default is None:
        if sig.product is not None:
            default = sig.op(sig.product).result
        elif len(sig.sorts) == 1:
            default = sig.sorts[0]

    def put(name, sort):
        if sort is None:
            return
        if name in out and out[name] != sort:
            raise EvaluationError(f"variable {name} used at sorts {out[name]} and {sort}")
        out[name] = sort

    def walk(u, expected):
        if isinstance(u, Var):
            put(u.name, u.sort or expected)
        elif isinstance(u, Apply):
            try:
                o = sig.op(u.op)
            except AlgebraError as exc:
                raise EvaluationError(str(exc)) from None
            if len(u.args) != o.arity:
                raise EvaluationError(f"{u.op} takes {o.arity} arguments")
            for a, s in zip(u.args, o.args):
                walk(a, s)
        elif isinstance(u, PiPower):
            walk(u.arg, sig.op(u.op).result if sig.has_op(u.op) else expected)

    walk(t, default)
    for name in variables(t):
        if name not in out:
            raise EvaluationError(f"cannot infer the sort of variable {name!r}")
    return out
