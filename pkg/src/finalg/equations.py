"""Profinite equations, inequations and implications over pi-terms, and their
satisfaction in finite algebras.

Variables come either as a finite set of (sorted) names, interpreted by
arbitrary maps into the algebra, or as a finite object of the base category,
interpreted by base morphisms.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Union

from .algebra import AlgebraError, FiniteAlgebra, Verdict, enumerate_morphisms, reduct
from .monads import MONOID_SIG, SET_SIG, TAlgebra, path_endpoints
from .terms import (
    EvaluationError,
    PiTerm,
    TermSyntaxError,
    Unit,
    Var,
    _subterms,
    evaluate,
    infer_var_sorts,
    is_identifier,
    parse_term,
    print_term,
    product_of,
    substitute,
    term_sort,
)


@dataclass(frozen=True)
class FreeVars:
    names: tuple[tuple[str, str | None], ...]

    @classmethod
    def of(cls, *names: str) -> FreeVars:
        out = []
        for n in names:
            for tok in n.split():
                name, _, sort = tok.rpartition(":") if tok.startswith("{") else tok.partition(":")
                if not name:
                    name, sort = sort, ""
                if name.startswith("{") and name.endswith("}"):
                    name = name[1:-1]
                out.append((name, sort or None))
        return cls(tuple(out))

    def __post_init__(self):
        if not self.names:
            raise AlgebraError("a variable set must be nonempty")


@dataclass(frozen=True)
class AlgebraVars:
    algebra: FiniteAlgebra


VariableObject = Union[FreeVars, AlgebraVars]


@dataclass(frozen=True)
class Equation:
    vars: VariableObject
    lhs: PiTerm
    rhs: PiTerm


@dataclass(frozen=True)
class Inequation:
    vars: VariableObject
    lhs: PiTerm
    rhs: PiTerm


@dataclass(frozen=True)
class Implication:
    vars: VariableObject
    premises: tuple[tuple[PiTerm, PiTerm, str], ...]  # (lhs, rhs, '=' or '<=')
    lhs: PiTerm
    rhs: PiTerm
    relation: str = "="


EquationLike = Union[Equation, Inequation, Implication]


def _as_implication(e: EquationLike) -> Implication:
    if isinstance(e, Implication):
        return e
    return Implication(e.vars, (), e.lhs, e.rhs, "<=" if isinstance(e, Inequation) else "=")


def statement_terms(e: EquationLike) -> list[PiTerm]:
    imp = _as_implication(e)
    return [t for l, r, _ in imp.premises for t in (l, r)] + [imp.lhs, imp.rhs]


def format_statement(e: EquationLike, product: str = "mul") -> str:
    """One-line ``eq:``/``ineq:``/``impl:`` form (the equation file syntax)."""
    p = lambda t: print_term(t, product)
    if isinstance(e, Equation):
        return f"eq: {p(e.lhs)} = {p(e.rhs)}"
    if isinstance(e, Inequation):
        return f"ineq: {p(e.lhs)} <= {p(e.rhs)}"
    prem = ", ".join(f"{p(l)} {rel} {p(r)}" for l, r, rel in e.premises)
    return f"impl: {prem} => {p(e.lhs)} {e.relation} {p(e.rhs)}"


def format_vars(vars: FreeVars) -> str:
    shown = []
    for name, sort in vars.names:
        text = name if is_identifier(name) else "{" + name + "}"
        shown.append(text if sort is None else f"{text}:{sort}")
    return " ".join(shown)


class StatementSyntaxError(ValueError):
    """Malformed statement; ``pos`` is a 0-based offset into ``text``."""

    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at column {pos + 1}")


def _segments(text: str, sep: str, start: int, stop: int) -> list[tuple[int, int]]:
    """Split ``text[start:stop]`` on ``sep`` outside parentheses and braces."""
    out, depth, i, begin = [], 0, start, start
    while i < stop:
        c = text[i]
        if c in "({":
            depth += 1
        elif c in ")}":
            depth -= 1
        elif depth == 0 and text.startswith(sep, i):
            out.append((begin, i))
            i += len(sep)
            begin = i
            continue
        i += 1
    out.append((begin, stop))
    return out


def _relation_at(text: str, start: int, stop: int):
    """Locate the top-level ``<=`` or ``=`` (not part of ``=>``) in a span."""
    depth = 0
    for i in range(start, stop):
        c = text[i]
        if c in "({":
            depth += 1
        elif c in ")}":
            depth -= 1
        elif depth == 0 and c == "<" and text.startswith("<=", i):
            return i, "<=", i + 2
        elif depth == 0 and c == "=" and not text.startswith("=>", i):
            return i, "=", i + 1
    raise StatementSyntaxError("expected '=' or '<='", text, start)


def parse_statement(text: str, vars: VariableObject, product: str = "mul", sorts=None) -> EquationLike:
    """Parse ``eq: u = v``, ``ineq: u <= v`` or ``impl: p = q, ... => u = v``.

    Premises are separated by top-level commas; an implication may have no
    premises (``impl: => u = v``).  Errors carry the offending offset.
    """
    colon = text.find(":")
    if colon < 0:
        raise StatementSyntaxError("expected 'eq:', 'ineq:' or 'impl:'", text, 0)
    kind = text[:colon].strip()

    def term(a, b):
        try:
            return parse_term(text[a:b], product, sorts)
        except TermSyntaxError as exc:
            raise StatementSyntaxError(str(exc).split(" at column")[0], text, a + exc.pos) from None

    def relation(a, b):
        i, rel, j = _relation_at(text, a, b)
        return term(a, i), rel, term(j, b), i

    body = colon + 1
    if kind in ("eq", "ineq"):
        l, rel, r, at = relation(body, len(text))
        want = "=" if kind == "eq" else "<="
        if rel != want:
            raise StatementSyntaxError(f"{kind}: statements use '{want}'", text, at)
        return (Equation if kind == "eq" else Inequation)(vars, l, r)
    if kind == "impl":
        arrow = [seg for seg in _segments(text, "=>", body, len(text))]
        if len(arrow) != 2:
            raise StatementSyntaxError("impl: statements need exactly one '=>'", text, body)
        (pa, pb), (ca, cb) = arrow
        premises = []
        if text[pa:pb].strip():
            for a, b in _segments(text, ",", pa, pb):
                l, rel, r, _ = relation(a, b)
                premises.append((l, r, rel))
        l, rel, r, _ = relation(ca, cb)
        return Implication(vars, tuple(premises), l, r, rel)
    raise StatementSyntaxError(f"unknown statement kind {kind!r}", text, 0)


# -- satisfaction -------------------------------------------------------------


def _var_sorts(alg: FiniteAlgebra, e: EquationLike) -> dict[str, str]:
    sig = alg.signature
    terms = statement_terms(e)
    if isinstance(e.vars, AlgebraVars):
        X = e.vars.algebra
        out = {name: sort for sort, names in zip(X.signature.sorts, X.carriers) for name in names}
        for t in terms:
            for x in _vars_in(t):
                if x.name not in out:
                    raise EvaluationError(f"{x.name!r} is not an element of the variable object")
                if x.sort is not None and x.sort != out[x.name]:
                    raise EvaluationError(f"{x.name!r} has sort {out[x.name]}, not {x.sort}")
        return out
    declared = dict(e.vars.names)
    inferred: dict[str, str] = {}
    for t in terms:
        for k, v in infer_var_sorts(t, sig).items():
            if inferred.get(k, v) != v:
                raise EvaluationError(f"variable {k} used at two sorts")
            inferred[k] = v
    for name in inferred:
        if name not in declared:
            raise EvaluationError(f"variable {name!r} is not declared")
    out = {}
    for name, sort in e.vars.names:
        s = sort or inferred.get(name)
        if s is None:
            s = sig.op(sig.product).result if sig.product else (sig.sorts[0] if len(sig.sorts) == 1 else None)
        if s is None:
            raise EvaluationError(f"cannot determine the sort of {name!r}")
        if name in inferred and inferred[name] != s:
            raise EvaluationError(f"variable {name} declared {s} but used at {inferred[name]}")
        out[name] = s
    return out


def _vars_in(t: PiTerm):
    return [x for x in _subterms(t) if isinstance(x, Var)]


def interpretations(alg: FiniteAlgebra, vars: VariableObject, var_sorts: dict[str, str]) -> Iterator[dict[str, int]]:
    """All interpretations of the variables, in canonical (lexicographic) order."""
    if isinstance(vars, FreeVars):
        names = [n for n, _ in vars.names]
        ranges = [range(alg.size(var_sorts[n])) for n in names]
        for values in itertools.product(*ranges):
            yield dict(zip(names, values))
        return
    X = vars.algebra
    try:
        target = reduct(alg, X.signature)
    except AlgebraError:
        raise AlgebraError("variable object is not an object of the algebra's base category") from None
    if X.is_ordered != alg.is_ordered:
        raise AlgebraError("variable object and algebra disagree on being ordered")
    for h in enumerate_morphisms(X, target):
        out = {}
        for s, sort in enumerate(X.signature.sorts):
            for i, name in enumerate(X.carriers[s]):
                out[name] = h.maps[s][i]
        yield out


def satisfies(A: TAlgebra | FiniteAlgebra, e: EquationLike) -> Verdict:
    """Does ``A`` satisfy ``e`` under every interpretation of its variables?

    The witness on failure is the first failing interpretation in canonical
    order, as a mapping from variable names to element names.
    """
    alg = getattr(A, "algebra", A)
    imp = _as_implication(e)
    uses_order = imp.relation == "<=" or any(rel == "<=" for _, _, rel in imp.premises)
    if uses_order and not alg.is_ordered:
        raise AlgebraError("inequations need an ordered algebra")
    sig = alg.signature
    var_sorts = _var_sorts(alg, e)
    for t in statement_terms(e):
        term_sort(t, sig, var_sorts)
    if isinstance(e.vars, AlgebraVars) and e.vars.algebra.signature.has_op("s") and sig.has_op("comp"):
        for t in statement_terms(e):
            path_endpoints(t, e.vars.algebra)
    concl_sort = sig.sort_index(term_sort(imp.lhs, sig, var_sorts))
    prem_sorts = [sig.sort_index(term_sort(l, sig, var_sorts)) for l, _, _ in imp.premises]

    def related(rel, sort, a, b):
        return a == b if rel == "=" else alg.leq(sort, a, b)

    for h in interpretations(alg, e.vars, var_sorts):
        if not all(related(rel, s, evaluate(l, alg, h), evaluate(r, alg, h))
                   for (l, r, rel), s in zip(imp.premises, prem_sorts)):
            continue
        if not related(imp.relation, concl_sort, evaluate(imp.lhs, alg, h), evaluate(imp.rhs, alg, h)):
            return Verdict(False, {v: alg.name(var_sorts[v], i) for v, i in h.items()})
    return Verdict(True)


# -- equations over a finite monoid as implications ----------------------------


def equation_to_implication(e: Equation | Inequation, generators=None) -> Implication:
    """Rewrite an (in)equation over a finite monoid (or set) ``X`` of variables
    as an implication over free variables with the same models.

    Without ``generators`` every element of ``X`` becomes a free variable and
    the premises are the full multiplication table of ``X`` plus
    ``unit = 1``.  With ``generators`` each element is represented by a
    shortest word over them, and the premises are the right Cayley graph
    relations ``rep(x) g = rep(x g)`` plus ``rep(1) = 1``.
    """
    if not isinstance(e.vars, AlgebraVars):
        raise AlgebraError("only (in)equations over a finite algebra of variables are translated")
    X = e.vars.algebra
    relation = "<=" if isinstance(e, Inequation) else "="
    if X.signature == SET_SIG:
        names = X.elements()
        if X.is_ordered:
            raise AlgebraError("ordered variable objects are not supported")
        return Implication(FreeVars(tuple((n, None) for n in names)), (), e.lhs, e.rhs, relation)
    if X.signature != MONOID_SIG:
        raise AlgebraError("translation needs a finite monoid or a finite set of variables")
    if X.is_ordered:
        raise AlgebraError("ordered variable objects are not supported")
    names = X.elements()
    mul = lambda x, y: X.apply("mul", x, y)
    unit = X.apply("unit")
    if generators is None:
        premises = []
        for i, x in enumerate(names):
            for j, y in enumerate(names):
                premises.append((product_of([Var(x), Var(y)]), Var(names[mul(i, j)]), "="))
        premises.append((Var(names[unit]), Unit(), "="))
        return Implication(FreeVars(tuple((n, None) for n in names)), tuple(premises), e.lhs, e.rhs, relation)

    gens = [X.index(None, g) if isinstance(g, str) else g for g in generators]
    rep: dict[int, list[int]] = {unit: []}
    queue = deque([unit])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in rep:
                rep[y] = rep[x] + [g]
                queue.append(y)
    if len(rep) != len(names):
        raise AlgebraError("the given elements do not generate the monoid")
    word = {x: product_of([Var(names[g]) for g in w]) for x, w in rep.items()}
    premises = []
    for x in sorted(rep):
        for g in gens:
            premises.append((product_of([word[x], Var(names[g])]) if rep[x] else Var(names[g]),
                             word[mul(x, g)], "="))
    if unit in gens:
        premises.append((Var(names[unit]), Unit(), "="))
    renaming = {names[x]: word[x] for x in rep}
    return Implication(FreeVars(tuple((names[g], None) for g in gens)), tuple(premises),
                       substitute(e.lhs, renaming), substitute(e.rhs, renaming), relation)
