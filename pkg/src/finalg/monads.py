"""Concrete monads and their finite algebras.

A :class:`MonadSpec` pairs a base category (``Set``, ``Pos``, ``Graph`` or
``MonBase`` -- monoids used as the base with the identity monad) with a monad
kind (``Id``, ``Word``, ``Path`` or ``Wilke``).  Finite T-algebras are
represented as :class:`~finalg.algebra.FiniteAlgebra` over the induced
signature and checked against the monad's laws:

* ``Word``  -- monoids (ordered monoids over ``Pos``).
* ``Path``  -- finite categories, two-sorted ``Ob``/``Mor`` with partial,
  diagrammatic composition ``comp`` (``f g`` means *f then g*).
* ``Wilke`` -- two-sorted algebras ``plus``/``omega`` with product ``mul``,
  mixed product ``mix: plus, omega -> omega`` and omega-power ``pow``; the
  finite stand-in for algebras of finite and infinite words.
"""
from __future__ import annotations

import functools
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    OpSymbol,
    Signature,
    canonical_form,
    compatible_orders,
    is_homomorphism,
    reduct,
)
from .terms import (
    Apply,
    EvaluationError,
    PiTerm,
    Undefined,
    Var,
    evaluate,
    evaluate_raw,
    parse_term,
    print_term,
    product_of,
    term_sort,
)

BASES = ("Set", "Pos", "Graph", "MonBase")
KINDS = ("Id", "Word", "Path", "Wilke")

MONOID_BUDGET = 6
GENERIC_BUDGET = 4


class LawViolation(AlgebraError):
    def __init__(self, law: "Law", assignment: dict[str, str]):
        self.law = law
        self.assignment = assignment
        shown = ", ".join(f"{k}={v}" for k, v in assignment.items())
        super().__init__(f"law {law.name} fails at {shown}")


class BudgetExceeded(AlgebraError):
    pass


SET_SIG = Signature(("M",))
MONOID_SIG = Signature(
    ("M",),
    (OpSymbol("mul", ("M", "M"), "M"), OpSymbol("unit", (), "M")),
    {"mul"},
    product="mul",
    unit="unit",
)
GRAPH_SIG = Signature(("Ob", "Mor"), (OpSymbol("s", ("Mor",), "Ob"), OpSymbol("t", ("Mor",), "Ob")))
CATEGORY_SIG = Signature(
    ("Ob", "Mor"),
    (
        OpSymbol("s", ("Mor",), "Ob"),
        OpSymbol("t", ("Mor",), "Ob"),
        OpSymbol("id", ("Ob",), "Mor"),
        OpSymbol("comp", ("Mor", "Mor"), "Mor", partial=True),
    ),
    {"comp"},
    product="comp",
)
WILKE_SIG = Signature(
    ("plus", "omega"),
    (
        OpSymbol("mul", ("plus", "plus"), "plus"),
        OpSymbol("unit", (), "plus"),
        OpSymbol("mix", ("plus", "omega"), "omega"),
        OpSymbol("pow", ("plus",), "omega"),
    ),
    {"mul"},
    product="mul",
    unit="unit",
)


@dataclass(frozen=True)
class Law:
    name: str
    variables: tuple[tuple[str, str], ...]
    lhs: PiTerm
    rhs: PiTerm
    guards: tuple[tuple[PiTerm, PiTerm], ...] = ()

    def __str__(self):
        return f"{self.name}: {print_term(self.lhs, _product_name(self))} = {print_term(self.rhs, _product_name(self))}"


def _product_name(law: Law) -> str:
    return "comp" if any(s == "Mor" for _, s in law.variables) else "mul"


def _law(name, vars_spec: str, lhs: str, rhs: str, product="mul", guards=()) -> Law:
    variables = tuple(tuple(v.split(":")) for v in vars_spec.split())
    g = tuple((parse_term(a, product), parse_term(b, product)) for a, b in guards)
    return Law(name, variables, parse_term(lhs, product), parse_term(rhs, product), g)


_MONOID_LAWS = (
    _law("associativity", "x:M y:M z:M", "(x y) z", "x (y z)"),
    _law("left-unit", "x:M", "1 x", "x"),
    _law("right-unit", "x:M", "x 1", "x"),
)
_CATEGORY_LAWS = (
    _law("source-of-identity", "x:Ob", "s(id(x))", "x", "comp"),
    _law("target-of-identity", "x:Ob", "t(id(x))", "x", "comp"),
    _law("source-of-composite", "f:Mor g:Mor", "s(f g)", "s(f)", "comp", [("t(f)", "s(g)")]),
    _law("target-of-composite", "f:Mor g:Mor", "t(f g)", "t(g)", "comp", [("t(f)", "s(g)")]),
    _law("left-identity", "f:Mor", "id(s(f)) f", "f", "comp"),
    _law("right-identity", "f:Mor", "f id(t(f))", "f", "comp"),
    _law("associativity", "f:Mor g:Mor h:Mor", "(f g) h", "f (g h)", "comp",
         [("t(f)", "s(g)"), ("t(g)", "s(h)")]),
)
_WILKE_LAWS = (
    _law("associativity", "x:plus y:plus z:plus", "(x y) z", "x (y z)"),
    _law("left-unit", "x:plus", "1 x", "x"),
    _law("right-unit", "x:plus", "x 1", "x"),
    _law("mixed-associativity", "s:plus t:plus x:omega", "mix(s t, x)", "mix(s, mix(t, x))"),
    _law("mixed-unit", "x:omega", "mix(1, x)", "x"),
    _law("rotation", "s:plus t:plus", "mix(s, pow(t s))", "pow(s t)"),
)


@dataclass(frozen=True)
class MonadSpec:
    base: str
    kind: str
    signature: Signature = field(repr=False)
    base_signature: Signature = field(repr=False)
    laws: tuple[Law, ...] = field(repr=False)

    @property
    def ordered(self) -> bool:
        return self.base == "Pos"

    @property
    def name(self) -> str:
        return f"{self.base}:{self.kind}"

    def laws_for(self, alg: FiniteAlgebra) -> list[Law]:
        """The monad's laws, plus the power-stability family for Wilke algebras.

        ``pow(x^n) = pow(x)`` is instantiated for ``n = 2 .. |plus|``, which
        covers every distinct power of every element.
        """
        laws = list(self.laws)
        if self.kind == "Wilke":
            k = alg.size("plus")
            x = Var("x")
            for n in range(2, max(k, 2) + 1):
                laws.append(Law(f"power-stability-{n}", (("x", "plus"),),
                                Apply("pow", (product_of([x] * n),)), Apply("pow", (x,))))
        return laws

    def domain(self, op: str, args: tuple, lookup) -> bool:
        """Whether a partial op is defined on ``args`` (composability for categories)."""
        if self.kind == "Path" and op == "comp":
            return lookup("t", (args[0],)) == lookup("s", (args[1],))
        return True

    def default_budget(self) -> int:
        if self.signature in (MONOID_SIG, SET_SIG):
            return MONOID_BUDGET
        return GENERIC_BUDGET


@functools.lru_cache(maxsize=None)
def monad(base: str, kind: str) -> MonadSpec:
    """The MonadSpec for (base, kind); raises for unsupported combinations."""
    if base not in BASES or kind not in KINDS:
        raise AlgebraError(f"unknown monad {base}:{kind}")
    base_sig = {"Set": SET_SIG, "Pos": SET_SIG, "Graph": GRAPH_SIG, "MonBase": MONOID_SIG}[base]
    if kind == "Id":
        laws = _MONOID_LAWS if base == "MonBase" else ()
        return MonadSpec(base, kind, base_sig, base_sig, laws)
    if kind == "Word" and base in ("Set", "Pos"):
        return MonadSpec(base, kind, MONOID_SIG, base_sig, _MONOID_LAWS)
    if kind == "Path" and base == "Graph":
        return MonadSpec(base, kind, CATEGORY_SIG, base_sig, _CATEGORY_LAWS)
    if kind == "Wilke" and base == "Set":
        return MonadSpec(base, kind, WILKE_SIG, Signature(WILKE_SIG.sorts), _WILKE_LAWS)
    raise AlgebraError(f"unsupported monad {base}:{kind}")


def parse_monad(text: str) -> MonadSpec:
    """``"Word"``, ``"Set:Word"``, ``"Pos Word"``, ``"MonBase:Id"`` ..."""
    parts = text.replace(":", " ").replace("/", " ").split()
    defaults = {"Word": "Set", "Wilke": "Set", "Path": "Graph"}
    if len(parts) == 1:
        if parts[0] not in defaults:
            raise AlgebraError(f"monad {text!r} needs an explicit base")
        return monad(defaults[parts[0]], parts[0])
    if len(parts) != 2:
        raise AlgebraError(f"cannot parse monad {text!r}")
    return monad(parts[0], parts[1])


def infer_monad(alg: FiniteAlgebra) -> MonadSpec:
    sig = alg.signature
    if sig == MONOID_SIG:
        return monad("Pos" if alg.is_ordered else "Set", "Word")
    if sig == CATEGORY_SIG:
        return monad("Graph", "Path")
    if sig == WILKE_SIG:
        return monad("Set", "Wilke")
    if sig == GRAPH_SIG:
        return monad("Graph", "Id")
    if sig == SET_SIG:
        return monad("Pos" if alg.is_ordered else "Set", "Id")
    raise AlgebraError("signature does not match any known monad")


@dataclass(frozen=True)
class TAlgebra:
    spec: MonadSpec
    algebra: FiniteAlgebra
    certified: tuple[str, ...] = ()

    def size(self, sort=None) -> int:
        return self.algebra.size(sort)

    def __repr__(self):
        return f"<TAlgebra {self.spec.name} {self.algebra!r}>"


def law_instances(law: Law, alg: FiniteAlgebra):
    names = [v for v, _ in law.variables]
    ranges = [range(alg.size(s)) for _, s in law.variables]
    for values in itertools.product(*ranges):
        yield dict(zip(names, values))


def _law_holds(law: Law, lookup, assignment, unit) -> bool | None:
    """True/False, or None while some needed table entry is still unknown."""
    try:
        for a, b in law.guards:
            if evaluate_raw(a, lookup, assignment, unit) != evaluate_raw(b, lookup, assignment, unit):
                return True
        return evaluate_raw(law.lhs, lookup, assignment, unit) == evaluate_raw(law.rhs, lookup, assignment, unit)
    except Undefined:
        return None


def check_t_algebra(spec: MonadSpec, alg: FiniteAlgebra) -> TAlgebra:
    """Certify ``alg`` against every law of ``spec`` by exhaustive assignment.

    Raises :class:`LawViolation` with the first failing assignment.
    """
    if alg.signature != spec.signature:
        raise AlgebraError(f"algebra signature does not match {spec.name}")
    if spec.ordered != alg.is_ordered:
        raise AlgebraError(f"{spec.name} algebras must {'be' if spec.ordered else 'not be'} ordered")
    unit = alg.apply(spec.signature.unit) if spec.signature.unit else None
    lookup = lambda op, args: alg.apply(op, *args)
    for o in spec.signature.ops:
        if o.partial:
            for args, res in alg.entries(o.name):
                if (res is not None) != spec.domain(o.name, args, lookup):
                    shown = {f"arg{i}": alg.carriers[alg.signature.sort_index(s)][a]
                             for i, (s, a) in enumerate(zip(o.args, args))}
                    raise LawViolation(Law(f"domain-of-{o.name}", (), Var("_"), Var("_")), shown)
    laws = spec.laws_for(alg)
    for law in laws:
        for asg in law_instances(law, alg):
            if not _law_holds(law, lookup, asg, unit):
                shown = {v: alg.name(s, asg[v]) for v, s in law.variables}
                raise LawViolation(law, shown)
    return TAlgebra(spec, alg, tuple(l.name for l in laws))


# -- free extensions -----------------------------------------------------------


class Evaluator:
    """The homomorphic extension of a variable assignment to terms."""

    def __init__(self, algebra: FiniteAlgebra, assignment: Mapping[str, int], var_sorts: Mapping[str, str],
                 variables: FiniteAlgebra | None = None):
        self.algebra = algebra
        self.assignment = dict(assignment)
        self.var_sorts = dict(var_sorts)
        self.variables = variables

    def index(self, t: PiTerm | str) -> int:
        if isinstance(t, str):
            sig = self.algebra.signature
            t = parse_term(t, sig.product or "mul", sig.sorts)
        term_sort(t, self.algebra.signature, self.var_sorts)
        if self.variables is not None and self.algebra.signature == CATEGORY_SIG:
            path_endpoints(t, self.variables)
        return evaluate(t, self.algebra, self.assignment)

    def __call__(self, t: PiTerm | str) -> str:
        if isinstance(t, str):
            sig = self.algebra.signature
            t = parse_term(t, sig.product or "mul", sig.sorts)
        sort = term_sort(t, self.algebra.signature, self.var_sorts)
        return self.algebra.name(sort, self.index(t))


def free_extension(spec: MonadSpec, A: TAlgebra | FiniteAlgebra, assignment: Mapping,
                   variables: FiniteAlgebra | None = None) -> Evaluator:
    """Extend ``assignment`` (variable -> element name, or -> (sort, name)) to terms.

    When ``variables`` is a finite object of the base category (for instance a
    graph), the assignment must be a base morphism from it into ``A``.
    """
    alg = getattr(A, "algebra", A)
    if alg.signature != spec.signature:
        raise AlgebraError("algebra does not belong to this monad")
    idx, sorts = {}, {}
    for v, target in assignment.items():
        if isinstance(target, tuple):
            sort, name = target
            s = alg.signature.sort_index(sort)
            idx[v] = alg.index(sort, name)
        else:
            s, idx[v] = alg.locate(target)
        sorts[v] = alg.signature.sorts[s]
    if variables is not None:
        target = reduct(alg, variables.signature)
        f = {sort: {} for sort in variables.signature.sorts}
        for v in assignment:
            f[sorts[v]][v] = alg.name(sorts[v], idx[v])
        if not is_homomorphism(f, variables, target):
            raise AlgebraError("assignment is not a morphism of the base category")
    return Evaluator(alg, idx, sorts, variables)


def path_endpoints(t: PiTerm, X: FiniteAlgebra):
    """Static typing of a category term over a variable graph ``X``.

    Returns the object (Ob-terms) or the (source, target) pair (Mor-terms)
    in ``X``; raises :class:`EvaluationError` for non-composable paths.
    """
    if isinstance(t, Var):
        s, i = X.locate(t.name) if t.sort is None else (X.signature.sort_index(t.sort), X.index(t.sort, t.name))
        if X.signature.sorts[s] == "Ob":
            return i
        return (X.apply("s", i), X.apply("t", i))
    if isinstance(t, Apply):
        if t.op in ("s", "t"):
            st = path_endpoints(t.args[0], X)
            return st[0] if t.op == "s" else st[1]
        if t.op == "id":
            o = path_endpoints(t.args[0], X)
            return (o, o)
        if t.op == "comp":
            a, b = (path_endpoints(x, X) for x in t.args)
            if a[1] != b[0]:
                raise EvaluationError(f"path {print_term(t, 'comp')} is not composable in the variable graph")
            return (a[0], b[1])
    if hasattr(t, "arg"):
        a = path_endpoints(t.arg, X)
        if a[0] != a[1]:
            raise EvaluationError("pi-power of a non-endomorphism")
        return a
    raise EvaluationError(f"unsupported category term {t!r}")


# -- enumeration ---------------------------------------------------------------


def _elem_names(n: int) -> list[str]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return ["1"] + [letters[i] if i < 26 else f"m{i}" for i in range(n - 1)]


def _monoid_tables(n: int, first: int | None = None):
    """Canonical multiplication tables of monoids on ``range(n)`` with unit 0.

    Row-major depth-first search with an associativity check on every cell
    assignment; a completed table is emitted only if it is lexicographically
    least among its relabellings fixing 0, so output is iso-free and sorted.
    """
    if n == 1:
        if first is None or first == 0:
            yield (0,)
        return
    t = [-1] * (n * n)
    for x in range(n):
        t[x] = x
        t[x * n] = x
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    rng = range(n)
    perms = []
    for p in itertools.permutations(range(1, n)):
        fwd = (0,) + p
        inv = [0] * n
        for a, b in enumerate(fwd):
            inv[b] = a
        if fwd != tuple(range(n)):
            perms.append((fwd, inv))
    inner = [(a, b) for a in range(1, n) for b in range(1, n)]

    def consistent(i, j, v):
        for r in rng:
            a = t[v * n + r]
            w = t[j * n + r]
            if a >= 0 and w >= 0:
                b = t[i * n + w]
                if b >= 0 and a != b:
                    return False
        for p in rng:
            a = t[p * n + v]
            s = t[p * n + i]
            if a >= 0 and s >= 0:
                b = t[s * n + j]
                if b >= 0 and a != b:
                    return False
        for p in rng:
            row = p * n
            for q in rng:
                if t[row + q] == i:
                    w = t[q * n + j]
                    if w >= 0:
                        b = t[row + w]
                        if b >= 0 and b != v:
                            return False
        irow = i * n
        for q in rng:
            s = t[irow + q]
            if s < 0:
                continue
            qrow = q * n
            for r in rng:
                if t[qrow + r] == j:
                    b = t[s * n + r]
                    if b >= 0 and b != v:
                        return False
        return True

    def canonical():
        for fwd, inv in perms:
            for a, b in inner:
                x = fwd[t[inv[a] * n + inv[b]]]
                y = t[a * n + b]
                if x < y:
                    return False
                if x > y:
                    break
        return True

    def rec(k):
        if k == len(cells):
            if canonical():
                yield tuple(t)
            return
        i, j = cells[k]
        pos = i * n + j
        values = rng if (k > 0 or first is None) else (first,)
        for v in values:
            t[pos] = v
            if consistent(i, j, v):
                yield from rec(k + 1)
        t[pos] = -1

    yield from rec(0)


def _monoid_subtree(args):
    n, first = args
    return list(_monoid_tables(n, first))


def monoid_tables(n: int, jobs: int = 1) -> list[tuple[int, ...]]:
    """All monoid tables of order ``n`` up to isomorphism, in canonical order."""
    if jobs <= 1 or n <= 2:
        return list(_monoid_tables(n))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(_monoid_subtree, [(n, v) for v in range(n)])
        return [t for part in parts for t in part]


def monoid_from_table(table: Iterable[int], names: list[str] | None = None, order=None) -> FiniteAlgebra:
    table = tuple(table)
    n = int(round(len(table) ** 0.5))
    names = names or _elem_names(n)
    unit = next(e for e in range(n) if all(table[e * n + x] == x == table[x * n + e] for x in range(n)))
    return FiniteAlgebra(MONOID_SIG, [names], [table, (unit,)], order)


def _compositions(total: int, parts: int):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


_SORT_PREFIX = {"M": "x", "plus": "p", "omega": "w", "Ob": "o", "Mor": "f"}


def _generic_enumerate(spec: MonadSpec, size: int) -> list[FiniteAlgebra]:
    """Backtracking over all tables of every op, pruned by partial law checks."""
    sig = spec.signature
    out: list[FiniteAlgebra] = []
    seen = set()
    for sizes in _compositions(size, len(sig.sorts)):
        strides_of, tables, cells = {}, [], []
        for k, o in enumerate(sig.ops):
            arg_sizes = [sizes[sig.sort_index(s)] for s in o.args]
            strides, acc = [], 1
            for z in reversed(arg_sizes):
                strides.append(acc)
                acc *= z
            strides.reverse()
            strides_of[o.name] = (k, strides)
            tables.append([-1] * acc)
            for pos, args in enumerate(itertools.product(*(range(z) for z in arg_sizes))):
                cells.append((k, pos, args, o))

        def lookup(op, args, tables=tables):
            k, strides = strides_of[op]
            v = tables[k][sum(a * s for a, s in zip(args, strides))]
            return None if v is None or v < 0 else v

        carriers_tmp = [[str(i) for i in range(z)] for z in sizes]
        probe = FiniteAlgebra(sig, carriers_tmp, [[0] * len(t) for t in tables])
        laws = spec.laws_for(probe)
        instances = [(law, asg) for law in laws for asg in law_instances(law, probe)]

        def unit_value():
            if sig.unit is None:
                return None
            v = tables[strides_of[sig.unit][0]][0]
            return None if v < 0 else v

        def ok(final):
            u = unit_value()
            for law, asg in instances:
                if u is None and sig.unit is not None and _mentions_unit(law):
                    if final:
                        return False
                    continue
                r = _law_holds(law, lookup, asg, u)
                if r is False or (final and r is None):
                    return False
            return True

        def rec(c):
            if c == len(cells):
                if not ok(True):
                    return
                alg = _finish(sig, sizes, tables)
                key = canonical_form(alg)
                if key not in seen:
                    seen.add(key)
                    out.append(alg)
                return
            k, pos, args, o = cells[c]
            if o.partial and not spec.domain(o.name, args, lookup):
                tables[k][pos] = None
                rec(c + 1)
                tables[k][pos] = -1
                return
            for v in range(sizes[sig.sort_index(o.result)]):
                tables[k][pos] = v
                if ok(False):
                    rec(c + 1)
            tables[k][pos] = -1

        rec(0)
    return out


def _mentions_unit(law: Law) -> bool:
    from .terms import Unit, _subterms

    return any(isinstance(x, Unit) for x in _subterms(law.lhs)) or any(
        isinstance(x, Unit) for x in _subterms(law.rhs))


def _finish(sig: Signature, sizes, tables) -> FiniteAlgebra:
    unit = None
    if sig.unit is not None:
        unit = tables[[o.name for o in sig.ops].index(sig.unit)][0]
    carriers = []
    for s, z in zip(sig.sorts, sizes):
        prefix = _SORT_PREFIX.get(s, s[0].lower())
        carriers.append([("1" if (unit is not None and s == sig.op(sig.unit).result and i == unit)
                          else f"{prefix}{i}") for i in range(z)])
    return FiniteAlgebra(sig, carriers, [list(t) for t in tables])


def enumerate_t_algebras(spec: MonadSpec, size: int, *, budget: int | None = None,
                         jobs: int = 1) -> list[TAlgebra]:
    """All T-algebras with exactly ``size`` elements (summed over sorts), up to
    isomorphism, in a deterministic canonical order."""
    if size < 1:
        raise AlgebraError("size must be at least 1")
    limit = spec.default_budget() if budget is None else budget
    if size > limit:
        raise BudgetExceeded(f"size {size} exceeds the enumeration budget {limit} for {spec.name}")
    sig = spec.signature
    if sig == MONOID_SIG:
        monoids = [monoid_from_table(t) for t in monoid_tables(size, jobs)]
        if spec.ordered:
            algs = []
            seen = set()
            for m in monoids:
                for om in compatible_orders(m):
                    k = canonical_form(om)
                    if k not in seen:
                        seen.add(k)
                        algs.append(om)
        else:
            algs = monoids
    elif sig == SET_SIG:
        base = FiniteAlgebra(SET_SIG, [[str(i) for i in range(size)]], [])
        if spec.ordered:
            algs, seen = [], set()
            for p in compatible_orders(base):
                k = canonical_form(p)
                if k not in seen:
                    seen.add(k)
                    algs.append(p)
        else:
            algs = [base]
    else:
        algs = _generic_enumerate(spec, size)
    return [check_t_algebra(spec, a) for a in algs]


# -- automata --------------------------------------------------------------------


@dataclass(frozen=True)
class Dfa:
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    transitions: Mapping[tuple[str, str], str]
    initial: str
    finals: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "transitions", dict(self.transitions))
        if self.initial not in self.states:
            raise AlgebraError(f"initial state {self.initial!r} is not a state")
        if not self.finals <= set(self.states):
            raise AlgebraError("final states must be states")
        for q in self.states:
            for a in self.alphabet:
                r = self.transitions.get((q, a))
                if r is None:
                    raise AlgebraError(f"transition from {q} on {a} is missing")
                if r not in self.states:
                    raise AlgebraError(f"transition {q} -{a}-> {r} leads to an unknown state")

    def step(self, q: str, word: Iterable[str]) -> str:
        for a in word:
            q = self.transitions[(q, a)]
        return q

    def accepts(self, word: Iterable[str]) -> bool:
        return self.step(self.initial, word) in self.finals


def minimize(d: Dfa) -> Dfa:
    """Trim unreachable states, then Moore partition refinement."""
    reach = [d.initial]
    seen = {d.initial}
    for q in reach:
        for a in d.alphabet:
            r = d.transitions[(q, a)]
            if r not in seen:
                seen.add(r)
                reach.append(r)
    block = {q: int(q in d.finals) for q in reach}
    while True:
        sig = {q: (block[q],) + tuple(block[d.transitions[(q, a)]] for a in d.alphabet) for q in reach}
        labels: dict[tuple, int] = {}
        new = {q: labels.setdefault(sig[q], len(labels)) for q in reach}
        if len(labels) == len(set(block.values())):
            block = new
            break
        block = new
    rep: dict[int, str] = {}
    for q in reach:
        rep.setdefault(block[q], q)
    states = tuple(rep[b] for b in sorted(rep))
    trans = {(rep[block[q]], a): rep[block[d.transitions[(q, a)]]] for q in states for a in d.alphabet}
    return Dfa(states, d.alphabet, trans, rep[block[d.initial]],
               frozenset(rep[block[q]] for q in reach if q in d.finals))


def transition_monoid(d: Dfa) -> tuple[TAlgebra, dict[str, str]]:
    """Monoid of state transformations induced by words; elements are named
    by their shortlex-least word (``1`` for the empty word)."""
    if not d.alphabet:
        raise AlgebraError("empty alphabet")
    idx = {q: i for i, q in enumerate(d.states)}
    delta = [[idx[d.transitions[(q, a)]] for a in d.alphabet] for q in d.states]
    sep = "" if all(len(a) == 1 for a in d.alphabet) else "."
    ident = tuple(range(len(d.states)))
    elems = [ident]
    words = [()]
    pos = {ident: 0}
    for f, w in zip(elems, words):
        for k, a in enumerate(d.alphabet):
            g = tuple(delta[x][k] for x in f)
            if g not in pos:
                pos[g] = len(elems)
                elems.append(g)
                words.append(w + (a,))
    table = []
    for f in elems:
        for g in elems:
            table.append(pos[tuple(g[x] for x in f)])
    names = ["1" if not w else sep.join(w) for w in words]
    alg = FiniteAlgebra(MONOID_SIG, [names], [table, (0,)])
    letters = {a: names[pos[tuple(delta[x][k] for x in ident)]] for k, a in enumerate(d.alphabet)}
    return check_t_algebra(monad("Set", "Word"), alg), letters


def syntactic_monoid(d: Dfa) -> tuple[TAlgebra, dict[str, str]]:
    """Syntactic monoid of L(d) with the map sending each letter to its class."""
    if not d.alphabet:
        raise AlgebraError("empty alphabet")
    return transition_monoid(minimize(d))
