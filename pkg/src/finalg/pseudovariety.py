"""Classes of finite T-algebras: presets, membership, closure checks and
bounded HSP closure."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    canonical_form,
    dedupe_isomorphic,
    enumerate_quotients,
    enumerate_subalgebras,
    is_split_surjection,
    isomorphic,
    product,
)
from .equations import (
    EquationLike,
    FreeVars,
    Implication,
    Inequation,
    format_statement,
    parse_statement,
    satisfies,
    statement_terms,
)
from .memo import EnumerationMemo, enumerate_up_to
from .monads import MonadSpec, TAlgebra, check_t_algebra, infer_monad, monad
from .terms import variables

CLOSURE_KINDS = ("products", "subalgebras", "quotients", "split-quotients")


@dataclass(frozen=True)
class Explicit:
    algebras: tuple
    spec: MonadSpec | None = None


@dataclass(frozen=True)
class Presented:
    statements: tuple
    spec: MonadSpec


@dataclass(frozen=True)
class Preset:
    name: str


ClassSpec = Union[Explicit, Presented, Preset]


@dataclass(frozen=True)
class PresetInfo:
    name: str
    spec: MonadSpec
    statements: tuple
    description: str

    def presented(self) -> Presented:
        return Presented(self.statements, self.spec)


def _stmts(spec: MonadSpec, *lines: str) -> tuple:
    """Parse statements, quantifying over the variables they mention."""
    product, sorts = spec.signature.product or "mul", spec.signature.sorts
    out = []
    for line in lines:
        probe = parse_statement(line, FreeVars((("_", None),)), product, sorts)
        names = sorted({v for t in statement_terms(probe) for v in variables(t)})
        out.append(parse_statement(line, FreeVars(tuple((v, None) for v in names)), product, sorts))
    return tuple(out)


def _presets() -> dict[str, PresetInfo]:
    word, pos_word = monad("Set", "Word"), monad("Pos", "Word")
    items = [
        ("Aperiodic", word, ("eq: x^pi x = x^pi",), "no nontrivial subgroups"),
        ("Groups", word, ("eq: x^pi = 1",), "finite groups"),
        ("Commutative", word, ("eq: x y = y x",), "commutative monoids"),
        ("Idempotent", word, ("eq: x x = x",), "bands with unit"),
        ("JTrivial", word, ("eq: (x y)^pi x = (x y)^pi", "eq: y (x y)^pi = (x y)^pi"), "J-trivial monoids"),
        ("TrivialUnits", monad("MonBase", "Id"), ("impl: x^pi = 1 => x = 1",),
         "monoids whose only invertible element is the unit"),
        ("DiscretePosets", monad("Pos", "Id"), ("impl: v <= u => u <= v",), "posets with the discrete order"),
        ("Negative", pos_word, ("ineq: x <= 1",), "ordered monoids with x <= 1"),
        ("Positive", pos_word, ("ineq: 1 <= x",), "ordered monoids with 1 <= x"),
        ("SquareBelow", pos_word, ("ineq: x x <= x",), "ordered monoids with x x <= x"),
    ]
    return {name: PresetInfo(name, spec, _stmts(spec, *lines), desc) for name, spec, lines, desc in items}


PRESETS: dict[str, PresetInfo] = _presets()


def preset(name: str) -> PresetInfo:
    try:
        return PRESETS[name]
    except KeyError:
        raise AlgebraError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}") from None


def _resolve(c: ClassSpec):
    if isinstance(c, Preset):
        return preset(c.name).presented()
    return c


def class_spec(c: ClassSpec) -> MonadSpec:
    c = _resolve(c)
    if isinstance(c, Presented):
        return c.spec
    if c.spec is not None:
        return c.spec
    if not c.algebras:
        raise AlgebraError("an empty explicit class needs a monad")
    first = c.algebras[0]
    return first.spec if isinstance(first, TAlgebra) else infer_monad(first)


@dataclass
class Membership:
    member: bool
    statement: EquationLike | None = None
    witness: dict | None = None

    def __bool__(self):
        return self.member


def membership(c: ClassSpec, A) -> Membership:
    """Whether ``A`` belongs to the class; for presented classes the failing
    statement and its first witness are returned."""
    c = _resolve(c)
    alg = getattr(A, "algebra", A)
    if isinstance(c, Explicit):
        return Membership(any(isomorphic(alg, getattr(B, "algebra", B)) is not None for B in c.algebras))
    for stmt in c.statements:
        v = satisfies(alg, stmt)
        if not v.holds:
            return Membership(False, stmt, v.witness)
    return Membership(True)


def members(c: ClassSpec, n: int, *, memo: EnumerationMemo | None = None, budget=None, jobs: int = 1) -> list[TAlgebra]:
    """All members of size at most ``n``, up to isomorphism."""
    c = _resolve(c)
    spec = class_spec(c)
    if isinstance(c, Explicit):
        algs = [a if isinstance(a, TAlgebra) else check_t_algebra(spec, a) for a in c.algebras]
        return dedupe_isomorphic(a for a in algs if a.size() <= n)
    return [A for A in enumerate_up_to(spec, n, memo=memo, budget=budget, jobs=jobs) if membership(c, A)]


# -- closure ----------------------------------------------------------------------


@dataclass
class Counterexample:
    kind: str
    sources: tuple          # the member algebra(s) the construction starts from
    result: FiniteAlgebra   # the constructed algebra, which is not a member
    maps: tuple = ()        # projections, embedding or quotient map
    statement: EquationLike | None = None
    witness: dict | None = None


@dataclass
class KindResult:
    kind: str
    passed: bool
    checked: int
    counterexample: Counterexample | None = None


@dataclass
class ClosureReport:
    results: dict[str, KindResult] = field(default_factory=dict)
    members: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def __getitem__(self, kind: str) -> KindResult:
        return self.results[kind]


def _fail_or_none(c, kind, sources, result, maps):
    m = membership(c, result)
    if m.member:
        return None
    return Counterexample(kind, tuple(sources), result, tuple(maps), m.statement, m.witness)


def check_closure(c: ClassSpec, n: int, kinds=CLOSURE_KINDS, *, memo=None, budget=None,
                  jobs: int = 1) -> ClosureReport:
    """Check closure of the members of size at most ``n`` under each kind.

    Products are checked on every pair of members (including a member with
    itself) by testing the product directly, whatever its size.  Quotients
    run over every surjective homomorphism (for ordered algebras, every
    compatible order on the quotient); split quotients over those that have a
    section in the base category.
    """
    c = _resolve(c)
    spec = class_spec(c)
    for k in kinds:
        if k not in CLOSURE_KINDS:
            raise AlgebraError(f"unknown closure kind {k!r}")
    mem = members(c, n, memo=memo, budget=budget, jobs=jobs)
    report = ClosureReport(members=mem)
    algs = [m.algebra for m in mem]
    for kind in CLOSURE_KINDS:
        if kind not in kinds:
            continue
        checked, cex = 0, None
        if kind == "products":
            for i, A in enumerate(algs):
                for B in algs[i:]:
                    P, p1, p2 = product(A, B)
                    checked += 1
                    cex = _fail_or_none(c, kind, (A, B), P, (p1, p2))
                    if cex:
                        break
                if cex:
                    break
        elif kind == "subalgebras":
            for A in algs:
                for emb in enumerate_subalgebras(A):
                    checked += 1
                    cex = _fail_or_none(c, kind, (A,), emb.source, (emb,))
                    if cex:
                        break
                if cex:
                    break
        else:
            split = kind == "split-quotients"
            for A in algs:
                for B, e in enumerate_quotients(A):
                    if split and is_split_surjection(e, spec.base_signature) is None:
                        continue
                    checked += 1
                    cex = _fail_or_none(c, kind, (A,), B, (e,))
                    if cex:
                        break
                if cex:
                    break
        report.results[kind] = KindResult(kind, cex is None, checked, cex)
    return report


def hsp_closure(generators, n: int) -> list[TAlgebra]:
    """Least class of algebras of size at most ``n`` containing the
    generators (those within the bound) and closed under binary products
    that stay within the bound, subalgebras and quotients."""
    gens = [g if isinstance(g, TAlgebra) else check_t_algebra(infer_monad(g), g) for g in generators]
    if not gens:
        return []
    spec = gens[0].spec
    found: list[FiniteAlgebra] = []
    keys: set = set()

    def add(alg) -> bool:
        if alg.size() > n:
            return False
        k = canonical_form(alg)
        if k in keys:
            return False
        keys.add(k)
        found.append(alg)
        return True

    for g in gens:
        add(g.algebra)
    changed = True
    while changed:
        changed = False
        for A in list(found):
            for emb in enumerate_subalgebras(A):
                changed |= add(emb.source)
            for B, _ in enumerate_quotients(A):
                changed |= add(B)
        current = list(found)
        for i, A in enumerate(current):
            for B in current[i:]:
                P, _, _ = product(A, B)
                changed |= add(P)
    found.sort(key=lambda a: a.size())
    return [check_t_algebra(spec, a) for a in found]


@dataclass
class ReitermanReport:
    closure: ClosureReport
    hsp_extra: list
    members: list

    @property
    def passed(self) -> bool:
        return self.closure.passed and not self.hsp_extra


def reiterman_crosscheck(E, n: int, kinds=CLOSURE_KINDS, **kw) -> ReitermanReport:
    """(i) the class presented by ``E`` is closed at bound ``n``; (ii) bounded
    HSP closure of its members adds nothing new."""
    c = _resolve(E) if isinstance(E, (Preset, Presented)) else None
    if c is None:
        E = tuple(E)
        if not E:
            raise AlgebraError("empty presentation needs a monad; pass Presented((), spec)")
        c = Presented(E, _statement_spec(E))
    report = check_closure(c, n, kinds, **kw)
    mem = report.members
    closed = hsp_closure(mem, n) if mem else []
    extra = [A for A in closed if not membership(c, A)]
    return ReitermanReport(report, extra, mem)


def _statement_spec(E) -> MonadSpec:
    ordered = any(isinstance(s, Inequation) or (isinstance(s, Implication) and (
        s.relation == "<=" or any(r == "<=" for _, _, r in s.premises))) for s in E)
    return monad("Pos" if ordered else "Set", "Word")


def describe_presets() -> list[str]:
    out = []
    for p in PRESETS.values():
        prod = p.spec.signature.product or "mul"
        stmts = "; ".join(format_statement(s, prod) for s in p.statements)
        out.append(f"{p.name} [{p.spec.name}] {stmts}  -- {p.description}")
    return out
