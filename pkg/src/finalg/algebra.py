"""Finite many-sorted algebras, optionally ordered.

Elements are named by strings at the boundary and handled as integer indices
inside every algorithm.  Operations may be declared ``partial`` (used for
composition in finite categories); a partial table stores ``None`` where the
operation is undefined.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

DEFAULT_SIZE_CAP = 12


class AlgebraError(ValueError):
    pass


class SizeCapExceeded(AlgebraError):
    pass


class OrderedQuotientError(AlgebraError):
    """The block-preorder induced by a congruence is not antisymmetric."""


@dataclass(frozen=True)
class Violation:
    kind: str  # 'unknown-element' | 'totality' | 'monotonicity' | 'order'
    op: str | None
    witness: tuple
    message: str

    def __str__(self) -> str:
        return self.message


class InvalidAlgebra(AlgebraError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome carrying the first witness of failure (if any)."""

    holds: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class OpSymbol:
    name: str
    args: tuple[str, ...]
    result: str
    partial: bool = False

    @property
    def arity(self) -> int:
        return len(self.args)


@dataclass(frozen=True)
class Signature:
    sorts: tuple[str, ...]
    ops: tuple[OpSymbol, ...] = ()
    designated_assoc: frozenset[str] = frozenset()
    # op written as juxtaposition in terms, and the constant written ``1``
    product: str | None = None
    unit: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "sorts", tuple(self.sorts))
        object.__setattr__(self, "ops", tuple(self.ops))
        object.__setattr__(self, "designated_assoc", frozenset(self.designated_assoc))
        if len(set(self.sorts)) != len(self.sorts):
            raise AlgebraError(f"duplicate sort names in {self.sorts}")
        names = [o.name for o in self.ops]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate operation names in {names}")
        for o in self.ops:
            for s in (*o.args, o.result):
                if s not in self.sorts:
                    raise AlgebraError(f"operation {o.name} uses unknown sort {s!r}")
        for name in self.designated_assoc:
            o = self.op(name)
            if o.arity != 2 or len({*o.args, o.result}) != 1:
                raise AlgebraError(f"associative op {name} must be binary within one sort")
        if self.product is not None and self.product not in self.designated_assoc:
            raise AlgebraError(f"product {self.product} must be a designated associative op")
        if self.unit is not None:
            u = self.op(self.unit)
            if u.arity != 0:
                raise AlgebraError(f"unit {self.unit} must be a constant")
            if self.product is not None and u.result != self.op(self.product).result:
                raise AlgebraError("unit and product live in different sorts")

    def op(self, name: str) -> OpSymbol:
        for o in self.ops:
            if o.name == name:
                return o
        raise AlgebraError(f"unknown operation {name!r}")

    def has_op(self, name: str) -> bool:
        return any(o.name == name for o in self.ops)

    def sort_index(self, sort: str) -> int:
        try:
            return self.sorts.index(sort)
        except ValueError:
            raise AlgebraError(f"unknown sort {sort!r}") from None

    def restrict(self, op_names: Iterable[str]) -> Signature:
        keep = set(op_names)
        ops = tuple(o for o in self.ops if o.name in keep)
        assoc = self.designated_assoc & keep
        return Signature(
            self.sorts,
            ops,
            assoc,
            self.product if self.product in keep else None,
            self.unit if self.unit in keep and self.product in keep else None,
        )

    def is_subsignature_of(self, other: Signature) -> bool:
        if not set(self.sorts) <= set(other.sorts):
            return False
        return all(other.has_op(o.name) and other.op(o.name) == o for o in self.ops)


class FiniteAlgebra:
    """A finite algebra over a :class:`Signature`.

    ``carriers[k]`` lists the element names of sort ``signature.sorts[k]``.
    ``tables[k]`` is the row-major table of ``signature.ops[k]``.
    ``order`` is either ``None`` or one reflexive partial order (as a frozenset
    of index pairs) per sort.
    """

    __slots__ = ("signature", "carriers", "tables", "order", "_ops", "_index", "_hash", "_assoc")

    def __init__(self, signature: Signature, carriers, tables, order=None):
        self.signature = signature
        self.carriers = tuple(tuple(c) for c in carriers)
        self.tables = tuple(tuple(t) for t in tables)
        self.order = None if order is None else tuple(frozenset(o) for o in order)
        if len(self.carriers) != len(signature.sorts) or len(self.tables) != len(signature.ops):
            raise AlgebraError("carriers/tables do not match the signature")
        for names in self.carriers:
            if not names:
                raise AlgebraError("empty sorts are not allowed")
            if len(set(names)) != len(names):
                raise AlgebraError(f"duplicate element names in {names}")
        self._ops = {}
        sizes = [len(c) for c in self.carriers]
        for k, o in enumerate(signature.ops):
            arg_idx = tuple(signature.sort_index(s) for s in o.args)
            strides = []
            acc = 1
            for a in reversed(arg_idx):
                strides.append(acc)
                acc *= sizes[a]
            strides.reverse()
            if len(self.tables[k]) != acc:
                raise AlgebraError(f"table of {o.name} has {len(self.tables[k])} entries, expected {acc}")
            self._ops[o.name] = (k, tuple(strides), arg_idx, signature.sort_index(o.result))
        self._index = [{n: i for i, n in enumerate(c)} for c in self.carriers]
        self._hash = None
        self._assoc = {}

    # -- basic access -------------------------------------------------
    def size(self, sort: str | None = None) -> int:
        if sort is None:
            return sum(len(c) for c in self.carriers)
        return len(self.carriers[self.signature.sort_index(sort)])

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.carriers)

    def elements(self, sort: str | None = None) -> tuple[str, ...]:
        return self.carriers[self._sort(sort)]

    def _sort(self, sort: str | None) -> int:
        if sort is None:
            if len(self.signature.sorts) != 1:
                raise AlgebraError("sort must be given for a many-sorted algebra")
            return 0
        return self.signature.sort_index(sort)

    def index(self, sort: str | None, name: str) -> int:
        try:
            return self._index[self._sort(sort)][name]
        except KeyError:
            raise AlgebraError(f"unknown element {name!r} of sort {sort}") from None

    def name(self, sort: str | None, i: int) -> str:
        return self.carriers[self._sort(sort)][i]

    def locate(self, name: str) -> tuple[int, int]:
        """(sort index, element index) of a name that is unique across sorts."""
        hits = [(s, idx[name]) for s, idx in enumerate(self._index) if name in idx]
        if len(hits) != 1:
            raise AlgebraError(f"element name {name!r} is {'ambiguous' if hits else 'unknown'}")
        return hits[0]

    @property
    def is_ordered(self) -> bool:
        return self.order is not None

    def op_info(self, name: str):
        try:
            return self._ops[name]
        except KeyError:
            raise AlgebraError(f"unknown operation {name!r}") from None

    def apply(self, op: str, *args: int) -> int | None:
        k, strides, _, _ = self.op_info(op)
        pos = 0
        for a, s in zip(args, strides):
            pos += a * s
        return self.tables[k][pos]

    def entries(self, op: str) -> Iterator[tuple[tuple[int, ...], int | None]]:
        k, _, arg_idx, _ = self.op_info(op)
        ranges = [range(len(self.carriers[a])) for a in arg_idx]
        for args, res in zip(itertools.product(*ranges), self.tables[k]):
            yield args, res

    def leq(self, sort: int, i: int, j: int) -> bool:
        if self.order is None:
            return i == j
        return (i, j) in self.order[sort]

    def is_associative(self, op: str) -> bool:
        if op not in self._assoc:
            k, (st, _), (sa, _), _ = self.op_info(op)
            t = self.tables[k]
            n = len(self.carriers[sa])
            ok = True
            for x, y, z in itertools.product(range(n), repeat=3):
                xy = t[x * st + y]
                yz = t[y * st + z]
                if xy is None or yz is None:
                    continue
                l, r = t[xy * st + z], t[x * st + yz]
                if l != r:
                    ok = False
                    break
            self._assoc[op] = ok
        return self._assoc[op]

    # -- identity -----------------------------------------------------
    def _key(self):
        return (self.signature, self.carriers, self.tables, self.order)

    def __eq__(self, other):
        return isinstance(other, FiniteAlgebra) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        parts = ", ".join(f"{s}:{'/'.join(c)}" for s, c in zip(self.signature.sorts, self.carriers))
        return f"<FiniteAlgebra {parts}{' ordered' if self.is_ordered else ''}>"

    def renamed(self, carriers) -> FiniteAlgebra:
        return FiniteAlgebra(self.signature, carriers, self.tables, self.order)

    def with_order(self, order) -> FiniteAlgebra:
        return FiniteAlgebra(self.signature, self.carriers, self.tables, order)

    def strict_order_pairs(self, sort: int) -> list[tuple[int, int]]:
        if self.order is None:
            return []
        return sorted((i, j) for i, j in self.order[sort] if i != j)


def _reflexive_transitive(n: int, pairs: Iterable[tuple[int, int]]) -> set[tuple[int, int]]:
    leq = [[i == j for j in range(n)] for i in range(n)]
    for i, j in pairs:
        leq[i][j] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                row_k = leq[k]
                row_i = leq[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return {(i, j) for i in range(n) for j in range(n) if leq[i][j]}


def structural_violations(alg: FiniteAlgebra) -> list[Violation]:
    """Totality, order and monotonicity problems of an already-indexed algebra."""
    out: list[Violation] = []
    sig = alg.signature
    for o in sig.ops:
        if o.partial:
            continue
        for args, res in alg.entries(o.name):
            if res is None:
                arg_names = tuple(alg.carriers[sig.sort_index(s)][a] for s, a in zip(o.args, args))
                out.append(Violation("totality", o.name, arg_names, f"{o.name}{arg_names} is undefined"))
    if alg.order is None:
        return out
    for s, rel in enumerate(alg.order):
        n = len(alg.carriers[s])
        names = alg.carriers[s]
        for i in range(n):
            if (i, i) not in rel:
                out.append(Violation("order", None, (names[i],), f"order not reflexive at {names[i]}"))
        for i, j in rel:
            if i != j and (j, i) in rel and i < j:
                out.append(Violation("order", None, (names[i], names[j]),
                                     f"order not antisymmetric: {names[i]} <= {names[j]} <= {names[i]}"))
            for k in range(n):
                if (j, k) in rel and (i, k) not in rel:
                    out.append(Violation("order", None, (names[i], names[j], names[k]),
                                         f"order not transitive at {names[i]} <= {names[j]} <= {names[k]}"))
    for o in sig.ops:
        arg_sorts = [sig.sort_index(s) for s in o.args]
        rs = sig.sort_index(o.result)
        for args, res in alg.entries(o.name):
            if res is None:
                continue
            for pos, s in enumerate(arg_sorts):
                for b in range(len(alg.carriers[s])):
                    if b == args[pos] or (args[pos], b) not in alg.order[s]:
                        continue
                    other = args[:pos] + (b,) + args[pos + 1:]
                    res2 = alg.apply(o.name, *other)
                    if res2 is not None and (res, res2) not in alg.order[rs]:
                        def nm(t):
                            return tuple(alg.carriers[x][y] for x, y in zip(arg_sorts, t))
                        out.append(Violation(
                            "monotonicity", o.name, (nm(args), nm(other)),
                            f"{o.name} not monotone: {nm(args)} <= {nm(other)} but "
                            f"{alg.carriers[rs][res]} </= {alg.carriers[rs][res2]}"))
    return out


def validate_algebra(sig: Signature, raw: Mapping) -> FiniteAlgebra:
    """Build a :class:`FiniteAlgebra` from named tables.

    ``raw`` has keys ``carriers`` (sort -> names), ``tables``
    (op -> {argument-name tuple: result name}) and optionally ``order``
    (sort -> iterable of ``(a, b)`` pairs meaning ``a <= b``; the
    reflexive-transitive closure is taken).  For a single-sorted signature,
    ``carriers`` may be a plain list and ``order`` a plain list of pairs.
    Raises :class:`InvalidAlgebra` listing every violation found.
    """
    carriers_raw = raw["carriers"]
    if not isinstance(carriers_raw, Mapping):
        if len(sig.sorts) != 1:
            raise AlgebraError("carriers must be keyed by sort")
        carriers_raw = {sig.sorts[0]: carriers_raw}
    carriers = []
    for s in sig.sorts:
        names = tuple(carriers_raw.get(s, ()))
        if not names:
            raise AlgebraError(f"sort {s} has an empty carrier")
        carriers.append(names)
    index = [{n: i for i, n in enumerate(c)} for c in carriers]
    violations: list[Violation] = []

    def look(s: str, name: str):
        si = sig.sort_index(s)
        if name not in index[si]:
            violations.append(Violation("unknown-element", None, (name,), f"unknown element {name!r} of sort {s}"))
            return None
        return index[si][name]

    tables = []
    raw_tables = raw.get("tables", {})
    for op in raw_tables:
        sig.op(op)
    for o in sig.ops:
        entries = raw_tables.get(o.name, {})
        sizes = [len(carriers[sig.sort_index(s)]) for s in o.args]
        total = 1
        for z in sizes:
            total *= z
        table: list[int | None] = [None] * total
        for args, res in entries.items():
            if isinstance(args, str):
                args = (args,)
            args = tuple(args)
            if len(args) != o.arity:
                violations.append(Violation("totality", o.name, args, f"{o.name} expects {o.arity} arguments, got {args}"))
                continue
            idx = [look(s, a) for s, a in zip(o.args, args)]
            r = look(o.result, res)
            if None in idx or r is None:
                continue
            pos = 0
            for i, z in zip(idx, sizes):
                pos = pos * z + i
            table[pos] = r
        tables.append(table)

    order = None
    if raw.get("order") is not None:
        order_raw = raw["order"]
        if not isinstance(order_raw, Mapping):
            order_raw = {sig.sorts[0]: order_raw}
        order = []
        for s in sig.sorts:
            si = sig.sort_index(s)
            pairs = []
            for a, b in order_raw.get(s, ()):
                ia, ib = look(s, a), look(s, b)
                if ia is not None and ib is not None:
                    pairs.append((ia, ib))
            order.append(_reflexive_transitive(len(carriers[si]), pairs))
    if violations:
        raise InvalidAlgebra(violations)
    alg = FiniteAlgebra(sig, carriers, tables, order)
    violations = structural_violations(alg)
    if violations:
        raise InvalidAlgebra(violations)
    return alg


# -- morphisms -----------------------------------------------------------


@dataclass(frozen=True)
class Morphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    maps: tuple[tuple[int, ...], ...]  # per source sort

    def __call__(self, sort: str | None, name: str) -> str:
        s = self.source._sort(sort)
        tgt_s = self.target.signature.sort_index(self.source.signature.sorts[s])
        return self.target.carriers[tgt_s][self.maps[s][self.source.index(sort, name)]]

    def as_dict(self) -> dict[str, dict[str, str]]:
        out = {}
        for s, sort in enumerate(self.source.signature.sorts):
            t = self.target.signature.sort_index(sort)
            out[sort] = {self.source.carriers[s][i]: self.target.carriers[t][j] for i, j in enumerate(self.maps[s])}
        return out

    def is_surjective(self) -> bool:
        return all(set(m) == set(range(len(self.target.carriers[s]))) for s, m in enumerate(self.maps))

    def is_injective(self) -> bool:
        return all(len(set(m)) == len(m) for m in self.maps)

    def is_order_reflecting(self) -> bool:
        if not self.source.is_ordered:
            return True
        for s, m in enumerate(self.maps):
            n = len(m)
            for i in range(n):
                for j in range(n):
                    if self.target.leq(s, m[i], m[j]) and not self.source.leq(s, i, j):
                        return False
        return True

    def then(self, other: Morphism) -> Morphism:
        """``other ∘ self``."""
        return Morphism(self.source, other.target,
                        tuple(tuple(other.maps[s][x] for x in m) for s, m in enumerate(self.maps)))

    def __repr__(self):
        return f"<Morphism {self.as_dict()}>"


def _check_same_shape(A: FiniteAlgebra, B: FiniteAlgebra):
    if A.signature != B.signature:
        raise AlgebraError("algebras have different signatures")
    if A.is_ordered != B.is_ordered:
        raise AlgebraError("cannot mix ordered and unordered algebras")


def _coerce_maps(f, A: FiniteAlgebra, B: FiniteAlgebra) -> tuple[tuple[int, ...], ...]:
    if isinstance(f, Morphism):
        return f.maps
    if isinstance(f, Mapping):
        if len(A.signature.sorts) == 1 and A.signature.sorts[0] not in f:
            f = {A.signature.sorts[0]: f}
        maps = []
        for s, sort in enumerate(A.signature.sorts):
            fs = f[sort]
            maps.append(tuple(B.index(sort, fs[n]) for n in A.carriers[s]))
        return tuple(maps)
    return tuple(tuple(m) for m in f)


def is_homomorphism(f, A: FiniteAlgebra, B: FiniteAlgebra) -> Verdict:
    """Does ``f`` (a Morphism, name mapping, or index maps) commute with ``A``'s tables?

    The witness is ``(op, argument names)`` for the first failing table entry,
    or ``('order', (a, b))`` for the first monotonicity failure.
    """
    _check_same_shape(A, B)
    maps = _coerce_maps(f, A, B)
    sig = A.signature
    for o in sig.ops:
        arg_s = [sig.sort_index(s) for s in o.args]
        rs = sig.sort_index(o.result)
        for args, res in A.entries(o.name):
            if res is None:
                continue
            img = B.apply(o.name, *(maps[s][a] for s, a in zip(arg_s, args)))
            if img != maps[rs][res]:
                return Verdict(False, (o.name, tuple(A.carriers[s][a] for s, a in zip(arg_s, args))))
    if A.is_ordered:
        for s, rel in enumerate(A.order):
            for i, j in sorted(rel):
                if not B.leq(s, maps[s][i], maps[s][j]):
                    return Verdict(False, ("order", (A.carriers[s][i], A.carriers[s][j])))
    return Verdict(True)


def _check_cap(alg: FiniteAlgebra, cap: int | None):
    cap = DEFAULT_SIZE_CAP if cap is None else cap
    if alg.size() > cap:
        raise SizeCapExceeded(f"algebra of size {alg.size()} exceeds the size cap {cap}")


def _search_maps(A: FiniteAlgebra, B: FiniteAlgebra, *, injective=False, candidates=None,
                 check_order=True) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Backtracking over maps A -> B commuting with A's defined table entries.

    ``candidates`` optionally restricts the allowed images per (sort, element).
    Positions are assigned sort by sort in index order; each constraint is
    checked as soon as its last position is assigned, so output is in
    lexicographic order of the flattened map.
    """
    sig = A.signature
    positions = [(s, i) for s in range(len(sig.sorts)) for i in range(len(A.carriers[s]))]
    pos_of = {p: k for k, p in enumerate(positions)}
    buckets: list[list] = [[] for _ in positions]
    for o in sig.ops:
        kB, stridesB, _, _ = B.op_info(o.name)
        tabB = B.tables[kB]
        arg_s = [sig.sort_index(s) for s in o.args]
        rs = sig.sort_index(o.result)
        for args, res in A.entries(o.name):
            if res is None:
                continue
            ps = tuple(pos_of[(s, a)] for s, a in zip(arg_s, args))
            pr = pos_of[(rs, res)]
            last = max((*ps, pr))
            buckets[last].append((tabB, stridesB, ps, pr))
    order_buckets: list[list] = [[] for _ in positions]
    if check_order and A.is_ordered:
        for s, rel in enumerate(A.order):
            leqB = B.order[s]
            for i, j in rel:
                if i != j:
                    pi, pj = pos_of[(s, i)], pos_of[(s, j)]
                    order_buckets[max(pi, pj)].append((leqB, pi, pj))
    cand = []
    for s, i in positions:
        if candidates is not None:
            cand.append(tuple(candidates[s][i]))
        else:
            cand.append(tuple(range(len(B.carriers[s]))))
    n = len(positions)
    val = [0] * n
    used = [set() for _ in sig.sorts]

    def consistent(k):
        for tab, strides, ps, pr in buckets[k]:
            p = 0
            for q, st in zip(ps, strides):
                p += val[q] * st
            if tab[p] != val[pr]:
                return False
        for leqB, pi, pj in order_buckets[k]:
            if (val[pi], val[pj]) not in leqB:
                return False
        return True

    def rec(k):
        if k == n:
            maps = []
            for s in range(len(sig.sorts)):
                maps.append(tuple(val[pos_of[(s, i)]] for i in range(len(A.carriers[s]))))
            yield tuple(maps)
            return
        s = positions[k][0]
        for v in cand[k]:
            if injective and v in used[s]:
                continue
            val[k] = v
            if consistent(k):
                if injective:
                    used[s].add(v)
                yield from rec(k + 1)
                if injective:
                    used[s].discard(v)

    yield from rec(0)


def enumerate_morphisms(A: FiniteAlgebra, B: FiniteAlgebra, cap: int | None = None) -> list[Morphism]:
    """All homomorphisms A -> B (monotone ones when ordered), lexicographic order."""
    _check_same_shape(A, B)
    _check_cap(A, cap)
    _check_cap(B, cap)
    return [Morphism(A, B, m) for m in _search_maps(A, B)]


def identity(A: FiniteAlgebra) -> Morphism:
    return Morphism(A, A, tuple(tuple(range(len(c))) for c in A.carriers))


def reduct(A: FiniteAlgebra, sig: Signature) -> FiniteAlgebra:
    """Forget every operation of ``A`` not in ``sig`` (the forgetful functor)."""
    if sig == A.signature:
        return A
    if tuple(sig.sorts) != tuple(A.signature.sorts) or not sig.is_subsignature_of(A.signature):
        raise AlgebraError("signature is not a reduct of the algebra's signature")
    tables = [A.tables[A.op_info(o.name)[0]] for o in sig.ops]
    return FiniteAlgebra(sig, A.carriers, tables, A.order)


# -- products and trivial algebras ----------------------------------------


def trivial_algebra(sig: Signature, ordered: bool = False, name: str = "1") -> FiniteAlgebra:
    carriers = [(name,) for _ in sig.sorts]
    tables = [(0,) for _ in sig.ops]
    order = [{(0, 0)} for _ in sig.sorts] if ordered else None
    return FiniteAlgebra(sig, carriers, tables, order)


def product(A: FiniteAlgebra, B: FiniteAlgebra) -> tuple[FiniteAlgebra, Morphism, Morphism]:
    """Componentwise product with its two projections."""
    _check_same_shape(A, B)
    sig = A.signature
    carriers, pairs = [], []
    for s in range(len(sig.sorts)):
        ps = list(itertools.product(range(len(A.carriers[s])), range(len(B.carriers[s]))))
        pairs.append({p: k for k, p in enumerate(ps)})
        carriers.append([f"({A.carriers[s][i]},{B.carriers[s][j]})" for i, j in ps])
    tables = []
    for o in sig.ops:
        arg_s = [sig.sort_index(s) for s in o.args]
        rs = sig.sort_index(o.result)
        ranges = [list(pairs[s]) for s in arg_s]
        table = []
        for args in itertools.product(*ranges):
            ra = A.apply(o.name, *(a for a, _ in args))
            rb = B.apply(o.name, *(b for _, b in args))
            table.append(None if ra is None or rb is None else pairs[rs][(ra, rb)])
        tables.append(table)
    order = None
    if A.is_ordered:
        order = []
        for s in range(len(sig.sorts)):
            order.append({(pairs[s][p], pairs[s][q]) for p in pairs[s] for q in pairs[s]
                          if A.leq(s, p[0], q[0]) and B.leq(s, p[1], q[1])})
    P = FiniteAlgebra(sig, carriers, tables, order)
    p1 = Morphism(P, A, tuple(tuple(i for i, _ in pairs[s]) for s in range(len(sig.sorts))))
    p2 = Morphism(P, B, tuple(tuple(j for _, j in pairs[s]) for s in range(len(sig.sorts))))
    return P, p1, p2


# -- subalgebras -----------------------------------------------------------


def _seed_indices(A: FiniteAlgebra, seed) -> list[set[int]]:
    out = [set() for _ in A.signature.sorts]
    if seed is None:
        return out
    if not isinstance(seed, Mapping):
        seed = {A.signature.sorts[0]: seed} if len(A.signature.sorts) == 1 else dict(seed)
    for sort, elems in seed.items():
        s = A.signature.sort_index(sort)
        for e in elems:
            out[s].add(A.index(sort, e) if isinstance(e, str) else int(e))
    return out


def closure(A: FiniteAlgebra, sets: list[set[int]]) -> list[set[int]]:
    """Least family of subsets containing ``sets`` and closed under A's operations."""
    sets = [set(x) for x in sets]
    sig = A.signature
    changed = True
    while changed:
        changed = False
        for o in sig.ops:
            arg_s = [sig.sort_index(s) for s in o.args]
            rs = sig.sort_index(o.result)
            for args in itertools.product(*(sorted(sets[s]) for s in arg_s)):
                r = A.apply(o.name, *args)
                if r is not None and r not in sets[rs]:
                    sets[rs].add(r)
                    changed = True
    return sets


def restrict(A: FiniteAlgebra, subsets: Sequence[Iterable[int]]) -> Morphism:
    """Embedding of the subalgebra carried by ``subsets`` (must be closed)."""
    keep = [sorted(x) for x in subsets]
    if any(not k for k in keep):
        raise AlgebraError("subalgebra would have an empty sort")
    new = [{old: i for i, old in enumerate(k)} for k in keep]
    sig = A.signature
    tables = []
    for o in sig.ops:
        arg_s = [sig.sort_index(s) for s in o.args]
        rs = sig.sort_index(o.result)
        table = []
        for args in itertools.product(*(keep[s] for s in arg_s)):
            r = A.apply(o.name, *args)
            if r is not None and r not in new[rs]:
                raise AlgebraError("subset is not closed under the operations")
            table.append(None if r is None else new[rs][r])
        tables.append(table)
    order = None
    if A.is_ordered:
        order = [{(new[s][i], new[s][j]) for i, j in A.order[s] if i in new[s] and j in new[s]}
                 for s in range(len(sig.sorts))]
    S = FiniteAlgebra(sig, [[A.carriers[s][i] for i in k] for s, k in enumerate(keep)], tables, order)
    return Morphism(S, A, tuple(tuple(k) for k in keep))


def subalgebra_generated(A: FiniteAlgebra, seed=None) -> Morphism:
    """Embedding of the least subalgebra containing ``seed`` (names or indices per sort)."""
    return restrict(A, closure(A, _seed_indices(A, seed)))


def enumerate_subalgebras(A: FiniteAlgebra) -> list[Morphism]:
    """Embeddings of all subalgebras (distinct carriers), smallest first."""
    found: dict[tuple, list[set[int]]] = {}

    def key(sets):
        return tuple(tuple(sorted(s)) for s in sets)

    todo = [closure(A, [set() for _ in A.signature.sorts])]
    while todo:
        cur = todo.pop()
        k = key(cur)
        if k in found:
            continue
        found[k] = cur
        for s, c in enumerate(A.carriers):
            for i in range(len(c)):
                if i not in cur[s]:
                    nxt = [set(x) for x in cur]
                    nxt[s].add(i)
                    todo.append(closure(A, nxt))
    out = []
    for k in sorted(found, key=lambda k: (sum(map(len, k)), k)):
        if all(k):
            out.append(restrict(A, found[k]))
    return out


# -- congruences -----------------------------------------------------------


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _canonical_labels(labels: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


@dataclass(frozen=True)
class Congruence:
    algebra: FiniteAlgebra = field(repr=False)
    blocks: tuple[tuple[int, ...], ...]  # per sort: block label of each element

    def related(self, sort: int, i: int, j: int) -> bool:
        return self.blocks[sort][i] == self.blocks[sort][j]

    def classes(self, sort: str | None = None) -> list[list[str]]:
        s = self.algebra._sort(sort)
        out: dict[int, list[str]] = {}
        for i, b in enumerate(self.blocks[s]):
            out.setdefault(b, []).append(self.algebra.carriers[s][i])
        return [out[b] for b in sorted(out)]

    def num_blocks(self) -> int:
        return sum(len(set(b)) for b in self.blocks)

    def pairs(self) -> list[tuple[int, int, int]]:
        out = []
        for s, labels in enumerate(self.blocks):
            first: dict[int, int] = {}
            for i, b in enumerate(labels):
                if b in first:
                    out.append((s, first[b], i))
                else:
                    first[b] = i
        return out

    def refines(self, other: Congruence) -> bool:
        return all(self.related(s, *p) <= other.related(s, *p)
                   for s, labels in enumerate(self.blocks)
                   for p in itertools.combinations(range(len(labels)), 2))

    def is_compatible(self) -> bool:
        A = self.algebra
        sig = A.signature
        for o in sig.ops:
            arg_s = [sig.sort_index(s) for s in o.args]
            rs = sig.sort_index(o.result)
            seen = {}
            for args, res in A.entries(o.name):
                if res is None:
                    continue
                k = tuple(self.blocks[s][a] for s, a in zip(arg_s, args))
                if k in seen and seen[k] != self.blocks[rs][res]:
                    return False
                seen[k] = self.blocks[rs][res]
        return True

    def __repr__(self):
        return "Congruence(" + " ".join(
            "".join("{" + ",".join(c) + "}" for c in self.classes(sort)) for sort in self.algebra.signature.sorts) + ")"


def _coerce_pairs(A: FiniteAlgebra, pairs) -> list[tuple[int, int, int]]:
    out = []
    for p in pairs:
        if len(p) == 2:
            sort, a, b = None, *p
        else:
            sort, a, b = p
        s = A._sort(sort) if not isinstance(sort, int) else sort
        sname = A.signature.sorts[s]
        ia = A.index(sname, a) if isinstance(a, str) else a
        ib = A.index(sname, b) if isinstance(b, str) else b
        out.append((s, ia, ib))
    return out


def congruence_closure(A: FiniteAlgebra, pairs=(), base: Congruence | None = None) -> Congruence:
    """Least congruence containing ``pairs`` (and ``base``, when given).

    Pairs are ``(a, b)`` for single-sorted algebras or ``(sort, a, b)``;
    elements may be names or indices.
    """
    ufs = [_UnionFind(len(c)) for c in A.carriers]
    todo = _coerce_pairs(A, pairs)
    if base is not None:
        todo += base.pairs()
    for s, a, b in todo:
        ufs[s].union(a, b)
    sig = A.signature
    ops = [(o.name, [sig.sort_index(s) for s in o.args], sig.sort_index(o.result)) for o in sig.ops]
    entries = {name: [(args, res) for args, res in A.entries(name) if res is not None] for name, _, _ in ops}
    changed = True
    while changed:
        changed = False
        for name, arg_s, rs in ops:
            seen: dict[tuple, int] = {}
            for args, res in entries[name]:
                k = tuple(ufs[s].find(a) for s, a in zip(arg_s, args))
                r = ufs[rs].find(res)
                if k in seen:
                    if ufs[rs].union(seen[k], r):
                        changed = True
                else:
                    seen[k] = r
    blocks = tuple(_canonical_labels([uf.find(i) for i in range(len(c))]) for uf, c in zip(ufs, A.carriers))
    return Congruence(A, blocks)


def diagonal(A: FiniteAlgebra) -> Congruence:
    return Congruence(A, tuple(tuple(range(len(c))) for c in A.carriers))


def total_congruence(A: FiniteAlgebra) -> Congruence:
    return Congruence(A, tuple((0,) * len(c) for c in A.carriers))


def kernel(f: Morphism) -> Congruence:
    return Congruence(f.source, tuple(_canonical_labels(m) for m in f.maps))


def enumerate_congruences(A: FiniteAlgebra, cap: int | None = None) -> list[Congruence]:
    """All congruences of ``A``, finest first.

    Generated as joins of principal congruences, so the result is closed
    under joins by construction.
    """
    _check_cap(A, cap)
    delta = diagonal(A)
    principal = []
    for s, c in enumerate(A.carriers):
        for i, j in itertools.combinations(range(len(c)), 2):
            principal.append(congruence_closure(A, [(s, i, j)]))
    principal = list({p.blocks: p for p in principal}.values())
    found = {delta.blocks: delta}
    frontier = [delta]
    while frontier:
        nxt = []
        for theta in frontier:
            for p in principal:
                j = congruence_closure(A, base=theta, pairs=p.pairs())
                if j.blocks not in found:
                    found[j.blocks] = j
                    nxt.append(j)
        frontier = nxt
    return sorted(found.values(), key=lambda c: (-c.num_blocks(), c.blocks))


def quotient(A: FiniteAlgebra, theta: Congruence) -> tuple[FiniteAlgebra, Morphism]:
    """Quotient algebra and the canonical surjection.

    Blocks are named by their first element.  For ordered algebras the
    quotient carries the least order generated by the images of ``<=``;
    :class:`OrderedQuotientError` is raised when that preorder is not
    antisymmetric.
    """
    if theta.algebra != A:
        raise AlgebraError("congruence belongs to a different algebra")
    if not theta.is_compatible():
        raise AlgebraError("partition is not a congruence")
    sig = A.signature
    nb = [max(b) + 1 for b in theta.blocks]
    carriers = []
    for s, labels in enumerate(theta.blocks):
        names = [None] * nb[s]
        for i, b in enumerate(labels):
            if names[b] is None:
                names[b] = A.carriers[s][i]
        carriers.append(names)
    tables = []
    for o in sig.ops:
        arg_s = [sig.sort_index(s) for s in o.args]
        rs = sig.sort_index(o.result)
        strides, acc = [], 1
        for s in reversed(arg_s):
            strides.append(acc)
            acc *= nb[s]
        strides.reverse()
        table: list[int | None] = [None] * acc
        for args, res in A.entries(o.name):
            if res is None:
                continue
            pos = sum(theta.blocks[s][a] * st for s, a, st in zip(arg_s, args, strides))
            table[pos] = theta.blocks[rs][res]
        tables.append(table)
    order = None
    if A.is_ordered:
        order = []
        for s in range(len(sig.sorts)):
            lab = theta.blocks[s]
            rel = _reflexive_transitive(nb[s], {(lab[i], lab[j]) for i, j in A.order[s]})
            if any(i != j and (j, i) in rel for i, j in rel):
                raise OrderedQuotientError(f"generated order on blocks of sort {sig.sorts[s]} is not antisymmetric")
            order.append(rel)
    B = FiniteAlgebra(sig, carriers, tables, order)
    return B, Morphism(A, B, theta.blocks)


def partial_orders(n: int, containing: Iterable[tuple[int, int]] = ()) -> list[frozenset[tuple[int, int]]]:
    """All (reflexive) partial orders on ``range(n)`` containing the given pairs."""
    base = _reflexive_transitive(n, containing)
    if any(i != j and (j, i) in base for i, j in base):
        return []
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []

    def rec(k, rel):
        if k == len(pairs):
            if _reflexive_transitive(n, rel) == rel:
                out.append(frozenset(rel))
            return
        i, j = pairs[k]
        has_ij, has_ji = (i, j) in base, (j, i) in base
        opts = []
        if not has_ij and not has_ji:
            opts.append(None)
        if not has_ji:
            opts.append((i, j))
        if not has_ij:
            opts.append((j, i))
        for choice in opts:
            nxt = rel if choice is None else rel | {choice}
            yield_ok = True
            # prune: transitive closure must stay antisymmetric
            if choice is not None:
                cl = _reflexive_transitive(n, nxt)
                yield_ok = not any(a != b and (b, a) in cl for a, b in cl)
            if yield_ok:
                rec(k + 1, nxt)

    rec(0, set(base))
    return sorted(set(out), key=lambda r: sorted(r))


def compatible_orders(A: FiniteAlgebra, containing=None) -> list[FiniteAlgebra]:
    """All ordered versions of ``A`` whose operations are monotone.

    ``containing`` is an optional per-sort order that every result must extend.
    """
    per_sort = []
    for s, c in enumerate(A.carriers):
        base = () if containing is None else containing[s]
        per_sort.append(partial_orders(len(c), base))
    out = []
    for combo in itertools.product(*per_sort):
        B = A.with_order(combo)
        if not structural_violations(B):
            out.append(B)
    return out


def enumerate_quotients(A: FiniteAlgebra, all_orders: bool = True, cap: int | None = None
                        ) -> list[tuple[FiniteAlgebra, Morphism]]:
    """Every quotient ``A ->> B`` up to equality of (kernel, target order).

    Unordered: one quotient per congruence.  Ordered: congruences whose
    generated block order is antisymmetric; with ``all_orders`` every
    compatible order extending the generated one is enumerated as well, so
    that all surjective monotone homomorphisms are represented.
    """
    out = []
    for theta in enumerate_congruences(A, cap):
        try:
            B, e = quotient(A, theta)
        except OrderedQuotientError:
            continue
        if A.is_ordered and all_orders:
            for B2 in compatible_orders(B, containing=B.order):
                out.append((B2, Morphism(A, B2, e.maps)))
        else:
            out.append((B, e))
    return out


# -- factorisations ---------------------------------------------------------


def image_factorization(f: Morphism) -> tuple[Morphism, Morphism]:
    """Factor ``f`` as ``m ∘ e`` with ``e`` surjective and ``m`` an embedding."""
    image = [set(m) for m in f.maps]
    if closure(f.target, image) != image:
        raise AlgebraError("image is not closed under the partial operations")
    m = restrict(f.target, image)
    back = [{old: i for i, old in enumerate(k)} for k in m.maps]
    e = Morphism(f.source, m.source, tuple(tuple(back[s][x] for x in mp) for s, mp in enumerate(f.maps)))
    return e, m


def hom_theorem_factor(e: Morphism, f: Morphism) -> tuple[Morphism | None, tuple | None]:
    """Find ``f'`` with ``f' ∘ e = f``; otherwise return the offending pair.

    Returns ``(f', None)`` or ``(None, (a, a'))`` where ``e`` identifies (or
    orders) ``a, a'`` but ``f`` does not.
    """
    if not e.is_surjective():
        raise AlgebraError("e is not surjective")
    if e.source != f.source:
        raise AlgebraError("e and f have different sources")
    A, B, C = e.source, e.target, f.target
    for s, (em, fm) in enumerate(zip(e.maps, f.maps)):
        n = len(em)
        for a in range(n):
            for b in range(n):
                if em[a] == em[b] and fm[a] != fm[b]:
                    return None, (A.carriers[s][a], A.carriers[s][b])
                if B.is_ordered and B.leq(s, em[a], em[b]) and not C.leq(s, fm[a], fm[b]):
                    return None, (A.carriers[s][a], A.carriers[s][b])
    maps = []
    for s, (em, fm) in enumerate(zip(e.maps, f.maps)):
        g = [0] * len(B.carriers[s])
        for a, b in enumerate(em):
            g[b] = fm[a]
        maps.append(tuple(g))
    fp = Morphism(B, C, tuple(maps))
    return fp, None


def is_split_surjection(e: Morphism, base: Signature | None = None) -> Morphism | None:
    """A section ``m`` with ``e ∘ m = id``, searched among homomorphisms of the
    ``base`` reducts (default: the full signature), or ``None``."""
    if not e.is_surjective():
        raise AlgebraError("e is not surjective")
    sig = e.source.signature if base is None else base
    A, B = reduct(e.source, sig), reduct(e.target, sig)
    candidates = []
    for s, m in enumerate(e.maps):
        pre = [[] for _ in B.carriers[s]]
        for a, b in enumerate(m):
            pre[b].append(a)
        candidates.append(pre)
    for maps in _search_maps(B, A, candidates=candidates):
        return Morphism(B, A, maps)
    return None


# -- isomorphism -------------------------------------------------------------


def element_invariants(A: FiniteAlgebra) -> list[list[tuple]]:
    """Isomorphism-invariant profile of every element, per sort."""
    sig = A.signature
    inv = [[[] for _ in c] for c in A.carriers]
    for o in sig.ops:
        arg_s = [sig.sort_index(s) for s in o.args]
        rs = sig.sort_index(o.result)
        as_result = [0] * len(A.carriers[rs])
        fixes = [[0] * len(A.carriers[s]) for s in arg_s]
        diag = {}
        for args, res in A.entries(o.name):
            if res is None:
                for p, (s, a) in enumerate(zip(arg_s, args)):
                    fixes[p][a] -= 1000
                continue
            as_result[res] += 1
            for p, (s, a) in enumerate(zip(arg_s, args)):
                if s == rs and a == res:
                    fixes[p][a] += 1
            if o.arity >= 1 and len(set(arg_s)) == 1 and len(set(args)) == 1:
                diag[args[0]] = res == args[0] if rs == arg_s[0] else None
        for i in range(len(A.carriers[rs])):
            inv[rs][i].append(("r", o.name, as_result[i]))
        for p, s in enumerate(arg_s):
            for i in range(len(A.carriers[s])):
                inv[s][i].append(("a", o.name, p, fixes[p][i], diag.get(i)))
    if A.is_ordered:
        for s, rel in enumerate(A.order):
            for i in range(len(A.carriers[s])):
                below = sum(1 for x, y in rel if y == i)
                above = sum(1 for x, y in rel if x == i)
                inv[s][i].append(("o", below, above))
    return [[tuple(x) for x in per] for per in inv]


def canonical_form(A: FiniteAlgebra) -> tuple:
    """Lexicographically least relabelled table among invariant-respecting labellings.

    Two algebras over the same signature are isomorphic iff their canonical
    forms are equal.
    """
    inv = element_invariants(A)
    blocks_per_sort = []
    profile = []
    for s, c in enumerate(A.carriers):
        groups: dict[tuple, list[int]] = {}
        for i in range(len(c)):
            groups.setdefault(inv[s][i], []).append(i)
        keys = sorted(groups)
        blocks_per_sort.append([groups[k] for k in keys])
        profile.append(tuple((k, len(groups[k])) for k in keys))
    sig = A.signature
    best = None
    choices = [itertools.product(*(itertools.permutations(b) for b in blocks)) for blocks in blocks_per_sort]
    for combo in itertools.product(*[list(ch) for ch in choices]):
        # combo[s] is a tuple of permuted blocks; concatenation = new order (new label -> old)
        new_to_old = [list(itertools.chain.from_iterable(c)) for c in combo]
        old_to_new = []
        for s, no in enumerate(new_to_old):
            inv_map = [0] * len(no)
            for new, old in enumerate(no):
                inv_map[old] = new
            old_to_new.append(inv_map)
        key = []
        for o in sig.ops:
            arg_s = [sig.sort_index(s) for s in o.args]
            rs = sig.sort_index(o.result)
            row = []
            for args in itertools.product(*(range(len(A.carriers[s])) for s in arg_s)):
                r = A.apply(o.name, *(new_to_old[s][a] for s, a in zip(arg_s, args)))
                row.append(-1 if r is None else old_to_new[rs][r])
            key.append(tuple(row))
        if A.is_ordered:
            for s, rel in enumerate(A.order):
                key.append(tuple(sorted((old_to_new[s][i], old_to_new[s][j]) for i, j in rel)))
        key = tuple(key)
        if best is None or key < best:
            best = key
    return (sig, A.is_ordered, A.sizes(), tuple(profile), best)


def isomorphic(A: FiniteAlgebra, B: FiniteAlgebra) -> Morphism | None:
    """An isomorphism A -> B (order-isomorphism when ordered), or ``None``."""
    if A.signature != B.signature or A.is_ordered != B.is_ordered or A.sizes() != B.sizes():
        return None
    ia, ib = element_invariants(A), element_invariants(B)
    if any(sorted(x) != sorted(y) for x, y in zip(ia, ib)):
        return None
    if sum(t.count(None) for t in A.tables) != sum(t.count(None) for t in B.tables):
        return None
    if A.is_ordered and [len(r) for r in A.order] != [len(r) for r in B.order]:
        return None
    candidates = [[[j for j in range(len(ib[s])) if ib[s][j] == ia[s][i]] for i in range(len(ia[s]))]
                  for s in range(len(ia))]
    for maps in _search_maps(A, B, injective=True, candidates=candidates):
        return Morphism(A, B, maps)
    return None


def automorphisms(A: FiniteAlgebra) -> list[Morphism]:
    """All automorphisms of ``A`` (identity first)."""
    inv = element_invariants(A)
    candidates = [[[j for j in range(len(inv[s])) if inv[s][j] == inv[s][i]] for i in range(len(inv[s]))]
                  for s in range(len(inv))]
    return [Morphism(A, A, maps) for maps in _search_maps(A, A, injective=True, candidates=candidates)]


def dedupe_isomorphic(algebras: Iterable) -> list:
    """Keep the first representative of each isomorphism class (order preserved).

    Items may be FiniteAlgebra or anything with an ``algebra`` attribute.
    """
    seen = set()
    out = []
    for x in algebras:
        alg = getattr(x, "algebra", x)
        k = canonical_form(alg)
        if k not in seen:
            seen.add(k)
            out.append(x)
    return out


def divides(A: FiniteAlgebra, B: FiniteAlgebra) -> tuple[Morphism, Morphism] | None:
    """Witness ``(embedding S >-> B, surjection S ->> A)`` that A divides B."""
    for m in enumerate_subalgebras(B):
        S = m.source
        if any(x < y for x, y in zip(S.sizes(), A.sizes())):
            continue
        for maps in _search_maps(S, A):
            f = Morphism(S, A, maps)
            if f.is_surjective():
                return m, f
    return None
