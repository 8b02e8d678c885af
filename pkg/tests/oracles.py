"""Independent brute-force oracles.

Nothing here uses the package's search code: tables are plain tuples and
every check is a direct loop over all elements.
"""
from __future__ import annotations

import itertools


def monoid_table(alg) -> tuple[int, list[list[int]]]:
    """(unit index, multiplication matrix) of a FiniteAlgebra monoid."""
    n = alg.size()
    return alg.apply("unit"), [[alg.apply("mul", i, j) for j in range(n)] for i in range(n)]


def is_associative(mul, n) -> bool:
    return all(mul[mul[a][b]][c] == mul[a][mul[b][c]] for a in range(n) for b in range(n) for c in range(n))


def identity_of(mul, n):
    for e in range(n):
        if all(mul[e][x] == x and mul[x][e] == x for x in range(n)):
            return e
    return None


def _relabel(mul, n, perm):
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(perm[mul[inv[a]][inv[b]]] for a in range(n) for b in range(n))


def brute_monoid_count(n: int) -> int:
    """Iso classes of monoids on n elements by trying every table (unpruned)."""
    classes = set()
    perms = list(itertools.permutations(range(n)))
    for flat in itertools.product(range(n), repeat=n * n):
        mul = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        if identity_of(mul, n) is None or not is_associative(mul, n):
            continue
        classes.add(min(_relabel(mul, n, p) for p in perms))
    return len(classes)


def partial_orders_brute(n: int):
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        rel = {(i, i) for i in range(n)} | {p for p, b in zip(pairs, bits) if b}
        if any((j, i) in rel for i, j in rel if i != j):
            continue
        if any((a, c) not in rel for a, b in rel for b2, c in rel if b == b2):
            continue
        yield frozenset(rel)


def brute_ordered_monoid_count(n: int) -> int:
    """Iso classes of ordered monoids (monotone multiplication) on n elements."""
    classes = set()
    perms = list(itertools.permutations(range(n)))
    orders = list(partial_orders_brute(n))
    for flat in itertools.product(range(n), repeat=n * n):
        mul = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        if identity_of(mul, n) is None or not is_associative(mul, n):
            continue
        for rel in orders:
            if not all((mul[a][c], mul[b][c]) in rel and (mul[c][a], mul[c][b]) in rel
                       for a, b in rel for c in range(n)):
                continue
            best = None
            for p in perms:
                key = (_relabel(mul, n, p), tuple(sorted((p[a], p[b]) for a, b in rel)))
                if best is None or key < best:
                    best = key
            classes.add(best)
    return len(classes)


def group_free(alg) -> bool:
    """No subset with at least two elements is a group under the multiplication."""
    e, mul = monoid_table(alg)
    n = len(mul)
    for k in range(2, n + 1):
        for S in itertools.combinations(range(n), k):
            s = set(S)
            if any(mul[a][b] not in s for a in S for b in S):
                continue
            ids = [x for x in S if all(mul[x][y] == y and mul[y][x] == y for y in S)]
            if not ids:
                continue
            u = ids[0]
            if all(any(mul[a][b] == u and mul[b][a] == u for b in S) for a in S):
                return False
    return True


def j_trivial(alg) -> bool:
    _, mul = monoid_table(alg)
    n = len(mul)
    ideal = [{mul[mul[x][a]][y] for x in range(n) for y in range(n)} for a in range(n)]
    return all(not (a in ideal[b] and b in ideal[a]) for a in range(n) for b in range(n) if a != b)


def commutative(alg) -> bool:
    _, mul = monoid_table(alg)
    return all(mul[a][b] == mul[b][a] for a in range(len(mul)) for b in range(len(mul)))


def idempotent_monoid(alg) -> bool:
    _, mul = monoid_table(alg)
    return all(mul[a][a] == a for a in range(len(mul)))


def is_group(alg) -> bool:
    e, mul = monoid_table(alg)
    return all(any(mul[a][b] == e for b in range(len(mul))) for a in range(len(mul)))


def trivial_units(alg) -> bool:
    e, mul = monoid_table(alg)
    n = len(mul)
    return all(a == e for a in range(n) if any(mul[a][b] == e and mul[b][a] == e for b in range(n)))


def powers(a, mul):
    """a, a^2, ... until the first repeat (inclusive list of distinct powers)."""
    seen, out, x = set(), [], a
    while x not in seen:
        seen.add(x)
        out.append(x)
        x = mul[x][a]
    return out


def idempotent_power_oracle(a, mul):
    idem = [x for x in powers(a, mul) if mul[x][x] == x]
    assert len(idem) == 1
    return idem[0]


def brute_morphisms(A, B):
    """All maps between single-sorted algebras that commute with every op."""
    out = []
    n, m = A.size(), B.size()
    for f in itertools.product(range(m), repeat=n):
        ok = True
        for o in A.signature.ops:
            for args in itertools.product(range(n), repeat=o.arity):
                if f[A.apply(o.name, *args)] != B.apply(o.name, *(f[a] for a in args)):
                    ok = False
                    break
            if not ok:
                break
        if ok and A.is_ordered:
            ok = all(B.leq(0, f[a], f[b]) for a, b in A.order[0])
        if ok:
            out.append(f)
    return out


def brute_partition_congruences(A) -> int:
    """Congruences of a single-sorted algebra by testing every set partition."""
    n = A.size()

    def partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for p in partitions(rest):
            for i in range(len(p)):
                yield p[:i] + [[first] + p[i]] + p[i + 1:]
            yield [[first]] + p

    count = 0
    for p in partitions(list(range(n))):
        block = {x: i for i, b in enumerate(p) for x in b}
        ok = True
        for o in A.signature.ops:
            for args in itertools.product(range(n), repeat=o.arity):
                for k in range(o.arity):
                    for alt in p[block[args[k]]]:
                        args2 = args[:k] + (alt,) + args[k + 1:]
                        if block[A.apply(o.name, *args)] != block[A.apply(o.name, *args2)]:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        count += ok
    return count
