"""Bounded separation of pi-terms by finite algebras.

Two pi-terms over the same variables are equal in the profinite completion
exactly when no finite quotient of the free algebra tells them apart.
:func:`separate` searches the finite algebras up to a size bound for such a
witness, smallest first.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import automorphisms, subalgebra_generated
from .equations import FreeVars, _var_sorts, Equation
from .memo import EnumerationMemo, enumerate_up_to
from .monads import MonadSpec, TAlgebra
from .terms import PiTerm, evaluate, eval_pi_term, parse_term, variables


@dataclass(frozen=True)
class Separation:
    algebra: TAlgebra
    assignment: dict[str, str]
    left: str
    right: str


def _as_term(t, spec: MonadSpec) -> PiTerm:
    if isinstance(t, str):
        sig = spec.signature
        return parse_term(t, sig.product or "mul", sig.sorts)
    return t


def _free_vars(u, v, X) -> FreeVars:
    if X is not None:
        return X
    names = []
    for t in (u, v):
        for name in variables(t):
            if name not in names:
                names.append(name)
    names.sort()
    if not names:
        names = ["x"]
    return FreeVars(tuple((n, None) for n in names))


def separate(u, v, spec: MonadSpec, n: int, *, vars: FreeVars | None = None,
             memo: EnumerationMemo | None = None, budget=None, jobs: int = 1) -> Separation | None:
    """Smallest algebra (then first in enumeration order, then first
    assignment) in which ``u`` and ``v`` evaluate differently, or ``None``.

    The witness is re-checked through :func:`eval_pi_term` before it is
    returned.
    """
    u, v = _as_term(u, spec), _as_term(v, spec)
    X = _free_vars(u, v, vars)
    probe = Equation(X, u, v)
    for A in enumerate_up_to(spec, n, memo=memo, budget=budget, jobs=jobs):
        alg = A.algebra
        sorts = _var_sorts(alg, probe)
        names = [name for name, _ in X.names]
        for values in itertools.product(*(range(alg.size(sorts[x])) for x in names)):
            h = dict(zip(names, values))
            a, b = evaluate(u, alg, h), evaluate(v, alg, h)
            if a != b:
                shown = {x: alg.name(sorts[x], h[x]) for x in names}
                left, right = eval_pi_term(u, alg, shown), eval_pi_term(v, alg, shown)
                if left == right:
                    raise AssertionError("separating witness failed the independent re-check")
                return Separation(A, shown, left, right)
    return None


def equivalent_up_to(u, v, spec: MonadSpec, n: int, **kw) -> bool:
    return separate(u, v, spec, n, **kw) is None


def finite_quotients(X: FreeVars, spec: MonadSpec, n: int, *, memo: EnumerationMemo | None = None,
                     budget=None, jobs: int = 1) -> list[tuple[TAlgebra, dict[str, str]]]:
    """Pairs ``(A, h)`` with ``|A| <= n`` and ``h`` a map from the variables
    into ``A`` whose image generates ``A``.

    Each stage is listed once up to isomorphism of pairs: assignments that
    differ by an automorphism of ``A`` are identified.
    """
    out = []
    for A in enumerate_up_to(spec, n, memo=memo, budget=budget, jobs=jobs):
        alg = A.algebra
        sig = alg.signature
        sorts = {}
        for name, sort in X.names:
            s = sort or (sig.op(sig.product).result if sig.product else sig.sorts[0])
            sorts[name] = s
        names = [name for name, _ in X.names]
        autos = automorphisms(alg)
        seen = set()
        for values in itertools.product(*(range(alg.size(sorts[x])) for x in names)):
            key = tuple(zip(names, values))
            if key in seen:
                continue
            for f in autos:
                seen.add(tuple((x, f.maps[sig.sort_index(sorts[x])][i]) for x, i in key))
            seed = {}
            for x, i in key:
                seed.setdefault(sorts[x], set()).add(alg.name(sorts[x], i))
            emb = subalgebra_generated(alg, seed)
            if emb.source.size() == alg.size():
                out.append((A, {x: alg.name(sorts[x], i) for x, i in key}))
    return out
