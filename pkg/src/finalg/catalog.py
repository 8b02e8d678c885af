"""Small named algebras used throughout examples and tests."""
from __future__ import annotations

from .algebra import FiniteAlgebra, isomorphic, validate_algebra
from .monads import CATEGORY_SIG, MONOID_SIG, SET_SIG, WILKE_SIG, GRAPH_SIG


def monoid(elements: list[str], products: dict[tuple[str, str], str], order=None) -> FiniteAlgebra:
    """Monoid whose first element is the unit; ``products`` lists the
    non-unit products ``(x, y) -> xy``."""
    unit = elements[0]
    table = {}
    for x in elements:
        table[(unit, x)] = x
        table[(x, unit)] = x
    table.update(products)
    return validate_algebra(MONOID_SIG, {"carriers": elements, "tables": {"mul": table, "unit": {(): unit}},
                                         "order": order})


def trivial_monoid() -> FiniteAlgebra:
    return monoid(["1"], {})


def z2() -> FiniteAlgebra:
    return monoid(["1", "g"], {("g", "g"): "1"})


def u1() -> FiniteAlgebra:
    return monoid(["1", "0"], {("0", "0"): "0"})


def c3() -> FiniteAlgebra:
    """``{1, a, a2}`` with ``a^3 = a``: the group Z2 = {a, a2} with an identity adjoined."""
    return monoid(["1", "a", "a2"], {("a", "a"): "a2", ("a", "a2"): "a", ("a2", "a"): "a",
                                     ("a2", "a2"): "a2"})


def z3() -> FiniteAlgebra:
    return monoid(["1", "b", "b2"], {("b", "b"): "b2", ("b", "b2"): "1", ("b2", "b"): "1",
                                     ("b2", "b2"): "b"})


NAMED_MONOIDS = {"trivial": trivial_monoid, "Z2": z2, "U1": u1, "C3": c3, "Z3": z3}


def identify(alg: FiniteAlgebra) -> str | None:
    """Name of a catalogued monoid isomorphic to ``alg`` (unordered)."""
    if alg.signature != MONOID_SIG or alg.is_ordered:
        return None
    for name, make in NAMED_MONOIDS.items():
        if isomorphic(alg, make()) is not None:
            return name
    return None


def chain(n: int = 2) -> FiniteAlgebra:
    """Poset ``0 < 1 < ... < n-1`` over the empty signature."""
    names = [str(i) for i in range(n)]
    return validate_algebra(SET_SIG, {"carriers": names, "order": [(names[i], names[i + 1]) for i in range(n - 1)]})


def discrete_poset(n: int = 2) -> FiniteAlgebra:
    return validate_algebra(SET_SIG, {"carriers": [str(i) for i in range(n)], "order": []})


def one_object_category(m: FiniteAlgebra, obj: str = "*") -> FiniteAlgebra:
    """The monoid ``m`` viewed as a category with a single object."""
    els = m.elements()
    unit = m.name(None, m.apply("unit"))
    comp = {(x, y): m.name(None, m.apply("mul", m.index(None, x), m.index(None, y))) for x in els for y in els}
    return validate_algebra(CATEGORY_SIG, {
        "carriers": {"Ob": [obj], "Mor": list(els)},
        "tables": {"s": {(x,): obj for x in els}, "t": {(x,): obj for x in els},
                   "id": {(obj,): unit}, "comp": comp},
    })


def loop_graph(node: str = "n", edge: str = "e") -> FiniteAlgebra:
    """The graph with one node and one loop."""
    return validate_algebra(GRAPH_SIG, {"carriers": {"Ob": [node], "Mor": [edge]},
                                        "tables": {"s": {(edge,): node}, "t": {(edge,): node}}})


def wilke_infinitely_many_b() -> FiniteAlgebra:
    """Finite part ``{1, b}`` (has a ``b`` or not), omega part ``{fin, inf}``."""
    plus = ["1", "b"]
    return validate_algebra(WILKE_SIG, {
        "carriers": {"plus": plus, "omega": ["fin", "inf"]},
        "tables": {
            "mul": {("1", "1"): "1", ("1", "b"): "b", ("b", "1"): "b", ("b", "b"): "b"},
            "unit": {(): "1"},
            "mix": {(s, t): t for s in plus for t in ("fin", "inf")},
            "pow": {("1",): "fin", ("b",): "inf"},
        },
    })


def wilke_first_letter(planted_error: bool = False) -> FiniteAlgebra:
    """Remembers the first letter of a word over ``{a, b}``.

    With ``planted_error`` the omega-power of ``b`` is set to ``A``, which
    breaks ``mix(s, pow(t s)) = pow(s t)`` at ``s = b, t = 1``.
    """
    plus = ["1", "a", "b"]
    mul = {}
    for x in plus:
        for y in plus:
            mul[(x, y)] = y if x == "1" else x
    mix = {}
    for s in plus:
        for w in ("A", "B", "E"):
            mix[(s, w)] = w if s == "1" else s.upper()
    return validate_algebra(WILKE_SIG, {
        "carriers": {"plus": plus, "omega": ["A", "B", "E"]},
        "tables": {"mul": mul, "unit": {(): "1"}, "mix": mix,
                   "pow": {("1",): "E", ("a",): "A", ("b",): "A" if planted_error else "B"}},
    })
