import itertools

import pytest
from hypothesis import given, strategies as st

from finalg.algebra import (
    AlgebraError,
    InvalidAlgebra,
    OpSymbol,
    OrderedQuotientError,
    Signature,
    SizeCapExceeded,
    automorphisms,
    canonical_form,
    closure,
    congruence_closure,
    diagonal,
    divides,
    enumerate_congruences,
    enumerate_morphisms,
    enumerate_quotients,
    enumerate_subalgebras,
    hom_theorem_factor,
    identity,
    image_factorization,
    is_homomorphism,
    is_split_surjection,
    isomorphic,
    kernel,
    product,
    quotient,
    restrict,
    subalgebra_generated,
    total_congruence,
    trivial_algebra,
    validate_algebra,
)
from finalg.catalog import c3, chain, discrete_poset, monoid, trivial_monoid, u1, z2, z3
from finalg.monads import MONOID_SIG, SET_SIG

from oracles import brute_morphisms, brute_partition_congruences

BIN = Signature(("M",), (OpSymbol("op", ("M", "M"), "M"),))


def hom(A, B, mapping):
    from finalg.algebra import Morphism, _coerce_maps

    return Morphism(A, B, _coerce_maps(mapping, A, B))


# -- validation ----------------------------------------------------------------


def test_z2_table_is_valid():
    A = z2()
    assert A.elements() == ("1", "g")
    assert A.name(None, A.apply("mul", 1, 1)) == "1"


def test_missing_entry_reports_totality_violation():
    with pytest.raises(InvalidAlgebra) as exc:
        validate_algebra(MONOID_SIG, {"carriers": ["1", "g"], "tables": {
            "mul": {("1", "1"): "1", ("1", "g"): "g", ("g", "1"): "g"}, "unit": {(): "1"}}})
    (v,) = exc.value.violations
    assert v.kind == "totality" and v.op == "mul" and v.witness == ("g", "g")


def test_monotonicity_violation_witness():
    raw = {"carriers": ["0", "1"], "order": [("0", "1")],
           "tables": {"op": {("0", "0"): "0", ("0", "1"): "1", ("1", "0"): "1", ("1", "1"): "0"}}}
    with pytest.raises(InvalidAlgebra) as exc:
        validate_algebra(BIN, raw)
    kinds = {(v.kind, v.witness) for v in exc.value.violations}
    assert ("monotonicity", (("0", "1"), ("1", "1"))) in kinds


def test_unknown_element_is_reported():
    with pytest.raises(InvalidAlgebra) as exc:
        validate_algebra(MONOID_SIG, {"carriers": ["1"], "tables": {"mul": {("1", "1"): "x"}, "unit": {(): "1"}}})
    assert exc.value.violations[0].kind == "unknown-element"


def test_empty_sort_rejected():
    with pytest.raises(AlgebraError):
        validate_algebra(SET_SIG, {"carriers": []})


def test_order_antisymmetry_violation():
    with pytest.raises(InvalidAlgebra):
        validate_algebra(SET_SIG, {"carriers": ["a", "b"], "order": [("a", "b"), ("b", "a")]})


def test_signature_invariants():
    with pytest.raises(AlgebraError):
        Signature(("M", "N"), (OpSymbol("m", ("M", "N"), "M"),), {"m"})
    with pytest.raises(AlgebraError):
        Signature(("M",), (OpSymbol("f", ("M",), "M"), OpSymbol("f", ("M",), "M")))


# -- homomorphisms -----------------------------------------------------------------


def test_identity_on_z2_is_homomorphism():
    assert is_homomorphism(identity(z2()), z2(), z2())


def test_c3_to_z2_homomorphism():
    assert is_homomorphism({"1": "1", "a": "g", "a2": "1"}, c3(), z2())


def test_c3_to_z2_non_homomorphism_witness():
    v = is_homomorphism({"1": "1", "a": "1", "a2": "g"}, c3(), z2())
    assert not v and v.witness == ("mul", ("a", "a"))


def test_homomorphism_sort_mismatch():
    with pytest.raises(AlgebraError):
        is_homomorphism({}, z2(), chain(2))


def test_morphisms_z2_z2():
    maps = {m.maps for m in enumerate_morphisms(z2(), z2())}
    assert maps == {((0, 1),), ((0, 0),)}


def test_morphisms_c3_u1():
    ms = [m.as_dict()["M"] for m in enumerate_morphisms(c3(), u1())]
    assert len(ms) == 2
    assert {"1": "1", "a": "1", "a2": "1"} in ms and {"1": "1", "a": "0", "a2": "0"} in ms


def test_monotone_maps_discrete_to_chain():
    assert len(enumerate_morphisms(discrete_poset(2), chain(2))) == 4
    assert len(enumerate_morphisms(chain(2), chain(2))) == 3


def test_morphisms_match_brute_force(monoids_leq3):
    for A in monoids_leq3:
        for B in monoids_leq3:
            got = sorted(m.maps[0] for m in enumerate_morphisms(A.algebra, B.algebra))
            assert got == sorted(brute_morphisms(A.algebra, B.algebra))


def test_morphism_size_cap():
    with pytest.raises(SizeCapExceeded):
        enumerate_morphisms(z2(), z2(), cap=1)


# -- products, subalgebras ----------------------------------------------------------


def test_product_z2_u1():
    P, p1, p2 = product(z2(), u1())
    assert P.size() == 4
    assert is_homomorphism(p1, P, z2()) and is_homomorphism(p2, P, u1())
    assert len(set(zip(p1.maps[0], p2.maps[0]))) == 4


def test_product_with_trivial_is_isomorphic():
    for A in (z2(), c3(), u1()):
        P, _, _ = product(A, trivial_monoid())
        assert isomorphic(P, A) is not None


def test_product_of_chains_is_diamond():
    P, p1, p2 = product(chain(2), chain(2))
    strict = P.strict_order_pairs(0)
    assert len(strict) == 5
    mid = [i for i in range(4) if sum(1 for a, b in strict if b == i) == 1]
    assert len(mid) == 2 and not P.leq(0, mid[0], mid[1]) and not P.leq(0, mid[1], mid[0])
    for i in range(4):
        for j in range(4):
            both = chain(2).leq(0, p1.maps[0][i], p1.maps[0][j]) and chain(2).leq(0, p2.maps[0][i], p2.maps[0][j])
            assert P.leq(0, i, j) == both


def test_subalgebra_generated_examples():
    assert subalgebra_generated(z2(), {"M": ["g"]}).source.size() == 2
    assert subalgebra_generated(c3(), ["a"]).source.size() == 3
    emb = subalgebra_generated(c3(), [])
    assert emb.source.elements() == ("1",)
    assert is_homomorphism(emb, emb.source, c3())


def test_subalgebra_of_ordered_is_order_reflecting():
    A = monoid(["1", "a", "b"], {("a", "a"): "a", ("a", "b"): "b", ("b", "a"): "b", ("b", "b"): "b"},
               order=[("b", "a"), ("a", "1")])
    emb = subalgebra_generated(A, ["b"])
    assert emb.is_injective() and emb.is_order_reflecting()
    assert emb.source.is_ordered


def test_enumerate_subalgebras_c3():
    sizes = sorted(e.source.size() for e in enumerate_subalgebras(c3()))
    assert sizes == [1, 2, 3]


def test_restrict_rejects_non_closed():
    with pytest.raises(AlgebraError):
        restrict(c3(), [{0, 1}])


# -- congruences and quotients ----------------------------------------------------------


def test_congruence_closure_examples():
    C = c3()
    assert congruence_closure(C, []).blocks == diagonal(C).blocks
    assert congruence_closure(C, [("1", "a2")]).classes() == [["1", "a2"], ["a"]]
    assert congruence_closure(C, [("1", "a")]).num_blocks() == 1


def test_congruence_counts():
    assert len(enumerate_congruences(z2())) == 2
    assert len(enumerate_congruences(c3())) == 4
    assert len(enumerate_congruences(trivial_monoid())) == 1
    assert isinstance(repr(enumerate_congruences(c3())[1]), str)


def test_congruences_match_partition_oracle(monoids_leq4):
    for A in monoids_leq4:
        assert len(enumerate_congruences(A.algebra)) == brute_partition_congruences(A.algebra)


def test_congruence_lattice_closed_under_join(monoids_leq3):
    for A in monoids_leq3:
        cs = enumerate_congruences(A.algebra)
        keys = {c.blocks for c in cs}
        assert diagonal(A.algebra).blocks in keys and total_congruence(A.algebra).blocks in keys
        for x, y in itertools.combinations(cs, 2):
            j = congruence_closure(A.algebra, x.pairs(), base=y)
            assert j.blocks in keys
            assert x.refines(j) and y.refines(j)


def test_congruence_cap():
    with pytest.raises(SizeCapExceeded):
        enumerate_congruences(c3(), cap=2)


def test_quotients_of_c3():
    C = c3()
    Z, e = quotient(C, congruence_closure(C, [("1", "a2")]))
    assert isomorphic(Z, z2()) is not None and e.is_surjective()
    U, e2 = quotient(C, congruence_closure(C, [("a", "a2")]))
    assert isomorphic(U, u1()) is not None
    D, _ = quotient(C, diagonal(C))
    assert isomorphic(D, C) is not None


def test_quotient_rejects_non_congruence():
    from finalg.algebra import Congruence

    with pytest.raises(AlgebraError):
        quotient(c3(), Congruence(c3(), ((0, 0, 1),)))


def test_ordered_quotient_antisymmetry_rejected():
    A = monoid(["1", "a", "b"], {("a", "a"): "a", ("a", "b"): "b", ("b", "a"): "b", ("b", "b"): "b"},
               order=[("b", "a"), ("a", "1")])
    theta = congruence_closure(A, [("1", "b")])
    assert theta.num_blocks() == 1  # here the collapse is total, so it is fine
    Q, _ = quotient(A, theta)
    assert Q.size() == 1
    from finalg.algebra import Congruence

    B = chain(3)
    with pytest.raises(OrderedQuotientError):
        quotient(B, Congruence(B, ((0, 1, 0),)))


def test_ordered_quotients_include_order_extensions():
    qs = enumerate_quotients(discrete_poset(2))
    ordered = [B for B, e in qs if B.size() == 2]
    assert len(ordered) == 3  # discrete and both chains
    assert len(enumerate_quotients(discrete_poset(2), all_orders=False)) == 2


def test_quotient_of_kernel_is_image(monoids_leq3):
    for A in monoids_leq3:
        for B in monoids_leq3:
            for f in enumerate_morphisms(A.algebra, B.algebra):
                Q, _ = quotient(A.algebra, congruence_closure(A.algebra, kernel(f).pairs()))
                e, m = image_factorization(f)
                assert isomorphic(Q, e.target) is not None


# -- factorisations ------------------------------------------------------------------


def test_image_factorization_examples():
    f = hom(c3(), z2(), {"1": "1", "a": "g", "a2": "1"})
    e, m = image_factorization(f)
    assert e.target.size() == 2 and m.is_injective() and m.is_surjective()
    inc = subalgebra_generated(z2(), [])
    e, m = image_factorization(inc)
    assert e.source.size() == e.target.size() == 1
    Z22, _, _ = product(z2(), z2())
    f = hom(c3(), Z22, {"1": "(1,1)", "a": "(g,1)", "a2": "(1,1)"})
    assert is_homomorphism(f, c3(), Z22)
    e, m = image_factorization(f)
    assert sorted(m.target.carriers[0][i] for i in m.maps[0]) == ["(1,1)", "(g,1)"]
    assert isomorphic(e.target, z2()) is not None


def test_factorization_property(monoids_leq3):
    for A in monoids_leq3:
        for B in monoids_leq3:
            for f in enumerate_morphisms(A.algebra, B.algebra):
                e, m = image_factorization(f)
                assert e.then(m).maps == f.maps
                assert e.is_surjective() and m.is_injective() and m.is_order_reflecting()


def test_hom_theorem_examples():
    C = c3()
    e = hom(C, z2(), {"1": "1", "a": "g", "a2": "1"})
    fp, w = hom_theorem_factor(e, e)
    assert w is None and fp.maps == ((0, 1),)
    f = hom(C, u1(), {"1": "1", "a": "0", "a2": "0"})
    fp, w = hom_theorem_factor(e, f)
    assert fp is None and w == ("1", "a2")
    e2 = hom(C, u1(), {"1": "1", "a": "0", "a2": "0"})
    fp, w = hom_theorem_factor(e2, e2)
    assert fp.maps == ((0, 1),)
    with pytest.raises(AlgebraError):
        hom_theorem_factor(subalgebra_generated(z2(), []), e)


def test_hom_theorem_unique_factor(monoids_leq3):
    for A in monoids_leq3:
        quots = enumerate_quotients(A.algebra)
        for B in monoids_leq3:
            for f in enumerate_morphisms(A.algebra, B.algebra):
                for Q, e in quots:
                    fp, w = hom_theorem_factor(e, f)
                    brute = [g for g in enumerate_morphisms(Q, B.algebra) if e.then(g).maps == f.maps]
                    assert (fp is not None) == bool(brute)
                    if fp is not None:
                        assert brute == [fp] or [g.maps for g in brute] == [fp.maps]


def test_split_surjection_examples():
    assert is_split_surjection(identity(z2())).maps == ((0, 1),)
    e = hom(c3(), z2(), {"1": "1", "a": "g", "a2": "1"})
    assert is_split_surjection(e) is None
    P, p1, _ = product(z2(), z2())
    m = is_split_surjection(p1)
    assert m is not None
    assert m.then(p1).maps == ((0, 1),)
    with pytest.raises(AlgebraError):
        is_split_surjection(subalgebra_generated(z2(), []))


def test_split_over_sets_always_exists():
    e = hom(c3(), z2(), {"1": "1", "a": "g", "a2": "1"})
    m = is_split_surjection(e, SET_SIG)
    assert m is not None and m.then(e).maps == ((0, 1),)


def test_sections_are_sections(monoids_leq3):
    for A in monoids_leq3:
        for Q, e in enumerate_quotients(A.algebra):
            m = is_split_surjection(e)
            if m is not None:
                assert m.then(e).maps == identity(Q).maps
                assert is_homomorphism(m, Q, A.algebra)


# -- isomorphism ------------------------------------------------------------------------


def test_isomorphism_examples():
    relabelled = monoid(["e", "h"], {("h", "h"): "e"})
    f = isomorphic(z2(), relabelled)
    assert f is not None and f.as_dict()["M"] == {"1": "e", "g": "h"}
    assert isomorphic(z2(), u1()) is None
    assert isomorphic(c3(), z3()) is None


def test_automorphisms():
    assert len(automorphisms(z3())) == 2
    assert len(automorphisms(c3())) == 1
    assert len(automorphisms(discrete_poset(3))) == 6


def test_divides():
    assert divides(z2(), c3()) is not None
    assert divides(z3(), c3()) is None


def test_trivial_algebra():
    T = trivial_algebra(MONOID_SIG)
    assert isomorphic(T, trivial_monoid()) is not None
    assert trivial_algebra(SET_SIG, ordered=True).is_ordered


_MONOIDS4 = None


def setup_module(module):
    from finalg.memo import enumerate_up_to
    from finalg.monads import monad

    module._MONOIDS4 = enumerate_up_to(monad("Set", "Word"), 4)


@given(st.data())
def test_canonical_form_is_relabelling_invariant(data):
    A = _MONOIDS4[data.draw(st.integers(0, len(_MONOIDS4) - 1))].algebra
    perm = data.draw(st.permutations(list(range(A.size()))))
    # a genuinely permuted copy: element i is placed at position perm[i]
    n = A.size()
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    names = [A.carriers[0][inv[k]] + "'" for k in range(n)]
    table = [perm[A.apply("mul", inv[a], inv[b])] for a in range(n) for b in range(n)]
    from finalg.algebra import FiniteAlgebra

    B = FiniteAlgebra(MONOID_SIG, [names], [table, (perm[A.apply("unit")],)])
    assert canonical_form(A) == canonical_form(B)
    f = isomorphic(A, B)
    assert f is not None and is_homomorphism(f, A, B)


def test_canonical_forms_distinguish_enumerated():
    keys = {canonical_form(A.algebra) for A in _MONOIDS4}
    assert len(keys) == len(_MONOIDS4)


def test_closure_multisorted():
    from finalg.catalog import wilke_first_letter

    W = wilke_first_letter()
    sets = closure(W, [set(), set()])
    assert sets[0] == {0} and sets[1] == {2}
