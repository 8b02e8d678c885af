from hypothesis import given, settings, strategies as st

from finalg.catalog import identify
from finalg.equations import FreeVars
from finalg.memo import enumerate_up_to
from finalg.monads import monad
from finalg.separation import equivalent_up_to, finite_quotients, separate
from finalg.terms import Apply, PiPower, Var, eval_pi_term, parse_term

WORD = monad("Set", "Word")


def test_pi_power_is_not_its_successor():
    assert separate("x^pi", "x^pi x", WORD, 1) is None
    s = separate("x^pi", "x^pi x", WORD, 2)
    assert s is not None and identify(s.algebra.algebra) == "Z2"
    assert s.left != s.right
    alg = s.algebra.algebra
    assert eval_pi_term("x^pi", alg, s.assignment) == s.left
    assert eval_pi_term("x^pi x", alg, s.assignment) == s.right


def test_idempotence_of_pi_power_is_never_separated():
    assert equivalent_up_to("x^pi x^pi", "x^pi", WORD, 4)


def test_commutativity_needs_three_elements():
    assert separate("x y", "y x", WORD, 2) is None
    s = separate("x y", "y x", WORD, 3)
    assert s is not None and s.algebra.size() == 3


def test_conjugation_law_holds():
    assert equivalent_up_to("(x y)^pi x", "x (y x)^pi", WORD, 4)


def test_unit_separated_by_u1():
    s = separate("x^pi", "1", WORD, 2)
    assert identify(s.algebra.algebra) == "U1"


def test_explicit_variables_add_unused_generators():
    s = separate("x", "x", WORD, 2, vars=FreeVars.of("x y"))
    assert s is None


def test_ordered_monad_separation():
    s = separate("x", "x x", monad("Pos", "Word"), 2)
    assert s is not None and s.algebra.algebra.is_ordered


def test_finite_quotients_small():
    qs = finite_quotients(FreeVars.of("x"), WORD, 2)
    shown = sorted((identify(A.algebra), h["x"]) for A, h in qs)
    assert shown == sorted([("trivial", "1"), ("Z2", "a"), ("U1", "a")])


def test_finite_quotients_are_generated_and_distinct():
    from finalg.algebra import automorphisms, subalgebra_generated

    qs = finite_quotients(FreeVars.of("x y"), WORD, 3)
    for A, h in qs:
        assert subalgebra_generated(A.algebra, list(h.values())).source.size() == A.size()
    for i, (A, h) in enumerate(qs):
        for B, k in qs[i + 1:]:
            if B is A:
                for f in automorphisms(A.algebra):
                    assert {x: f(None, v) for x, v in h.items()} != k


_terms = st.recursive(
    st.sampled_from([Var("x"), Var("y")]),
    lambda sub: st.one_of(st.tuples(sub, sub).map(lambda p: Apply("mul", p)), sub.map(lambda t: PiPower(t, "mul"))),
    max_leaves=5,
)


@settings(max_examples=25)
@given(_terms, _terms)
def test_separation_is_monotone_in_the_bound(u, v):
    a = separate(u, v, WORD, 2, vars=FreeVars.of("x y"))
    b = separate(u, v, WORD, 3, vars=FreeVars.of("x y"))
    if a is not None:
        # the smallest witness does not change when the bound grows
        assert b is not None and b.algebra.algebra == a.algebra.algebra and b.assignment == a.assignment
    if b is None:
        assert a is None


@settings(max_examples=25)
@given(_terms, _terms)
def test_separation_agrees_with_exhaustive_evaluation(u, v):
    algs = enumerate_up_to(WORD, 3)
    expected = None
    for A in algs:
        for x in A.algebra.elements():
            for y in A.algebra.elements():
                h = {"x": x, "y": y}
                if eval_pi_term(u, A.algebra, h) != eval_pi_term(v, A.algebra, h):
                    expected = (A.algebra, h)
                    break
            if expected:
                break
        if expected:
            break
    got = separate(u, v, WORD, 3, vars=FreeVars.of("x y"))
    if expected is None:
        assert got is None
    else:
        assert got.algebra.algebra == expected[0] and got.assignment == expected[1]


def test_stage_compatibility():
    # terms separated by a quotient of a stage are separated by the stage itself
    from finalg.algebra import enumerate_quotients

    u, v = parse_term("x^pi"), parse_term("x^pi x")
    for A, h in finite_quotients(FreeVars.of("x"), WORD, 3):
        for B, e in enumerate_quotients(A.algebra):
            hb = {x: e(None, a) for x, a in h.items()}
            sep_b = eval_pi_term(u, B, hb) != eval_pi_term(v, B, hb)
            sep_a = eval_pi_term(u, A.algebra, h) != eval_pi_term(v, A.algebra, h)
            assert not sep_b or sep_a
