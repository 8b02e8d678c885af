import pytest

from finalg.algebra import AlgebraError
from finalg.catalog import c3, identify, trivial_monoid, u1, z2, z3
from finalg.equations import FreeVars, parse_statement
from finalg.memo import enumerate_up_to
from finalg.monads import monad
from finalg.pseudovariety import (
    CLOSURE_KINDS,
    PRESETS,
    Explicit,
    Preset,
    Presented,
    check_closure,
    class_spec,
    describe_presets,
    hsp_closure,
    members,
    membership,
    preset,
    reiterman_crosscheck,
)

from oracles import commutative, group_free, idempotent_monoid, is_group, j_trivial, trivial_units

ORACLES = {
    "Aperiodic": group_free,
    "Groups": is_group,
    "Commutative": commutative,
    "Idempotent": idempotent_monoid,
    "JTrivial": j_trivial,
    "TrivialUnits": trivial_units,
}


def names(algs):
    return sorted(identify(a.algebra) or "?" for a in algs)


def test_preset_registry():
    assert set(ORACLES) <= set(PRESETS)
    assert preset("TrivialUnits").spec.name == "MonBase:Id"
    with pytest.raises(AlgebraError):
        preset("Nope")
    assert any(line.startswith("Aperiodic [Set:Word]") for line in describe_presets())


@pytest.mark.parametrize("name", sorted(ORACLES))
def test_presets_against_oracles(name, monoids_leq4):
    oracle = ORACLES[name]
    for A in monoids_leq4:
        assert bool(membership(Preset(name), A)) == oracle(A.algebra), (name, A.algebra)


def test_membership_reports_statement_and_witness():
    m = membership(Preset("Aperiodic"), z2())
    assert not m and m.witness == {"x": "g"}
    assert m.statement == preset("Aperiodic").statements[0]


def test_members_small():
    assert names(members(Preset("Aperiodic"), 2)) == ["U1", "trivial"]
    assert names(members(Preset("Groups"), 2)) == ["Z2", "trivial"]
    assert names(members(Explicit((z2(), c3())), 2)) == ["Z2"]


def test_class_spec():
    assert class_spec(Preset("Negative")).name == "Pos:Word"
    assert class_spec(Explicit((z2(),))).name == "Set:Word"
    with pytest.raises(AlgebraError):
        class_spec(Explicit(()))


@pytest.mark.parametrize("name", ["Aperiodic", "Groups", "Commutative", "Idempotent", "JTrivial",
                                  "Negative", "Positive", "SquareBelow"])
def test_equational_presets_are_closed(name):
    report = check_closure(Preset(name), 3)
    assert report.passed, {k: r.counterexample for k, r in report.results.items()}
    assert all(report[k].checked > 0 for k in CLOSURE_KINDS)


def test_trivial_units_not_closed_under_quotients():
    report = check_closure(Preset("TrivialUnits"), 3)
    assert report["products"].passed and report["subalgebras"].passed
    assert report["split-quotients"].passed
    q = report["quotients"]
    assert not q.passed
    cex = q.counterexample
    assert identify(cex.sources[0]) == "C3" and identify(cex.result) == "Z2"
    assert cex.witness is not None


def test_discrete_posets_closed_only_under_split_quotients():
    report = check_closure(Preset("DiscretePosets"), 3)
    assert not report["quotients"].passed
    assert report["split-quotients"].passed
    assert report["products"].passed and report["subalgebras"].passed


def test_explicit_class_not_closed_under_subalgebras():
    report = check_closure(Explicit((z2(),)), 2, kinds=("subalgebras",))
    r = report["subalgebras"]
    assert not r.passed and identify(r.counterexample.result) == "trivial"
    assert list(report.results) == ["subalgebras"]


def test_unknown_kind():
    with pytest.raises(AlgebraError):
        check_closure(Preset("Groups"), 2, kinds=("coproducts",))


def test_hsp_closure_examples():
    assert names(hsp_closure([c3()], 3)) == ["C3", "U1", "Z2", "trivial"]
    assert names(hsp_closure([z2()], 3)) == ["Z2", "trivial"]
    assert names(hsp_closure([z3()], 3)) == ["Z3", "trivial"]
    assert hsp_closure([], 3) == []


def test_hsp_closure_is_closed():
    algs = hsp_closure([u1(), z2()], 4)
    again = hsp_closure(algs, 4)
    assert names(again) == names(algs)


@pytest.mark.parametrize("name", ["Aperiodic", "Groups", "Commutative"])
def test_reiterman_crosscheck(name):
    report = reiterman_crosscheck(Preset(name), 3)
    assert report.passed and not report.hsp_extra


def test_reiterman_with_raw_statements():
    E = [parse_statement("eq: x x = x", FreeVars.of("x"))]
    report = reiterman_crosscheck(E, 3)
    assert report.passed
    with pytest.raises(AlgebraError):
        reiterman_crosscheck([], 3)


def test_members_agree_with_enumeration():
    word = monad("Set", "Word")
    all3 = enumerate_up_to(word, 3)
    got = members(Presented(preset("Commutative").statements, word), 3)
    assert len(got) == sum(1 for A in all3 if commutative(A.algebra))
    assert members(Preset("TrivialUnits"), 1)[0].algebra == trivial_monoid()
