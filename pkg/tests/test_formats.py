import pytest
from hypothesis import given, strategies as st

from finalg.algebra import canonical_form
from finalg.catalog import c3, chain, identify, one_object_category, wilke_first_letter, z2
from finalg.equations import AlgebraVars, FreeVars, parse_statement
from finalg.formats import (
    FormatError,
    format_algebra,
    format_algebras,
    format_dfa,
    format_equations,
    parse_algebra,
    parse_algebras,
    parse_dfa,
    parse_equations,
    read_algebra,
    read_dfa,
    read_equations,
)
from finalg.memo import enumerate_up_to
from finalg.monads import Dfa, monad


def test_read_fixture_algebra(fixtures):
    doc = read_algebra(fixtures / "z2.alg")
    assert doc.algebra == z2()
    assert doc.monad.name == "Set:Word"


def test_missing_table_entry_is_located(fixtures):
    with pytest.raises(FormatError) as exc:
        read_algebra(fixtures / "bad_table.alg")
    assert exc.value.line >= 1
    assert str(exc.value).startswith(str(fixtures / "bad_table.alg") + ":")


def test_algebra_without_monad_declares_ops():
    text = """sorts: M
elements: 1 g
op mul(M,M)->M assoc product
op unit()->M unit
mul 1 1 = 1
mul 1 g = g
mul g 1 = g
mul g g = 1
unit = 1
"""
    doc = parse_algebra(text)
    assert doc.monad is None
    assert canonical_form(doc.algebra) == canonical_form(z2())


@pytest.mark.parametrize("text,line,col", [
    ("monad: Set:Word\nelements: 1 g\nmul g g\n", 3, 1),
    ("monad: Set:Word\nelements: 1\nmul 1 1 = 1\nunit = 1\nfrob\n", 5, 1),
    ("monad: Nope:Word\nelements: 1\n", 1, 8),
    ("monad: Set:Word\nelements: 1\nmul 1 1 = x\nunit = 1\n", 3, 11),
])
def test_algebra_errors_have_positions(text, line, col):
    with pytest.raises(FormatError) as exc:
        parse_algebra(text, "t.alg")
    assert (exc.value.line, exc.value.column) == (line, col), str(exc.value)


def test_multiple_algebras_per_file():
    text = format_algebras([z2(), c3()], monad("Set", "Word"))
    docs = parse_algebras(text)
    assert [d.algebra for d in docs] == [z2(), c3()]


def test_ordered_round_trip():
    for A in (chain(3), z2().with_order([{(0, 0), (1, 1)}])):
        text = format_algebra(A)
        assert "ordered" in text
        assert parse_algebra(text).algebra == A


def test_many_sorted_round_trip():
    for A in (one_object_category(c3()), wilke_first_letter()):
        assert parse_algebra(format_algebra(A)).algebra == A


def test_enumerated_monoids_round_trip(monoids_leq4):
    spec = monad("Set", "Word")
    for A in monoids_leq4:
        text = format_algebra(A.algebra, spec)
        doc = parse_algebra(text)
        assert doc.algebra == A.algebra and doc.monad is spec


def test_enumerated_ordered_monoids_round_trip():
    spec = monad("Pos", "Word")
    for A in enumerate_up_to(spec, 3):
        assert parse_algebra(format_algebra(A.algebra, spec)).algebra == A.algebra


# -- automata -------------------------------------------------------------------


def test_read_dfa_fixture(fixtures):
    d = read_dfa(fixtures / "aa_star.dfa")
    assert d.states == ("even", "odd") and d.accepts("aa") and not d.accepts("a")


def test_dfa_errors():
    with pytest.raises(FormatError) as exc:
        parse_dfa("states: q\nalphabet: a\ninit: q\ntrans: q a q\n")
    assert exc.value.line == 4
    with pytest.raises(FormatError):
        parse_dfa("states: q\nalphabet: a\ninit: q\n")  # missing transition
    with pytest.raises(FormatError) as exc:
        parse_dfa("states: q\nalphabet: a\ninit: q\nbogus: 1\n")
    assert exc.value.line == 4


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(0, n - 1), min_size=2 * n, max_size=2 * n), st.sets(st.integers(0, n - 1)))))
def test_dfa_round_trip(spec):
    n, targets, finals = spec
    states = [f"s{i}" for i in range(n)]
    trans = {(states[i], a): states[targets[2 * i + k]] for i in range(n) for k, a in enumerate("ab")}
    d = Dfa(states, ("a", "b"), trans, "s0", {states[i] for i in finals})
    assert parse_dfa(format_dfa(d)) == d


# -- equation files ------------------------------------------------------------------


def test_read_equation_fixture(fixtures):
    f = read_equations(fixtures / "groups.eq")
    assert f.monad.name == "Set:Word"
    assert [s.line for s in f.statements] == [2]


def test_varalg_resolves_files_and_names(fixtures):
    f = read_equations(fixtures / "translate.eq")
    assert isinstance(f.statements[0].statement.vars, AlgebraVars)
    assert f.statements[0].statement.vars.algebra == z2()
    assert isinstance(f.statements[2].statement.vars, FreeVars)
    g = parse_equations("varalg: C3\neq: a = a\n")
    assert identify(g.statements[0].statement.vars.algebra) == "C3"


def test_class_file(fixtures):
    f = read_equations(fixtures / "trivial_units.cls")
    assert f.presets == ["TrivialUnits"] and f.bound == 3


@pytest.mark.parametrize("text,line,col", [
    ("eq: x = x\n", 1, 1),
    ("vars: x\neq: x = (x\n", 2, 11),
    ("vars: x\neq: x = x\nmonad: Pos:Word\n", 3, 1),
    ("vars: x\nbound: three\n", 2, 8),
    ("varalg: nothing_here\n", 1, 9),
    ("vars: x\n  eq: x y\n", 2, 6),
])
def test_equation_file_errors(text, line, col):
    with pytest.raises(FormatError) as exc:
        parse_equations(text, "t.eq")
    assert (exc.value.line, exc.value.column) == (line, col), str(exc.value)


def test_format_equations_round_trip():
    X, XY = FreeVars.of("x"), FreeVars.of("x y")
    stmts = [parse_statement("eq: x^pi x = x^pi", X), parse_statement("ineq: x y <= y", XY),
             parse_statement("impl: x y = 1 => x = 1", XY)]
    text = format_equations(stmts, monad("Pos", "Word"))
    f = parse_equations(text)
    assert f.monad.name == "Pos:Word"
    assert [s.statement for s in f.statements] == stmts
