import pytest
from hypothesis import given

from sepfol.errors import ArityConflict, ParseError
from sepfol.syntax import (
    And, Atom, Eq, Exists, Forall, Iff, Implies, Not, Or, Var, P, TOP, BOT,
)
from sepfol.tptp import parse_formula, parse_tptp, print_problem, print_tptp

from strategies import formulas


def test_parse_example():
    prob = parse_tptp("fof(a, axiom, ![X]: ?[Y]: (p(X) <=> q(Y))).")
    assert prob.formulas == (("a", "axiom", Forall("x", Exists("y", Iff(P("p", "x"), P("q", "y"))))),)
    assert prob.signature.predicates == {"p": 1, "q": 1}


def test_parse_equality():
    phi = parse_tptp("fof(a, axiom, ![X]: ?[Y]: X = Y).").first_axiom()[1]
    assert phi == Forall("x", Exists("y", Eq(Var("x"), Var("y"))))


def test_parse_disequality():
    assert parse_formula("X != Y") == Not(Eq(Var("x"), Var("y")))


def test_truth_constants():
    assert parse_formula("$true & $false") == And(TOP, BOT)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_tptp("fof(a, axiom, p(X,Y")
    assert info.value.line == 1


def test_parse_error_multiline():
    with pytest.raises(ParseError) as info:
        parse_tptp("fof(a, axiom, p(X)).\nfof(b, axiom, & q).")
    assert info.value.line == 2


def test_duplicate_label():
    with pytest.raises(ParseError):
        parse_tptp("fof(a, axiom, p). fof(a, axiom, q).")


def test_arity_conflict():
    with pytest.raises(ArityConflict):
        parse_tptp("fof(a, axiom, p(X) & p(X,X)).")


def test_precedence():
    assert parse_formula("p & q | r") == Or(And(Atom("p"), Atom("q")), Atom("r"))
    assert parse_formula("p => q => r") == Implies(Atom("p"), Implies(Atom("q"), Atom("r")))
    assert parse_formula("p <=> q => r") == Iff(Atom("p"), Implies(Atom("q"), Atom("r")))
    assert parse_formula("~ p & q") == And(Not(Atom("p")), Atom("q"))


def test_comments():
    prob = parse_tptp("% header\nfof(a, axiom, p). % trailing\n")
    assert prob.first_axiom() == ("a", Atom("p"))


def test_conjecture_role():
    prob = parse_tptp("fof(c, conjecture, p).")
    assert prob.formulas[0][1] == "conjecture"
    assert prob.first_axiom() is None


def test_print_example():
    phi = parse_formula("![X]: ?[Y]: (p(X) <=> q(Y))")
    assert print_tptp(phi) == "![X]: ?[Y]: (p(X) <=> q(Y))"


def test_print_problem():
    assert print_problem([("a", Atom("p"))]) == "fof(a, axiom, p).\n"


@given(formulas(with_functions=True))
def test_round_trip(phi):
    text = print_tptp(phi)
    assert parse_formula(text) == phi
    assert print_tptp(parse_formula(text)) == text
