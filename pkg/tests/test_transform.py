import pytest
from hypothesis import given, settings

from sepfol.analysis import classify, prefix_blocks
from sepfol.errors import BudgetExceeded, SeparationError
from sepfol.oracle import oracle_equivalent
from sepfol.syntax import (
    And, Atom, Exists, Forall, Or, P, atoms, free_vars, rename_apart,
)
from sepfol.tptp import parse_formula, print_tptp
from sepfol.transform import (
    gen_blowup, matrix_to_nf, miniscope, normal_form, to_nnf, to_prenex, transpose_all,
    transpose_block,
)

from strategies import formulas, sf_sentences

EX = parse_formula("![X]: ?[Y]: (p(X) <=> q(Y))")


def lits(c):
    return {print_tptp(l) for l in c.literals()}


class TestNNF:
    def test_de_morgan(self):
        assert to_nnf(parse_formula("~ (p(X) & q(Y))")) == parse_formula("~ p(X) | ~ q(Y)")

    def test_iff(self):
        assert to_nnf(parse_formula("p(X) <=> q(Y)")) == parse_formula("(~ p(X) | q(Y)) & (p(X) | ~ q(Y))")

    def test_double_negation(self):
        assert to_nnf(parse_formula("~ ~ p(X)")) == P("p", "x")


class TestMiniscope:
    def test_exists_over_or(self):
        out = miniscope(parse_formula("?[X]: (p(X) | q(X))"))
        assert out == Or(Exists("x_1", P("p", "x_1")), Exists("x_2", P("q", "x_2")))

    def test_exists_past_conjunct(self):
        out = miniscope(parse_formula("?[X]: (p(X) & c)"))
        assert out == And(Exists("x", P("p", "x")), Atom("c"))

    def test_forall_over_and(self):
        out = miniscope(parse_formula("![X]: (p(X) & q(X))"))
        assert out == And(Forall("x_1", P("p", "x_1")), Forall("x_2", P("q", "x_2")))

    def test_vacuous(self):
        assert miniscope(parse_formula("![X]: c")) == Atom("c")


class TestPrenex:
    def test_exists_first(self):
        out = to_prenex(parse_formula("(?[Y]: q(Y)) & (![X]: p(X))"))
        assert out == Exists("y", Forall("x", And(P("q", "y"), P("p", "x"))))

    def test_unchanged(self):
        assert to_prenex(EX) == EX

    def test_forall_over_or(self):
        out = to_prenex(parse_formula("(![X]: p(X)) | (![U]: s(U))"))
        assert out == Forall("x", Forall("u", Or(P("p", "x"), P("s", "u"))))


class TestNormalForms:
    def test_dnf(self):
        nf = matrix_to_nf(parse_formula("p(X) <=> q(Y)"), ["x"], ["y"], kind="DNF")
        assert nf.count == 2
        got = {(tuple(map(print_tptp, c.chi)), tuple(map(print_tptp, c.eta))) for c in nf.constituents}
        assert got == {(("p(X)",), ("q(Y)",)), (("~ p(X)",), ("~ q(Y)",))}

    def test_cnf(self):
        nf = matrix_to_nf(parse_formula("p(X) <=> q(Y)"), ["x"], ["y"], kind="CNF")
        got = {(tuple(map(print_tptp, c.chi)), tuple(map(print_tptp, c.eta))) for c in nf.constituents}
        assert got == {(("~ p(X)",), ("q(Y)",)), (("p(X)",), ("~ q(Y)",))}

    def test_single(self):
        nf = matrix_to_nf(parse_formula("p(X) & q(Y)"), ["x"], ["y"], kind="DNF")
        assert nf.count == 1

    def test_params(self):
        nf = matrix_to_nf(parse_formula("(p(X) & r(Z)) | q(Y)"), ["x"], ["y"], ["z"], kind="DNF")
        assert nf.count == 2
        assert any(c.param for c in nf.constituents)

    def test_separation_error(self):
        with pytest.raises(SeparationError):
            matrix_to_nf(parse_formula("r(X,Y)"), ["x"], ["y"])

    def test_unpruned(self):
        nf = matrix_to_nf(parse_formula("p(X) <=> q(Y)"), ["x"], ["y"], kind="DNF")
        assert nf.unpruned_count >= nf.count

    def test_budget(self):
        phi = parse_formula(" & ".join(f"(a{i} | b{i})" for i in range(12)))
        with pytest.raises(BudgetExceeded):
            normal_form(phi, "DNF", node_cap=100)


class TestTranspose:
    def test_worked_example(self):
        out = transpose_block(EX)
        assert print_tptp(out) == "?[Y,Y_1]: ![X]: ((p(X) | ~ q(Y)) & (~ p(X) | q(Y_1)))"
        assert oracle_equivalent(EX, out, 3)

    def test_vacuous_forall(self):
        out = transpose_block(parse_formula("![X]: ?[Y]: q(Y)"))
        assert out == Exists("y", Forall("x", P("q", "y")))

    def test_single_group(self):
        phi = parse_formula("![X]: ?[Y]: (p(X) & q(Y))")
        out = transpose_block(phi)
        blocks, _ = prefix_blocks(out)
        assert blocks == [("exists", ("y",)), ("forall", ("x",))]
        assert oracle_equivalent(phi, out, 3)

    def test_parameters(self):
        phi = parse_formula("![X]: ?[Y]: (r(X,Z) | s(Y,Z))")
        out = transpose_block(phi)
        assert free_vars(out) == {"z"}
        assert oracle_equivalent(phi, out, 2)

    def test_separation_required(self):
        with pytest.raises(SeparationError):
            transpose_block(parse_formula("![X]: ?[Y]: r(X,Y)"))

    def test_all_matches_block(self):
        assert transpose_all(EX) == transpose_block(EX)

    def test_bsr_unchanged(self):
        phi = parse_formula("?[Z]: ![X]: (r(Z,X) | p(X))")
        assert transpose_all(phi) == phi

    def test_two_alternations(self):
        phi = parse_formula(
            "![X1]: ?[Y1]: ![X2]: ?[Y2]: ((q1(X1,X2) & r1(Y1,Y2)) | (q2(X1,X2) & r2(Y1,Y2)))")
        out = transpose_all(phi)
        assert "BSR" in classify(out)
        assert oracle_equivalent(phi, out, 2)

    def test_atom_variants(self):
        phi = parse_formula("![X]: ?[Y]: ((p(X) & r(Y,Y)) | (q(X) & ~ s(Y)))")
        out = transpose_block(phi)
        shapes = {(a.predicate, len(set(a.args))) for a in atoms(phi)}
        assert {(a.predicate, len(set(a.args))) for a in atoms(out)} <= shapes

    def test_node_cap(self):
        phi, _ = gen_blowup(3)
        with pytest.raises(BudgetExceeded):
            transpose_all(phi, node_cap=20)


class TestBlowup:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_existential_count(self, n):
        phi, prime = gen_blowup(n)
        blocks, _ = prefix_blocks(prime)
        assert blocks[0][0] == "exists" and len(blocks[0][1]) == 2 ** n
        assert len(blocks) == 2

    def test_equivalent(self):
        phi, prime = gen_blowup(1)
        assert oracle_equivalent(phi, prime, 3)

    def test_transpose_count(self):
        phi, _ = gen_blowup(2)
        blocks, _ = prefix_blocks(transpose_all(phi))
        assert len(blocks[0][1]) == 4

    def test_cap(self):
        with pytest.raises(BudgetExceeded):
            gen_blowup(13)


@settings(max_examples=60, deadline=None)
@given(formulas(max_leaves=6))
def test_nnf_equivalent(phi):
    out = to_nnf(phi)
    assert oracle_equivalent(phi, out, 2)


@settings(max_examples=60, deadline=None)
@given(formulas(max_leaves=6))
def test_miniscope_equivalent(phi):
    assert oracle_equivalent(phi, miniscope(phi), 2)


@settings(max_examples=60, deadline=None)
@given(formulas(max_leaves=6))
def test_prenex_equivalent(phi):
    out = to_prenex(rename_apart(phi))
    prefix_blocks(out)
    assert oracle_equivalent(phi, out, 2)


@settings(max_examples=40, deadline=None)
@given(sf_sentences())
def test_transpose_all_is_bsr_and_equivalent(phi):
    out = transpose_all(phi)
    lab = classify(out)
    assert "BSR" in lab
    assert oracle_equivalent(phi, out, 2)


@given(sf_sentences())
def test_normal_form_irredundant(phi):
    from sepfol.analysis import split_sf_prefix
    blocks, m = prefix_blocks(phi)
    zs, pairs = split_sf_prefix(blocks)
    xs = [v for p in pairs for v in p[0]]
    ys = [v for p in pairs for v in p[1]]
    for kind in ("DNF", "CNF"):
        nf = matrix_to_nf(m, xs, ys, zs, kind)
        sets = [frozenset(c.literals()) for c in nf.constituents]
        for i, a in enumerate(sets):
            for j, b in enumerate(sets):
                assert i == j or not a <= b
