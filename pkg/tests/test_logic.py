import random

import pytest
from conftest import quantifier_free, sentences, structures
from hypothesis import given
from hypothesis import strategies as st

from fmtbench.evaluate import naive_satisfies
from fmtbench.logic import (
    TAU_0,
    TAU_E,
    And,
    Eq,
    Exists,
    Forall,
    FormulaSyntaxError,
    FormulaVocabularyError,
    Not,
    Polarity,
    Rel,
    SyntacticClass,
    Vocabulary,
    VocabularyError,
    builtin_sentence,
    classify,
    conj,
    disj,
    dump_vocabulary,
    formula_size,
    free_vars,
    is_universal,
    nnf,
    parse_formula,
    parse_vocabulary,
    polarity,
    prenex_universal,
    render_formula,
    substitute,
)
from fmtbench.logic.sentences import cycle_through, path_with_ear, phi0, phi1, phi_c
from fmtbench.randgen import random_formula


@given(sentences(TAU_E, 6))
def test_render_parse_round_trip(f):
    assert parse_formula(render_formula(f), TAU_E) == f


@given(sentences(TAU_0, 5))
def test_render_parse_round_trip_ordered(f):
    assert parse_formula(render_formula(f), TAU_0) == f


@given(sentences(TAU_E, 5), sentences(TAU_E, 5))
def test_size_is_additive(f, g):
    assert formula_size(And((f, g))) == formula_size(f) + formula_size(g) + 1
    assert formula_size(Not(f)) == formula_size(f) + 1


def test_size_of_atoms():
    assert formula_size(parse_formula("E(x,y)")) == 3
    assert formula_size(parse_formula("x = y")) == 3
    assert formula_size(parse_formula("forall x. !E(x,x)")) == 5


@given(sentences(TAU_E, 5), structures(TAU_E, 1, 3))
def test_nnf_preserves_truth(f, a):
    assert naive_satisfies(a, nnf(f)) == naive_satisfies(a, f)


@given(st.integers(0, 2**32), structures(TAU_E, 1, 3))
def test_prenex_universal_preserves_truth(seed, a):
    rng = random.Random(seed)
    # conjunctions and disjunctions of universal pieces
    parts = []
    for _ in range(rng.randint(1, 3)):
        body = random_formula(TAU_E, rng, 3, variables=("x", "y"), free=("x", "y"))
        parts.append(Forall("x", Forall("y", quantifier_free(body))))
    f = conj(parts) if rng.random() < 0.5 else disj(parts)
    variables, matrix = prenex_universal(f)
    g = matrix
    for v in reversed(variables):
        g = Forall(v, g)
    assert naive_satisfies(a, g) == naive_satisfies(a, f)


def test_prenex_or_renames_apart():
    f = parse_formula("(forall x. E(x,x)) | (forall x. !E(x,x))")
    variables, _ = prenex_universal(f)
    assert variables == ("x1", "x2")
    g = parse_formula("(forall x. E(x,x)) & (forall x. !E(x,x))")
    assert prenex_universal(g)[0] == ("x1",)


@pytest.mark.parametrize(
    "text, cls",
    [
        ("E(x,x)", SyntacticClass.QUANTIFIER_FREE),
        ("forall x. forall y. (E(x,y) -> E(y,x))", SyntacticClass.UNIVERSAL),
        ("exists x. E(x,x)", SyntacticClass.EXISTENTIAL),
        ("!(forall x. E(x,x))", SyntacticClass.EXISTENTIAL),
        ("forall x. exists y. E(x,y)", SyntacticClass.PI2),
        ("exists x. forall y. E(x,y)", SyntacticClass.SIGMA2),
        ("forall x. exists y. forall z. E(x,z)", SyntacticClass.GENERAL),
        ("(exists x. E(x,x)) -> forall y. E(y,y)", SyntacticClass.UNIVERSAL),
    ],
)
def test_classify(text, cls):
    assert classify(parse_formula(text)) == cls


def test_named_sentences():
    assert is_universal(phi0())
    assert classify(phi1()) == SyntacticClass.GENERAL or classify(phi1()) == SyntacticClass.PI2
    assert is_universal(builtin_sentence("phi_DG"))
    assert is_universal(builtin_sentence("phi_Graph"))
    assert free_vars(phi_c(5)) == {"x", "z1", "z2", "z3", "z4", "z5"}
    assert free_vars(cycle_through(5)) == {"x"}
    assert free_vars(path_with_ear(7, 5)) == {"x", "y"}


def test_polarity():
    f = parse_formula("forall x. (E(x,x) -> !F(x))")
    assert polarity("E", f) == Polarity.NEGATIVE
    assert polarity("F", f) == Polarity.NEGATIVE
    assert polarity("G", f) == Polarity.ABSENT
    g = parse_formula("E(x,x) & !E(x,x)")
    assert polarity("E", g) == Polarity.MIXED


def test_substitution_avoids_capture():
    f = parse_formula("exists y. E(x,y)")
    g = substitute(f, {"x": "y"})
    assert free_vars(g) == {"y"}
    assert isinstance(g, Exists) and g.var != "y"


def test_parser_errors():
    with pytest.raises(FormulaSyntaxError):
        parse_formula("forall x E(x,x)")
    with pytest.raises(FormulaSyntaxError):
        parse_formula("E(x,")
    with pytest.raises(FormulaVocabularyError):
        parse_formula("F(x,x)", TAU_E)
    with pytest.raises(FormulaVocabularyError):
        parse_formula("E(x)", TAU_E)


def test_vocabulary_file_round_trip():
    v = TAU_0.with_pairs(["C0"], name="t")
    w = parse_vocabulary(dump_vocabulary(v))
    assert w == v
    assert w.complement("C0") == "C0_comp"


@pytest.mark.parametrize(
    "symbols, pairs",
    [
        ((("E", 2), ("E", 2)), ()),
        ((("E", 0),), ()),
        ((("E", 2), ("U", 1)), (("E", "U"),)),
        ((("E", 2),), (("E", "E"),)),
        ((("E", 2),), (("E", "F"),)),
    ],
)
def test_bad_vocabularies(symbols, pairs):
    with pytest.raises(VocabularyError):
        Vocabulary(symbols, pairs)


def test_equality_and_relation_atoms():
    assert parse_formula("x != y") == Not(Eq("x", "y"))
    assert parse_formula("Lt(x,y)", TAU_0) == Rel("Lt", ("x", "y"))
