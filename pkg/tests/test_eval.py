import random

import pytest
from conftest import sentences, structures
from hypothesis import given
from hypothesis import strategies as st

from fmtbench.evaluate import BudgetExceeded, EvaluationError, Evaluator, find_model, models, naive_satisfies, satisfies
from fmtbench.logic import TAU_0, TAU_E, FormulaVocabularyError, conj, parse_formula
from fmtbench.logic.sentences import phi0, phi1
from fmtbench.randgen import random_formula
from fmtbench.structures import H0, H1, complete_ordering, cycle_graph, isomorphic


@given(structures(TAU_E, 1, 4), sentences(TAU_E, 6))
def test_evaluator_matches_naive_on_graph_vocabulary(a, f):
    assert satisfies(a, f) == naive_satisfies(a, f)


@given(structures(TAU_0, 1, 4), sentences(TAU_0, 5))
def test_evaluator_matches_naive_on_ordered_vocabulary(a, f):
    assert satisfies(a, f) == naive_satisfies(a, f)


@given(structures(TAU_E, 1, 4), st.integers(0, 2**32))
def test_evaluator_with_free_variables(a, seed):
    rng = random.Random(seed)
    f = random_formula(TAU_E, rng, 4, free=("x", "y"))
    env = {"x": rng.randint(1, a.size), "y": rng.randint(1, a.size)}
    assert satisfies(a, f, env) == naive_satisfies(a, f, env)


def test_simple_truths():
    assert models(H0, parse_formula("exists x. E(x,x)"))
    assert not models(H1, parse_formula("forall x. exists y. E(x,y)"))
    assert models(complete_ordering(4), conj(phi0(), phi1()))
    assert not models(complete_ordering(4).replace(S=[(1, 2)]), phi1())


def test_errors():
    with pytest.raises(EvaluationError):
        satisfies(H0, parse_formula("E(x,x)"))
    with pytest.raises(FormulaVocabularyError):
        satisfies(H0, parse_formula("exists x. Lt(x,x)"))


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        Evaluator(complete_ordering(8), budget=50).satisfies(phi0())
    ev = Evaluator(complete_ordering(8))
    assert ev.satisfies(phi0())
    assert ev.steps > 50


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_model_finder_recovers_orderings(n):
    found = find_model(conj(phi0(), phi1()), n, TAU_0)
    assert found is not None and isomorphic(found, complete_ordering(n))


def test_model_finder_unsat():
    f = parse_formula("(exists x. E(x,x)) & forall x. !E(x,x)")
    for n in range(1, 4):
        assert find_model(f, n, TAU_E) is None


@given(sentences(TAU_E, 4), st.integers(1, 3))
def test_model_finder_is_sound_and_complete(f, n):
    found = find_model(f, n, TAU_E)
    if found is not None:
        assert naive_satisfies(found, f)
    else:
        from fmtbench.structures import structures_of_size

        assert not any(naive_satisfies(a, f) for a in structures_of_size(TAU_E, n))


def test_model_finder_bounds():
    f = parse_formula("exists x. exists y. E(x,y)")
    assert find_model(f, 2, TAU_E, upper={"E": []}) is None
    m = find_model(f, 2, TAU_E, upper={"E": [(2, 1)]})
    assert m["E"] == {(2, 1)}
    m = find_model(parse_formula("forall x. forall y. !E(x,y) | E(y,x)"), 2, TAU_E, lower={"E": [(1, 2)]})
    assert {(1, 2), (2, 1)} <= m["E"]
    assert find_model(f, 2, TAU_E, fixed={"E": []}) is None
