import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from fmtbench.logic import TAU_0, TAU_E, And, Exists, Forall, Implies, Not, Or, forall
from fmtbench.randgen import random_formula, random_graph, random_structure

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

DATA = Path(__file__).resolve().parent.parent / "data"

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def data_dir():
    return DATA


def structures(vocab=TAU_E, min_size=1, max_size=4):
    """Random structures driven by a hypothesis-drawn seed."""
    return st.builds(
        lambda n, seed, dens: random_structure(vocab, n, random.Random(seed), dens),
        st.integers(min_size, max_size),
        st.integers(0, 2**32),
        st.sampled_from([0.2, 0.4, 0.6]),
    )


def graphs(min_size=1, max_size=8):
    return st.builds(
        lambda n, seed, p: random_graph(n, random.Random(seed), p),
        st.integers(min_size, max_size),
        st.integers(0, 2**32),
        st.sampled_from([0.2, 0.35, 0.5]),
    )


def sentences(vocab=TAU_E, max_depth=5):
    return st.builds(
        lambda d, seed: random_formula(vocab, random.Random(seed), d),
        st.integers(1, max_depth),
        st.integers(0, 2**32),
    )


def quantifier_free(f):
    """Drop every quantifier, keeping the connective skeleton."""
    if isinstance(f, (Forall, Exists)):
        return quantifier_free(f.body)
    if isinstance(f, Not):
        return Not(quantifier_free(f.body))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(quantifier_free(p) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(quantifier_free(f.left), quantifier_free(f.right))
    return f


def random_universal(vocab, rng, width, depth=3):
    xs = tuple(f"v{i}" for i in range(1, width + 1))
    matrix = quantifier_free(random_formula(vocab, rng, depth, variables=xs, free=xs))
    return forall(xs, matrix)


def universal_sentences(vocab=TAU_E, max_width=2, depth=3):
    return st.builds(
        lambda w, seed: random_universal(vocab, random.Random(seed), w, depth),
        st.integers(1, max_width),
        st.integers(0, 2**32),
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


__all__ = ["structures", "graphs", "sentences", "TAU_0", "TAU_E", "ACCEPTANCE_LINES"]
