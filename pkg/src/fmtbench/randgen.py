"""Seeded random structures and formulas for oracle comparisons."""

from __future__ import annotations

import random
from itertools import product

from .logic.formula import And, Eq, Exists, Forall, Implies, Not, Or, Rel
from .structures.core import FinStructure, graph


def random_structure(vocab, n: int, rng: random.Random, density: float = 0.4) -> FinStructure:
    rels = {}
    for name, arity in vocab.symbols:
        rels[name] = [t for t in product(range(1, n + 1), repeat=arity) if rng.random() < density]
    return FinStructure.build(vocab, n, rels)


def random_graph(n: int, rng: random.Random, p: float = 0.3) -> FinStructure:
    edges = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if rng.random() < p]
    return graph(n, edges)


def random_formula(vocab, rng: random.Random, depth: int, variables=("x", "y", "z"), free=()):
    """A formula of nesting depth at most ``depth`` whose free variables lie in ``free``."""
    return _gen(vocab, rng, depth, list(variables), list(free))


def _atom(vocab, rng, bound):
    if not bound:
        v = "x"
        return Eq(v, v), [v]
    if rng.random() < 0.2:
        return Eq(rng.choice(bound), rng.choice(bound)), None
    name, arity = rng.choice(vocab.symbols)
    return Rel(name, tuple(rng.choice(bound) for _ in range(arity))), None


def _gen(vocab, rng, depth, variables, bound):
    if depth <= 1 or (bound and rng.random() < 0.15):
        if not bound:
            v = rng.choice(variables)
            q = Forall if rng.random() < 0.5 else Exists
            name, arity = rng.choice(vocab.symbols)
            return q(v, Rel(name, (v,) * arity))
        return _atom(vocab, rng, bound)[0]
    r = rng.random()
    if not bound or r < 0.3:
        v = rng.choice(variables)
        q = Forall if rng.random() < 0.5 else Exists
        return q(v, _gen(vocab, rng, depth - 1, variables, sorted(set(bound) | {v})))
    if r < 0.45:
        return Not(_gen(vocab, rng, depth - 1, variables, bound))
    if r < 0.85:
        kind = And if rng.random() < 0.5 else Or
        k = rng.choice((2, 2, 3))
        return kind(tuple(_gen(vocab, rng, depth - 1, variables, bound) for _ in range(k)))
    return Implies(_gen(vocab, rng, depth - 1, variables, bound), _gen(vocab, rng, depth - 1, variables, bound))
