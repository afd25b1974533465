"""Exhaustive enumeration of labeled structures.

Order: sizes ascending; within a size, the first vocabulary symbol varies
slowest; the contents of one symbol run through subsets of its tuple space
by cardinality and, within a cardinality, lexicographically (as sorted tuple
lists over lexicographically ordered tuples).
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Callable, Iterator

from .core import FinStructure


def tuple_space(n: int, arity: int) -> list[tuple[int, ...]]:
    return list(product(range(1, n + 1), repeat=arity))


def relation_contents(n: int, arity: int) -> Iterator[frozenset]:
    space = tuple_space(n, arity)
    for k in range(len(space) + 1):
        for combo in combinations(space, k):
            yield frozenset(combo)


def structures_of_size(vocab, n: int) -> Iterator[FinStructure]:
    pools = [list(relation_contents(n, arity)) for _, arity in vocab.symbols]
    for rels in product(*pools):
        yield FinStructure(vocab, n, rels)


def count_structures(vocab, n: int) -> int:
    return 2 ** sum(n**arity for _, arity in vocab.symbols)


def enumerate_structures(vocab, max_size: int, predicate=None, min_size: int = 1) -> Iterator[FinStructure]:
    """Yield structures with universe [l], min_size <= l <= max_size, passing ``predicate``.

    ``predicate`` is a sentence (kept when true), a callable, or None.
    """
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    test: Callable[[FinStructure], bool] | None
    if predicate is None:
        test = None
    elif callable(predicate):
        test = predicate
    else:
        from ..evaluate import models

        test = lambda a: models(a, predicate)  # noqa: E731
    for n in range(min_size, max_size + 1):
        for a in structures_of_size(vocab, n):
            if test is None or test(a):
                yield a
