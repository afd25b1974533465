"""Vectorised exhaustive checks over all structures of a fixed small size.

A structure on [n] is stored as one integer code per element (its unary bits
followed by its out-rows for every binary symbol), so the set of all
structures is an n-dimensional grid.  Anything that depends only on a few
elements is computed on the corresponding sub-grid and broadcast.

Two independent routes are provided: ``models_grid`` evaluates the matrix of
a universal sentence tuple by tuple (through truth tables built with the
naive evaluator on local structures), and ``forb_grid`` looks for forbidden
induced substructures among all small element subsets.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

import numpy as np

from .evaluate.naive import naive_satisfies
from .logic.analysis import prenex_universal
from .logic.formula import Formula
from .logic.vocab import Vocabulary
from .structures.core import FinStructure

DEFAULT_CAP = 2**26


class GridTooLarge(ValueError):
    pass


def local_tuples(vocab: Vocabulary, d: int) -> list[tuple[str, tuple[int, ...]]]:
    """Bit order of local codes: symbols in vocabulary order, tuples lexicographic."""
    return [(name, t) for name, arity in vocab.symbols for t in product(range(1, d + 1), repeat=arity)]


def local_code(a: FinStructure) -> int:
    code = 0
    for pos, (name, t) in enumerate(local_tuples(a.vocab, a.size)):
        if t in a[name]:
            code |= 1 << pos
    return code


def structure_from_code(vocab: Vocabulary, d: int, code: int) -> FinStructure:
    rels: dict[str, list] = {name: [] for name in vocab.names}
    for pos, (name, t) in enumerate(local_tuples(vocab, d)):
        if code >> pos & 1:
            rels[name].append(t)
    return FinStructure.build(vocab, d, rels)


def iso_closed_codes(members, vocab: Vocabulary) -> dict[int, np.ndarray]:
    """Per size d, a boolean table over local codes marking every structure
    isomorphic to a member."""
    tables: dict[int, np.ndarray] = {}
    for m in members:
        d = m.size
        if d not in tables:
            tables[d] = np.zeros(1 << len(local_tuples(vocab, d)), dtype=bool)
        for perm in permutations(range(1, d + 1)):
            pm = dict(zip(range(1, d + 1), perm))
            rels = {name: [tuple(pm[e] for e in t) for t in m[name]] for name in vocab.names}
            tables[d][local_code(FinStructure.build(vocab, d, rels))] = True
    return tables


class Grid:
    def __init__(self, vocab: Vocabulary, n: int, cap: int = DEFAULT_CAP):
        if any(a > 2 for _, a in vocab.symbols):
            raise ValueError("grid checks support unary and binary symbols only")
        self.vocab = vocab
        self.n = n
        self.unary = [s for s, a in vocab.symbols if a == 1]
        self.binary = [s for s, a in vocab.symbols if a == 2]
        self.width = len(self.unary) + len(self.binary) * n
        if (1 << (self.width * n)) > cap:
            raise GridTooLarge(f"{1 << (self.width * n)} structures exceed the cap {cap}")
        self.side = 1 << self.width
        self.shape = (self.side,) * n
        self._codes = []
        for i in range(n):
            shape = [1] * n
            shape[i] = self.side
            self._codes.append(np.arange(self.side, dtype=np.int64).reshape(shape))

    @property
    def count(self) -> int:
        return self.side ** self.n

    def _bitpos(self, name: str, t: tuple[int, ...]) -> tuple[int, int]:
        """(element whose code holds the bit, bit position)."""
        if len(t) == 1:
            return t[0], self.unary.index(name)
        return t[0], len(self.unary) + self.binary.index(name) * self.n + (t[1] - 1)

    def bit(self, name: str, t: tuple[int, ...]) -> np.ndarray:
        owner, pos = self._bitpos(name, t)
        return (self._codes[owner - 1] >> pos) & 1

    def induced_code(self, elems) -> np.ndarray:
        """Local code of the induced substructure on ``elems`` (sorted), over the sub-grid."""
        elems = sorted(elems)
        code = np.zeros((1,) * self.n, dtype=np.int64)
        for pos, (name, t) in enumerate(local_tuples(self.vocab, len(elems))):
            code = code + (self.bit(name, tuple(elems[i - 1] for i in t)) << pos)
        return code

    def structure_at(self, index) -> FinStructure:
        rels: dict[str, list] = {name: [] for name in self.vocab.names}
        for i, c in enumerate(index, 1):
            for name in self.unary:
                if c >> self._bitpos(name, (i,))[1] & 1:
                    rels[name].append((i,))
            for name in self.binary:
                for j in range(1, self.n + 1):
                    if c >> self._bitpos(name, (i, j))[1] & 1:
                        rels[name].append((i, j))
        return FinStructure.build(self.vocab, self.n, rels)

    def index_of(self, a: FinStructure) -> tuple[int, ...]:
        idx = [0] * self.n
        for name, content in a.relations.items():
            for t in content:
                owner, pos = self._bitpos(name, t)
                idx[owner - 1] |= 1 << pos
        return tuple(idx)


class _MatrixTables:
    """Truth of a quantifier-free matrix on local structures, per equality pattern."""

    def __init__(self, vocab, variables, matrix):
        self.vocab = vocab
        self.variables = variables
        self.matrix = matrix
        self._cache: dict[tuple, np.ndarray] = {}

    def table(self, pattern: tuple[int, ...]) -> np.ndarray:
        t = self._cache.get(pattern)
        if t is None:
            d = max(pattern) + 1
            size = 1 << len(local_tuples(self.vocab, d))
            env = {v: p + 1 for v, p in zip(self.variables, pattern)}
            t = np.fromiter(
                (naive_satisfies(structure_from_code(self.vocab, d, c), self.matrix, env) for c in range(size)),
                dtype=bool, count=size)
            self._cache[pattern] = t
        return t


def models_grid(grid: Grid, sentence: Formula, tables: _MatrixTables | None = None) -> np.ndarray:
    """Boolean array over the grid: which structures satisfy the universal sentence."""
    if tables is None:
        variables, matrix = prenex_universal(sentence)
        tables = _MatrixTables(grid.vocab, variables, matrix)
    k = len(tables.variables)
    if k == 0:
        value = naive_satisfies(grid.structure_at((0,) * grid.n), tables.matrix)
        return np.full(grid.shape, value, dtype=bool)
    out = np.ones(grid.shape, dtype=bool)
    by_set: dict[tuple, list] = {}
    for tup in product(range(1, grid.n + 1), repeat=k):
        elems = tuple(sorted(set(tup)))
        by_set.setdefault(elems, []).append(tuple(elems.index(e) for e in tup))
    for elems, patterns in by_set.items():
        code = grid.induced_code(elems)
        local = np.ones(code.shape, dtype=bool)
        for pattern in set(patterns):
            local &= tables.table(pattern)[code]
        out &= local
    return out


def forb_grid(grid: Grid, members, bad_tables=None) -> np.ndarray:
    """Boolean array over the grid: structures with no induced substructure
    isomorphic to a member."""
    tables = bad_tables if bad_tables is not None else iso_closed_codes(members, grid.vocab)
    hit = np.zeros(grid.shape, dtype=bool)
    for d, table in tables.items():
        if d > grid.n:
            continue
        for elems in combinations(range(1, grid.n + 1), d):
            hit |= table[grid.induced_code(elems)]
    return ~hit


def universal_sentence_tables(vocab, sentence):
    variables, matrix = prenex_universal(sentence)
    return _MatrixTables(vocab, variables, matrix)


def count_mismatches(a: np.ndarray, b: np.ndarray) -> int:
    return int(np.count_nonzero(a != b))


def first_mismatch(grid: Grid, a: np.ndarray, b: np.ndarray) -> FinStructure | None:
    idx = np.argwhere(a != b)
    if len(idx) == 0:
        return None
    return grid.structure_at(tuple(int(x) for x in idx[0]))
