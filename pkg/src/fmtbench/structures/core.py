"""Finite relational structures over the universe {1, ..., n}."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from ..logic.vocab import LT, TAU_0, TAU_E, Vocabulary


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class FinStructure:
    """A structure with universe ``range(1, size + 1)``.

    ``rels`` holds one frozenset of tuples per vocabulary symbol, in
    vocabulary order.  ``labels`` optionally names the elements (e.g. the
    vertex pairs behind an interpreted structure); it does not take part in
    equality.
    """

    vocab: Vocabulary
    size: int
    rels: tuple[frozenset, ...]
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.size < 1:
            raise StructureError("universe must be nonempty")
        if len(self.rels) != len(self.vocab.symbols):
            raise StructureError("one relation per vocabulary symbol expected")
        rels = []
        for (name, arity), content in zip(self.vocab.symbols, self.rels):
            content = frozenset(tuple(t) for t in content)
            for t in content:
                if len(t) != arity:
                    raise StructureError(f"tuple {t} has wrong length for {name}/{arity}")
                for e in t:
                    if not (1 <= e <= self.size):
                        raise StructureError(f"element {e} of {name}{t} outside [1,{self.size}]")
            rels.append(content)
        object.__setattr__(self, "rels", tuple(rels))
        if self.labels is not None and len(self.labels) != self.size:
            raise StructureError("labels must name every element")

    @classmethod
    def build(cls, vocab: Vocabulary, size: int, relations: Mapping[str, Iterable] | None = None, labels=None):
        relations = dict(relations or {})
        unknown = set(relations) - set(vocab.names)
        if unknown:
            raise StructureError(f"symbols {sorted(unknown)} not in vocabulary")
        rels = []
        for name, arity in vocab.symbols:
            content = relations.get(name, ())
            rels.append(frozenset((t,) if arity == 1 and not isinstance(t, tuple) else tuple(t) for t in content))
        return cls(vocab, size, tuple(rels), labels)

    @property
    def universe(self) -> range:
        return range(1, self.size + 1)

    def __getitem__(self, name: str) -> frozenset:
        return self.rels[self.vocab.index(name)]

    @property
    def relations(self) -> dict[str, frozenset]:
        return dict(zip(self.vocab.names, self.rels))

    def replace(self, **relations) -> "FinStructure":
        rel = self.relations
        rel.update(relations)
        return FinStructure.build(self.vocab, self.size, rel, self.labels)

    @cached_property
    def out_neighbors(self) -> dict[str, list[frozenset]]:
        """For binary symbols: successor sets indexed by element (index 0 unused)."""
        out = {}
        for (name, arity), content in zip(self.vocab.symbols, self.rels):
            if arity != 2:
                continue
            succ = [set() for _ in range(self.size + 1)]
            for a, b in content:
                succ[a].add(b)
            out[name] = [frozenset(s) for s in succ]
        return out

    @cached_property
    def in_neighbors(self) -> dict[str, list[frozenset]]:
        out = {}
        for (name, arity), content in zip(self.vocab.symbols, self.rels):
            if arity != 2:
                continue
            pred = [set() for _ in range(self.size + 1)]
            for a, b in content:
                pred[b].add(a)
            out[name] = [frozenset(s) for s in pred]
        return out

    @cached_property
    def adjacency(self) -> list[frozenset]:
        """Neighbour sets of a graph (symbol E), index 0 unused."""
        return self.out_neighbors["E"]

    def num_edges(self) -> int:
        return len(self["E"]) // 2


# -- graphs --------------------------------------------------------------------


def graph(n: int, edges: Iterable[tuple[int, int]], symmetric: bool = True) -> FinStructure:
    tuples = set()
    for a, b in edges:
        tuples.add((a, b))
        if symmetric:
            tuples.add((b, a))
    return FinStructure(TAU_E, n, (frozenset(tuples),))


def is_graph(g: FinStructure) -> bool:
    if g.vocab.names != ("E",):
        return False
    e = g["E"]
    return all(a != b and (b, a) in e for a, b in e)


def validate_graph(g: FinStructure) -> FinStructure:
    if g.vocab.names != ("E",) or g.vocab.arity("E") != 2:
        raise StructureError("a graph is a structure over the single binary symbol E")
    for a, b in g["E"]:
        if a == b:
            raise StructureError(f"loop at vertex {a}")
        if (b, a) not in g["E"]:
            raise StructureError(f"edge ({a},{b}) is not symmetric")
    return g


def cycle_graph(n: int) -> FinStructure:
    return graph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete_graph(n: int) -> FinStructure:
    return graph(n, [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)])


# named small structures
H0 = FinStructure(TAU_E, 1, (frozenset({(1, 1)}),))  # a single loop
H1 = FinStructure(TAU_E, 2, (frozenset({(1, 2)}),))  # one directed edge


def figure_one_graph() -> tuple[FinStructure, int, int]:
    """The 11-vertex example of a length-6 path from a=1 to b=7 with a 4-ear.

    Vertices 1..7 form the path, 8..11 the ear; 8 is joined to 6.
    """
    edges = [(i, i + 1) for i in range(1, 7)]
    edges += [(8, 9), (9, 10), (10, 11), (11, 8), (6, 8)]
    return graph(11, edges), 1, 7


# -- orderings -----------------------------------------------------------------


def complete_ordering(n: int, vocab: Vocabulary = TAU_0) -> FinStructure:
    """The complete ordering of size n: natural order, min, max and successor."""
    rel = {
        LT: [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)],
        "U_min": [(1,)],
        "U_max": [(n,)],
        "S": [(a, a + 1) for a in range(1, n)],
    }
    return FinStructure.build(vocab, n, rel)


# -- substructures ---------------------------------------------------------------


def induced_substructure(a: FinStructure, subset: Iterable[int]) -> FinStructure:
    """Restrict to ``subset`` and relabel order-preservingly to [|subset|].

    The result's ``labels`` record the original elements.
    """
    elems = sorted(set(subset))
    if not elems:
        raise StructureError("induced substructure needs a nonempty subset")
    if elems[0] < 1 or elems[-1] > a.size:
        raise StructureError("subset not contained in the universe")
    index = {e: i for i, e in enumerate(elems, 1)}
    rels = []
    for content in a.rels:
        rels.append(frozenset(tuple(index[e] for e in t) for t in content if all(e in index for e in t)))
    orig = a.labels
    labels = tuple(orig[e - 1] for e in elems) if orig is not None else tuple(elems)
    return FinStructure(a.vocab, len(elems), tuple(rels), labels)


def is_lt_substructure(b: FinStructure, a: FinStructure, embedding: Mapping[int, int], order: str = LT) -> bool:
    """``b`` sits inside ``a`` via ``embedding`` with the order fully restricted."""
    if b.vocab != a.vocab:
        raise StructureError("vocabulary mismatch")
    if order not in a.vocab:
        raise StructureError(f"vocabulary lacks the order symbol {order}")
    emb = dict(embedding)
    if set(emb) != set(b.universe):
        raise StructureError("embedding must be defined on the whole universe of b")
    if len(set(emb.values())) != len(emb):
        raise StructureError("embedding is not injective")
    if not all(1 <= v <= a.size for v in emb.values()):
        raise StructureError("embedding leaves the universe of a")
    image = set(emb.values())
    for name, _ in a.vocab.symbols:
        mapped = {tuple(emb[e] for e in t) for t in b[name]}
        if name == order:
            restricted = {t for t in a[name] if all(e in image for e in t)}
            if mapped != restricted:
                return False
        elif not mapped <= a[name]:
            return False
    return True
