"""Graph encoding of ordered structures and its graph-algorithmic decoder.

Every element a gets a companion a'.  The order becomes the bipartite edge set
{a', b} for a < b, each unary fact gets a fresh odd cycle through its element,
and each binary fact gets a fresh path with an ear whose length identifies the
symbol.  ``extract`` reads the structure back from any graph by searching for
those patterns, so it never looks at how the graph was produced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .evaluate import DEFAULT_BUDGET, Evaluator
from .logic.sentences import disjointness_conjuncts, phi0, phi1, phi1_tau
from .logic.formula import conj
from .logic.vocab import LT, TAU_0, TAU_E, Vocabulary
from .structures.core import FinStructure, StructureError, graph, validate_graph
from .structures.search import DistanceCache, chordless_cycles, find_cycle_through, find_path_with_ear

# helper relations of the extended structure: B marks elements, C companions,
# L joins each element to its companion
ELEMENT_CYCLE = "B"
COMPANION_CYCLE = "C"
LINK = "L"
_HELPERS = (ELEMENT_CYCLE, COMPANION_CYCLE, LINK)


class GadgetError(ValueError):
    pass


@dataclass(frozen=True)
class GadgetPlan:
    """Cycle lengths for unary symbols, ear lengths for binary ones, and the
    common path length.

    ``second`` lists the binary symbols whose gadget path ends at the
    companion of the second element rather than at the element itself.
    """

    vocab: Vocabulary
    cycles: tuple[tuple[str, int], ...]
    ears: tuple[tuple[str, int], ...]
    path: int
    second: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple(self.cycles))
        object.__setattr__(self, "ears", tuple(self.ears))
        object.__setattr__(self, "second", frozenset(self.second))
        cyc = [l for _, l in self.cycles]
        ear = [l for _, l in self.ears]
        if any(l % 2 == 0 or l < 5 for l in cyc):
            raise GadgetError("cycle lengths must be odd and at least 5")
        if any(l % 2 == 0 for l in ear):
            raise GadgetError("ear lengths must be odd")
        if len(set(cyc + ear)) != len(cyc) + len(ear):
            raise GadgetError("gadget lengths must be pairwise distinct")
        if cyc and ear and min(ear) <= max(cyc):
            raise GadgetError("every ear must be longer than every cycle")
        if cyc and self.path <= max(cyc):
            raise GadgetError("the path length must exceed every cycle length")
        names = [s for s, _ in self.cycles] + [s for s, _ in self.ears]
        if len(set(names)) != len(names):
            raise GadgetError("a symbol occurs twice in the plan")
        for h in _HELPERS:
            if h in self.vocab:
                raise GadgetError(f"vocabulary symbol {h} clashes with a helper relation")
        if LT not in self.vocab or self.vocab.arity(LT) != 2:
            raise GadgetError("the vocabulary needs the binary order symbol")
        expected = {s for s, a in self.vocab.symbols if s != LT}
        covered = set(names) - set(_HELPERS)
        if covered != expected:
            raise GadgetError(f"plan covers {sorted(covered)}, vocabulary needs {sorted(expected)}")
        for s, _ in self.cycles:
            if s not in _HELPERS and self.vocab.arity(s) != 1:
                raise GadgetError(f"{s} is not unary")
        for s, _ in self.ears:
            if s not in _HELPERS and self.vocab.arity(s) != 2:
                raise GadgetError(f"{s} is not binary")
        if not set(self.second) <= {s for s, _ in self.ears}:
            raise GadgetError("'second' names a symbol without an ear")

    def cycle_length(self, symbol: str) -> int:
        return dict(self.cycles)[symbol]

    def ear_length(self, symbol: str) -> int:
        return dict(self.ears)[symbol]

    def lengths(self) -> dict[str, int]:
        return dict(self.cycles + self.ears)

    def size_of(self, a: FinStructure) -> int:
        """Vertex count of the encoding of ``a`` without building it."""
        n = a.size
        total = 2 * n
        total += (self.cycle_length(ELEMENT_CYCLE) - 1) * n + (self.cycle_length(COMPANION_CYCLE) - 1) * n
        total += (self.path - 1 + self.ear_length(LINK)) * n
        for s, l in self.cycles:
            if s not in _HELPERS:
                total += (l - 1) * len(a[s])
        for s, l in self.ears:
            if s not in _HELPERS:
                total += (self.path - 1 + l) * len(a[s])
        return total


TAU0_PLAN = GadgetPlan(
    vocab=TAU_0,
    cycles=(("U_min", 5), ("U_max", 7), (ELEMENT_CYCLE, 9), (COMPANION_CYCLE, 11)),
    ears=(("S", 13), (LINK, 15)),
    path=17,
)


def pairs_plan(vocab: Vocabulary) -> GadgetPlan:
    """Deterministic plan for a vocabulary extending the ordered base vocabulary.

    Unary lengths run through the odd numbers from 5 (U_min, U_max, the two
    helper cycles, then added unary symbols in vocabulary order); ear lengths
    continue the sequence (S, the link, then added binary symbols); the path
    is two longer than the longest ear.
    """
    for name, arity in TAU_0.symbols:
        if name not in vocab or vocab.arity(name) != arity:
            raise GadgetError(f"vocabulary must contain {name}/{arity}")
    extra = [(s, a) for s, a in vocab.symbols if s not in TAU_0]
    if any(a > 2 for _, a in extra):
        raise GadgetError("only unary and binary symbols can be encoded")
    unary = ["U_min", "U_max", ELEMENT_CYCLE, COMPANION_CYCLE] + [s for s, a in extra if a == 1]
    binary = ["S", LINK] + [s for s, a in extra if a == 2]
    lengths = iter(range(5, 10**6, 2))
    cycles = tuple((s, next(lengths)) for s in unary)
    ears = tuple((s, next(lengths)) for s in binary)
    path = ears[-1][1] + 2
    return GadgetPlan(vocab, cycles, ears, path, frozenset(s for s, a in extra if a == 2))


# -- provenance ------------------------------------------------------------------


@dataclass(frozen=True)
class Role:
    kind: str  # basic | companion | cycle | path | ear
    symbol: str | None = None
    fact: tuple = ()

    def __str__(self):
        if self.kind in ("basic", "companion"):
            return f"{self.kind} {self.fact[0]}"
        facts = ",".join(map(str, self.fact))
        return f"{self.kind} {self.symbol} {facts}"

    @classmethod
    def parse(cls, text: str) -> "Role":
        parts = text.split()
        if parts[0] in ("basic", "companion"):
            return cls(parts[0], None, (int(parts[1]),))
        return cls(parts[0], parts[1], tuple(int(x) for x in parts[2].split(",")))


@dataclass(frozen=True)
class GadgetGraph:
    graph: FinStructure
    roles: dict  # vertex -> Role
    plan: GadgetPlan
    n: int  # number of encoded elements

    @property
    def size(self) -> int:
        return self.graph.size

    def companion(self, a: int) -> int:
        return a + self.n

    def gadget_vertices(self) -> dict[tuple, set]:
        """(kind, symbol, fact) -> vertices of that cycle or ear, anchors included."""
        out: dict[tuple, set] = {}
        for v, role in self.roles.items():
            if role.kind in ("cycle", "ear"):
                out.setdefault((role.kind, role.symbol, role.fact), set()).add(v)
        for (kind, symbol, fact), vs in out.items():
            if kind == "cycle":
                vs.add(_anchor(symbol, fact, self.n))
        return out


def _anchor(symbol, fact, n):
    if symbol == COMPANION_CYCLE:
        return fact[0] + n
    return fact[0]


def dump_roles(gg: GadgetGraph) -> str:
    return "".join(f"roles: {v} {gg.roles[v]}\n" for v in sorted(gg.roles))


def parse_roles(text: str) -> dict:
    roles = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if not line.startswith("roles:"):
            raise ValueError(f"bad roles line: {line!r}")
        v, rest = line[len("roles:"):].strip().split(None, 1)
        roles[int(v)] = Role.parse(rest)
    return roles


# -- encoding --------------------------------------------------------------------


def encode_precondition(vocab: Vocabulary):
    """The sentence an encodable structure has to satisfy."""
    if vocab == TAU_0:
        return conj(phi0(), phi1())
    if not vocab.pairs:
        return conj(phi0(), phi1())
    return conj([phi0(), phi1_tau(vocab)] + disjointness_conjuncts(vocab))


def encode(a: FinStructure, plan: GadgetPlan | None = None, check: bool = True,
           budget: int = DEFAULT_BUDGET) -> GadgetGraph:
    """Build the gadget graph of ``a``.

    Vertices: elements 1..n, companions n+1..2n, then gadget vertices in plan
    order (cycles, then paths with ears), facts in sorted order within a symbol.
    """
    if plan is None:
        plan = TAU0_PLAN if a.vocab == TAU_0 else pairs_plan(a.vocab)
    if plan.vocab != a.vocab:
        raise GadgetError("plan and structure use different vocabularies")
    if check and not Evaluator(a, budget).satisfies(encode_precondition(a.vocab)):
        raise GadgetError("structure is not a complete ordering with total, disjoint pairs")
    n = a.size
    edges: list[tuple[int, int]] = []
    roles: dict[int, Role] = {}
    for e in a.universe:
        roles[e] = Role("basic", None, (e,))
        roles[e + n] = Role("companion", None, (e,))
    for x, y in sorted(a[LT]):
        edges.append((x + n, y))
    counter = [2 * n]

    def new(role):
        counter[0] += 1
        roles[counter[0]] = role
        return counter[0]

    def facts(symbol):
        if symbol == ELEMENT_CYCLE:
            return [(e,) for e in a.universe]
        if symbol == COMPANION_CYCLE:
            return [(e,) for e in a.universe]
        if symbol == LINK:
            return [(e, e) for e in a.universe]
        return sorted(a[symbol])

    for symbol, length in plan.cycles:
        for fact in facts(symbol):
            anchor = _anchor(symbol, fact, n)
            role = Role("cycle", symbol, fact)
            ring = [anchor] + [new(role) for _ in range(length - 1)]
            edges += [(ring[i], ring[(i + 1) % length]) for i in range(length)]

    for symbol, ear_len in plan.ears:
        for fact in facts(symbol):
            x, y = fact
            if symbol == LINK or symbol in plan.second:
                target = y + n
            else:
                target = y
            path_role = Role("path", symbol, fact)
            inner = [new(path_role) for _ in range(plan.path - 1)]
            chain = [x] + inner + [target]
            edges += [(chain[i], chain[i + 1]) for i in range(plan.path)]
            ear_role = Role("ear", symbol, fact)
            ring = [new(ear_role) for _ in range(ear_len)]
            edges += [(ring[i], ring[(i + 1) % ear_len]) for i in range(ear_len)]
            edges.append((inner[-1], ring[0]))

    g = validate_graph(graph(counter[0], edges))
    return GadgetGraph(g, roles, plan, n)


# -- decoding --------------------------------------------------------------------


class _Finder:
    """Memoised pattern searches on one graph."""

    def __init__(self, g: FinStructure):
        self.g = g
        self.dist = DistanceCache(g)
        self._cycle: dict[tuple[int, int], bool] = {}
        self._path: dict[tuple, bool] = {}

    def on_cycle(self, v: int, r: int) -> bool:
        key = (v, r)
        hit = self._cycle.get(key)
        if hit is None:
            hit = self._cycle[key] = find_cycle_through(self.g, v, r, distances=self.dist) is not None
        return hit

    def path_with_ear(self, a: int, b: int, r: int, s: int) -> bool:
        key = (a, b, r, s)
        hit = self._path.get(key)
        if hit is None:
            hit = self._path[key] = self._ear_possible(b, s) and \
                find_path_with_ear(self.g, a, b, r, s, distances=self.dist) is not None
        return hit

    def _ear_possible(self, b: int, s: int) -> bool:
        # the penultimate path vertex needs a neighbour on an s-cycle
        adj = self.g.adjacency
        return any(self.on_cycle(w, s) for z in adj[b] for w in adj[z] if w != b)


def extract(g: FinStructure, plan: GadgetPlan = TAU0_PLAN) -> FinStructure | None:
    """Read a structure off an arbitrary graph using the patterns of ``plan``.

    Universe: pairs (a1, a2) with a1 on an element cycle, a2 on a companion
    cycle and a linking path with ear from a1 to a2, in lexicographic order.
    """
    if g.vocab != TAU_E:
        raise StructureError("extract expects a graph over the edge vocabulary")
    f = _Finder(g)
    verts = list(g.universe)
    b_len, c_len = plan.cycle_length(ELEMENT_CYCLE), plan.cycle_length(COMPANION_CYCLE)
    link = plan.ear_length(LINK)
    firsts = [v for v in verts if f.on_cycle(v, b_len)]
    seconds = [v for v in verts if f.on_cycle(v, c_len)]
    universe = sorted((a1, a2) for a1 in firsts for a2 in seconds
                      if f.path_with_ear(a1, a2, plan.path, link))
    if not universe:
        return None
    index = {p: i for i, p in enumerate(universe, 1)}
    adj = g.adjacency
    rels: dict[str, set] = {LT: set()}
    for p, i in index.items():
        for q, j in index.items():
            if q[0] in adj[p[1]]:
                rels[LT].add((i, j))
    for symbol, length in plan.cycles:
        if symbol in _HELPERS:
            continue
        rels[symbol] = {(i,) for p, i in index.items() if f.on_cycle(p[0], length)}
    for symbol, ear in plan.ears:
        if symbol in _HELPERS:
            continue
        which = 1 if symbol in plan.second else 0
        rels[symbol] = {
            (i, j)
            for p, i in index.items()
            for q, j in index.items()
            if p[0] != q[which] and f.path_with_ear(p[0], q[which], plan.path, ear)
        }
    return FinStructure.build(plan.vocab, len(universe), rels, labels=tuple(universe))


def decode(g: FinStructure) -> FinStructure | None:
    return extract(g, TAU0_PLAN)


# -- cycle taxonomy ----------------------------------------------------------------


CATEGORIES = ("F", "T", "ear", "mixed")


@dataclass
class TaxonomyReport:
    max_len: int
    counts: dict = field(default_factory=dict)  # (category, length) -> count
    cycles: list = field(default_factory=list)  # (category, vertex list)

    def lengths(self, category: str) -> set[int]:
        return {l for (c, l), k in self.counts.items() if c == category and k}

    def total(self, category: str) -> int:
        return sum(k for (c, _), k in self.counts.items() if c == category)

    def as_dict(self) -> dict:
        return {
            "max_len": self.max_len,
            "counts": {c: {str(l): k for (cc, l), k in sorted(self.counts.items()) if cc == c} for c in CATEGORIES},
        }

    def text(self) -> str:
        lines = [f"chordless cycles up to length {self.max_len}"]
        for c in CATEGORIES:
            per = {l: k for (cc, l), k in sorted(self.counts.items()) if cc == c}
            shown = ", ".join(f"{l}:{k}" for l, k in per.items()) or "none"
            lines.append(f"  {c:5s} {shown}")
        return "\n".join(lines)


def classify_cycle(gg: GadgetGraph, cycle, gadgets=None) -> str:
    gadgets = gadgets if gadgets is not None else gg.gadget_vertices()
    vs = set(cycle)
    if all(gg.roles[v].kind in ("basic", "companion") for v in vs):
        return "F"
    for (kind, _, _), members in gadgets.items():
        if vs == members:
            return "T" if kind == "cycle" else "ear"
    return "mixed"


def cycle_taxonomy(gg: GadgetGraph, max_len: int) -> TaxonomyReport:
    gadgets = gg.gadget_vertices()
    report = TaxonomyReport(max_len)
    for cyc in chordless_cycles(gg.graph, max_len):
        cat = classify_cycle(gg, cyc, gadgets)
        key = (cat, len(cyc))
        report.counts[key] = report.counts.get(key, 0) + 1
        report.cycles.append((cat, cyc))
    return report


def t_cycle_symbol_lengths(gg: GadgetGraph, report: TaxonomyReport) -> dict[str, set[int]]:
    """Lengths of the T-cycles found, per unary symbol."""
    gadgets = gg.gadget_vertices()
    out: dict[str, set[int]] = {}
    for cat, cyc in report.cycles:
        if cat != "T":
            continue
        for (kind, symbol, _), members in gadgets.items():
            if kind == "cycle" and members == set(cyc):
                out.setdefault(symbol, set()).add(len(cyc))
    return out


def write_gadget_graph(gg: GadgetGraph, path, name: str = "G") -> None:
    from .structures.fileio import write_structure

    path = Path(path)
    write_structure(gg.graph, path, name)
    path.with_suffix(path.suffix + ".roles").write_text(dump_roles(gg))
