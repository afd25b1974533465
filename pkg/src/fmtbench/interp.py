"""Width-2 interpretations of ordered structures in graphs.

An interpretation defines a universe of vertex pairs by a formula with free
variables x1, x2 and each relation by a formula over x1, x2 (and y1, y2 for
binary symbols).  ``translate`` rewrites a sentence about the interpreted
structure into one about the graph; ``apply_interp`` evaluates the defining
formulas directly; ``fast_apply`` gets the same structure via pattern search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .evaluate import DEFAULT_BUDGET, Evaluator
from .gadgets import COMPANION_CYCLE, ELEMENT_CYCLE, LINK, TAU0_PLAN, GadgetPlan, extract, pairs_plan
from .logic.analysis import SyntacticClass, classify, formula_size
from .logic.formula import (
    And,
    Eq,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    Or,
    Rel,
    conj,
    exists,
    free_vars,
    relation_symbols,
    substitute,
)
from .logic.sentences import cycle_vars, phi_c, phi_pe
from .logic.syntax import parse_formula, render_formula
from .logic.vocab import LT, TAU_0, TAU_E, Vocabulary, load_vocabulary
from .structures.core import FinStructure, StructureError

UNIV_VARS = ("x1", "x2")
PAIR_VARS = ("x1", "x2", "y1", "y2")


class InterpretationError(ValueError):
    pass


@dataclass(frozen=True)
class Interpretation:
    vocab: Vocabulary
    univ: Formula
    defs: dict  # symbol -> Formula
    plan: GadgetPlan | None = field(default=None, compare=False)
    name: str = "I"

    def __post_init__(self):
        if free_vars(self.univ) - set(UNIV_VARS):
            raise InterpretationError("the universe formula may only use x1, x2 freely")
        for name, arity in self.vocab.symbols:
            if name not in self.defs:
                raise InterpretationError(f"no defining formula for {name}")
            if arity > 2:
                raise InterpretationError("only unary and binary symbols can be interpreted")
            allowed = set(PAIR_VARS[: 2 * arity])
            if free_vars(self.defs[name]) - allowed:
                raise InterpretationError(f"defining formula of {name} has stray free variables")
        extra = set(self.defs) - set(self.vocab.names)
        if extra:
            raise InterpretationError(f"definitions for unknown symbols {sorted(extra)}")
        for f in self.formulas():
            for sym, ar in relation_symbols(f).items():
                if sym != "E" or ar != 2:
                    raise InterpretationError("defining formulas must be over the edge vocabulary")

    def formulas(self) -> list[Formula]:
        return [self.univ] + [self.defs[n] for n in self.vocab.names]


def _is_existential(f) -> bool:
    return classify(f) in (SyntacticClass.QUANTIFIER_FREE, SyntacticClass.EXISTENTIAL)


def check_strongly_existential(interp: Interpretation) -> bool:
    if LT not in interp.vocab:
        raise InterpretationError("the interpreted vocabulary has no order symbol")
    if not all(_is_existential(f) for f in interp.formulas()):
        return False
    return classify(interp.defs[LT]) == SyntacticClass.QUANTIFIER_FREE


# -- builtin interpretations ----------------------------------------------------------


def _cycle_def(length: int, var: str, prefix: str) -> Formula:
    zs = cycle_vars(length, prefix)
    return exists(zs, phi_c(length, var, zs))


def _path_def(path: int, ear: int, x: str, y: str, zp: str = "p", wp: str = "e") -> Formula:
    zs = [f"{zp}{i}" for i in range(path + 1)]
    ws = cycle_vars(ear, wp)
    return exists(zs + ws, phi_pe(path, ear, x, y, zs, ws))


def interpretation_from_plan(plan: GadgetPlan, name: str = "I") -> Interpretation:
    """The existential definitions matching the patterns of ``plan``."""
    b, c = plan.cycle_length(ELEMENT_CYCLE), plan.cycle_length(COMPANION_CYCLE)
    bs, cs = cycle_vars(b, "b"), cycle_vars(c, "c")
    ps = [f"p{i}" for i in range(plan.path + 1)]
    es = cycle_vars(plan.ear_length(LINK), "e")
    eta = conj(phi_c(b, "x1", bs), phi_c(c, "x2", cs), phi_pe(plan.path, len(es), "x1", "x2", ps, es))
    univ = exists(bs + cs + ps + es, eta)
    defs = {LT: Rel("E", ("x2", "y1"))}
    for sym, length in plan.cycles:
        if sym not in (ELEMENT_CYCLE, COMPANION_CYCLE):
            defs[sym] = _cycle_def(length, "x1", "z")
    for sym, length in plan.ears:
        if sym == LINK:
            continue
        target = "y2" if sym in plan.second else "y1"
        defs[sym] = _path_def(plan.path, length, "x1", target)
    return Interpretation(plan.vocab, univ, defs, plan, name)


TAU0_INTERP = interpretation_from_plan(TAU0_PLAN, "tau0")


def builtin_interp(kind) -> Interpretation:
    """``"tau0"`` or a paired vocabulary extending the ordered base vocabulary."""
    if isinstance(kind, str):
        if kind in ("tau0", "tau_0"):
            return TAU0_INTERP
        raise InterpretationError(f"unknown builtin interpretation {kind!r}")
    if isinstance(kind, Vocabulary):
        if kind == TAU_0:
            return TAU0_INTERP
        if not kind.pairs:
            raise InterpretationError("pairs interpretation needs a vocabulary with complement pairs")
        return interpretation_from_plan(pairs_plan(kind), f"pairs[{kind.name or 'tau'}]")
    raise InterpretationError(f"unknown builtin interpretation {kind!r}")


# -- translation ------------------------------------------------------------------------


def _split(v: str) -> tuple[str, str]:
    return v + "1", v + "2"


def _instantiate(f: Formula, names) -> Formula:
    return substitute(f, dict(zip(PAIR_VARS, names)))


def translate(phi: Formula, interp: Interpretation) -> Formula:
    """Rewrite ``phi`` (about the interpreted structure) into a graph formula.

    Each variable v becomes the pair v1, v2; quantifiers are relativised to
    the universe formula (guarded by implication for forall, conjunction for
    exists); equality is componentwise.
    """
    for name in relation_symbols(phi):
        if name not in interp.defs:
            raise InterpretationError(f"symbol {name} is not defined by the interpretation")
    return _tr(phi, interp)


def _tr(f, interp):
    if isinstance(f, Eq):
        (a1, a2), (b1, b2) = _split(f.left), _split(f.right)
        return And((Eq(a1, b1), Eq(a2, b2)))
    if isinstance(f, Rel):
        names = [w for v in f.args for w in _split(v)]
        return _instantiate(interp.defs[f.name], names)
    if isinstance(f, Not):
        return Not(_tr(f.body, interp))
    if isinstance(f, And):
        return And(tuple(_tr(p, interp) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(_tr(p, interp) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(_tr(f.left, interp), _tr(f.right, interp))
    if isinstance(f, (Forall, Exists)):
        v1, v2 = _split(f.var)
        guard = _instantiate(interp.univ, (v1, v2))
        body = _tr(f.body, interp)
        if isinstance(f, Forall):
            return Forall(v1, Forall(v2, Implies(guard, body)))
        return Exists(v1, Exists(v2, And((guard, body))))
    raise TypeError(f"not a formula: {f!r}")


def universe_empty_sentence(interp: Interpretation) -> Formula:
    """forall x1 x2. !univ(x1, x2)"""
    return Forall("x1", Forall("x2", Not(interp.univ)))


def measure_translation_constant(interp: Interpretation, corpus) -> Fraction:
    corpus = list(corpus)
    if not corpus:
        raise ValueError("corpus must be nonempty")
    return max(Fraction(formula_size(translate(phi, interp)), formula_size(phi)) for phi in corpus)


# -- applying an interpretation --------------------------------------------------------


def apply_interp(g: FinStructure, interp: Interpretation, budget: int = DEFAULT_BUDGET) -> FinStructure | None:
    """Evaluate the defining formulas on ``g``; elements are vertex pairs in
    lexicographic order (recorded as labels).  None if no pair qualifies."""
    if g.vocab != TAU_E:
        raise StructureError("interpretations apply to graphs")
    ev = Evaluator(g, budget)
    verts = list(g.universe)
    universe = [(a, b) for a in verts for b in verts if ev.satisfies(interp.univ, {"x1": a, "x2": b})]
    if not universe:
        return None
    rels = {}
    for name, arity in interp.vocab.symbols:
        f = interp.defs[name]
        if arity == 1:
            rels[name] = {(i,) for i, p in enumerate(universe, 1) if ev.satisfies(f, {"x1": p[0], "x2": p[1]})}
        else:
            rels[name] = {
                (i, j)
                for i, p in enumerate(universe, 1)
                for j, q in enumerate(universe, 1)
                if ev.satisfies(f, {"x1": p[0], "x2": p[1], "y1": q[0], "y2": q[1]})
            }
    return FinStructure.build(interp.vocab, len(universe), rels, labels=tuple(universe))


def fast_apply(g: FinStructure, interp: Interpretation) -> FinStructure | None:
    """Same result as ``apply_interp`` for builtin interpretations, by direct search."""
    if interp.plan is None:
        raise InterpretationError("fast_apply needs an interpretation built from a gadget plan")
    return extract(g, interp.plan)


def pair_embedding(sub: FinStructure, whole: FinStructure, vertex_map) -> dict[int, int]:
    """Element map from an interpreted subgraph structure into the interpreted
    whole, induced by a vertex map between the graphs."""
    index = {p: i for i, p in enumerate(whole.labels, 1)}
    out = {}
    for i, (a, b) in enumerate(sub.labels, 1):
        key = (vertex_map[a], vertex_map[b])
        if key not in index:
            raise KeyError(f"pair {key} is not an element of the larger structure")
        out[i] = index[key]
    return out


# -- serialization ----------------------------------------------------------------------


def dump_interpretation(interp: Interpretation) -> str:
    lines = [f"interpretation {interp.name}", f"vocab {interp.vocab.name or 'vocab.txt'}"]
    lines.append(f"univ: {render_formula(interp.univ)}")
    for name in interp.vocab.names:
        lines.append(f"def {name}: {render_formula(interp.defs[name])}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_interpretation(text: str, base: Path | None = None) -> Interpretation:
    name, vocab, univ, defs = "I", None, None, {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("interpretation "):
            name = line.split(None, 1)[1]
        elif line.startswith("vocab "):
            vocab = load_vocabulary(line.split(None, 1)[1], base)
        elif line.startswith("univ:"):
            univ = parse_formula(line[5:], TAU_E)
        elif line.startswith("def "):
            head, body = line[4:].split(":", 1)
            defs[head.strip()] = parse_formula(body, TAU_E)
        elif line == "end":
            break
        else:
            raise InterpretationError(f"unexpected line {line!r}")
    if vocab is None or univ is None:
        raise InterpretationError("interpretation needs 'vocab' and 'univ' lines")
    return Interpretation(vocab, univ, defs, None, name)
