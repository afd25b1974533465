"""Exhaustive model search at a fixed universe size.

The sentence is grounded over [n] into a propositional formula whose atoms are
the facts R(t).  Subformulas get auxiliary variables (one-directional
definitions suffice since every subformula occurs positively after pushing
negations inward), and a complete backtracking search with unit propagation
decides the resulting clause set.  A ``None`` result therefore proves that no
model of that size exists (within the optional per-symbol bounds).
"""

from __future__ import annotations

from itertools import product

from ..logic.formula import And, Eq, Exists, Forall, Formula, Implies, Not, Or, Rel, free_vars, relation_symbols
from ..structures.core import FinStructure
from .evaluator import DEFAULT_BUDGET, BudgetExceeded


class _Grounder:
    def __init__(self, vocab, n, fixed, upper, lower):
        self.vocab = vocab
        self.n = n
        self.universe = range(1, n + 1)
        self.atom_var: dict[tuple, int] = {}
        self.atoms: list[tuple] = [None]
        self.const: dict[tuple, bool] = {}
        for name, arity in vocab.symbols:
            for t in product(self.universe, repeat=arity):
                key = (name, t)
                if name in fixed:
                    self.const[key] = t in fixed[name]
                elif name in upper and t not in upper[name]:
                    self.const[key] = False
                else:
                    self.atom_var[key] = len(self.atoms)
                    self.atoms.append(key)
        self.nvars = len(self.atoms) - 1
        self.clauses: list[list[int]] = []
        for name, tuples in lower.items():
            for t in tuples:
                key = (name, tuple(t))
                if key in self.atom_var:
                    self.clauses.append([self.atom_var[key]])
                elif not self.const.get(key, False):
                    self.clauses.append([])  # contradictory bounds
        self._nodes: dict[tuple, int] = {}

    def _aux(self, kind, lits):
        key = (kind, lits)
        v = self._nodes.get(key)
        if v is None:
            self.nvars += 1
            v = self._nodes[key] = self.nvars
            if kind == "&":
                for lit in lits:
                    self.clauses.append([-v, lit])
            else:
                self.clauses.append([-v, *lits])
        return v

    def _combine(self, kind, children):
        neutral = kind == "&"  # True is neutral for conjunction
        lits = set()
        for c in children:
            if c is neutral:
                continue
            if c is (not neutral):
                return not neutral
            if -c in lits:
                return not neutral
            lits.add(c)
        if not lits:
            return neutral
        if len(lits) == 1:
            return next(iter(lits))
        return self._aux(kind, tuple(sorted(lits)))

    def ground(self, f, env, pol):
        while isinstance(f, Not):
            f, pol = f.body, not pol
        if isinstance(f, Eq):
            return (env[f.left] == env[f.right]) == pol
        if isinstance(f, Rel):
            key = (f.name, tuple(env[a] for a in f.args))
            if key in self.const:
                return self.const[key] == pol
            v = self.atom_var[key]
            return v if pol else -v
        if isinstance(f, (And, Or)):
            conjunctive = isinstance(f, And) == pol
            kind = "&" if conjunctive else "|"
            stop = not conjunctive
            out = []
            for p in f.parts:
                g = self.ground(p, env, pol)
                if g is stop:
                    return stop
                out.append(g)
            return self._combine(kind, out)
        if isinstance(f, Implies):
            kind = "|" if pol else "&"
            left = self.ground(f.left, env, not pol)
            right = self.ground(f.right, env, pol)
            return self._combine(kind, [left, right])
        if isinstance(f, (Forall, Exists)):
            conjunctive = isinstance(f, Forall) == pol
            kind = "&" if conjunctive else "|"
            stop = not conjunctive
            saved = env.get(f.var, None)
            out = []
            for e in self.universe:
                env[f.var] = e
                g = self.ground(f.body, env, pol)
                if g is stop:
                    out = None
                    break
                out.append(g)
            if saved is None:
                env.pop(f.var, None)
            else:
                env[f.var] = saved
            if out is None:
                return stop
            return self._combine(kind, out)
        raise TypeError(f"not a formula: {f!r}")


class _Solver:
    """Backtracking search with two-watched-literal unit propagation."""

    def __init__(self, nvars, clauses, decision_order, budget):
        self.nvars = nvars
        self.assign = [0] * (nvars + 1)
        self.budget = budget
        self.steps = 0
        self.order = decision_order
        self.clauses = []
        self.watches: dict[int, list[int]] = {}
        self.units = []
        self.trivially_unsat = False
        for c in clauses:
            c = list(dict.fromkeys(c))
            if any(-l in c for l in c):
                continue
            if not c:
                self.trivially_unsat = True
            elif len(c) == 1:
                self.units.append(c[0])
            else:
                idx = len(self.clauses)
                self.clauses.append(c)
                self.watches.setdefault(c[0], []).append(idx)
                self.watches.setdefault(c[1], []).append(idx)
        self.trail: list[int] = []

    def _val(self, lit):
        v = self.assign[abs(lit)]
        return v if lit > 0 else -v

    def _enqueue(self, lit):
        val = self._val(lit)
        if val == -1:
            return False
        if val == 0:
            self.assign[abs(lit)] = 1 if lit > 0 else -1
            self.trail.append(lit)
        return True

    def _propagate(self, qhead):
        assign, clauses, watches = self.assign, self.clauses, self.watches
        trail = self.trail
        while qhead < len(trail):
            lit = trail[qhead]
            qhead += 1
            self.steps += 1
            if self.steps > self.budget:
                raise BudgetExceeded(f"model search exceeded {self.budget} steps")
            false_lit = -lit
            wl = watches.get(false_lit)
            if not wl:
                continue
            keep = []
            conflict = False
            i = 0
            while i < len(wl):
                ci = wl[i]
                i += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                fv = assign[abs(first)]
                if (fv if first > 0 else -fv) == 1:
                    keep.append(ci)
                    continue
                moved = False
                for k in range(2, len(c)):
                    lk = c[k]
                    vk = assign[abs(lk)]
                    if (vk if lk > 0 else -vk) != -1:
                        c[1], c[k] = lk, false_lit
                        watches.setdefault(lk, []).append(ci)
                        moved = True
                        break
                if moved:
                    continue
                keep.append(ci)
                if (fv if first > 0 else -fv) == -1:
                    conflict = True
                    keep.extend(wl[i:])
                    break
                assign[abs(first)] = 1 if first > 0 else -1
                trail.append(first)
            watches[false_lit] = keep
            if conflict:
                return None
        return qhead

    def solve(self):
        if self.trivially_unsat:
            return None
        for u in self.units:
            if not self._enqueue(u):
                return None
        qhead = self._propagate(0)
        if qhead is None:
            return None
        # decision stack entries: (trail length before decision, literal, flipped)
        stack = []
        pos = 0
        order = self.order
        while True:
            while pos < len(order) and self.assign[abs(order[pos])] != 0:
                pos += 1
            if pos == len(order):
                return self.assign
            lit = order[pos]
            stack.append((len(self.trail), lit, False, pos))
            self.assign[abs(lit)] = 1 if lit > 0 else -1
            self.trail.append(lit)
            qhead = self._propagate(len(self.trail) - 1)
            while qhead is None:
                # backtrack to the last unflipped decision
                while stack and stack[-1][2]:
                    size, _, _, _ = stack.pop()
                    self._undo(size)
                if not stack:
                    return None
                size, lit, _, dpos = stack.pop()
                self._undo(size)
                stack.append((size, -lit, True, dpos))
                self.assign[abs(lit)] = -1 if lit > 0 else 1
                self.trail.append(-lit)
                pos = dpos
                qhead = self._propagate(len(self.trail) - 1)

    def _undo(self, size):
        trail, assign = self.trail, self.assign
        while len(trail) > size:
            assign[abs(trail.pop())] = 0


def find_model(sentence: Formula, size: int, vocab, *, fixed=None, upper=None, lower=None,
               budget: int = DEFAULT_BUDGET) -> FinStructure | None:
    """A structure with universe [size] satisfying ``sentence``, or None.

    ``fixed`` pins symbols to exact tuple sets; ``upper``/``lower`` bound the
    others from above/below.  These bounds let callers search, e.g., among
    the substructures of a given structure.
    """
    if free_vars(sentence):
        raise ValueError("find_model expects a sentence")
    for name, arity in relation_symbols(sentence).items():
        if name not in vocab or vocab.arity(name) != arity:
            raise ValueError(f"symbol {name}/{arity} does not match the vocabulary")
    fixed = {k: {tuple(t) for t in v} for k, v in (fixed or {}).items()}
    upper = {k: {tuple(t) for t in v} for k, v in (upper or {}).items()}
    lower = {k: {tuple(t) for t in v} for k, v in (lower or {}).items()}
    gr = _Grounder(vocab, size, fixed, upper, lower)
    root = gr.ground(sentence, {}, True)
    if root is False:
        return None
    clauses = list(gr.clauses)
    if root is not True:
        clauses.append([root])
    n_atoms = len(gr.atoms) - 1
    order = [-v for v in range(1, n_atoms + 1)] + list(range(n_atoms + 1, gr.nvars + 1))
    solver = _Solver(gr.nvars, clauses, order, budget)
    assign = solver.solve()
    if assign is None:
        return None
    rels = {name: set(fixed.get(name, ())) for name in vocab.names}
    for (name, t), val in gr.const.items():
        if val and name not in fixed:
            rels[name].add(t)
    for v in range(1, n_atoms + 1):
        if assign[v] == 1:
            name, t = gr.atoms[v]
            rels[name].add(t)
    return FinStructure.build(vocab, size, rels)
