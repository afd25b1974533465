"""Model checking with backtracking witness search for quantifier blocks.

A maximal chain of like quantifiers is treated as one block.  Its body is
flattened into conjunctive parts (under the polarity that makes the block an
existential search), parts are grouped into independent components, and each
component is solved by backtracking.  The next variable to bind is taken from
the cheapest available generator: a positive atom or equality with all other
arguments bound, else a small table of a complex part, else the universe.
Parts are checked as soon as all their variables are bound.  Component results
are memoised on the values of their outer free variables.
"""

from __future__ import annotations

from ..logic.formula import And, Eq, Exists, Forall, Formula, Implies, Not, Or, Rel, free_vars, relation_symbols
from ..logic.syntax import FormulaVocabularyError
from ..structures.core import FinStructure

DEFAULT_BUDGET = 10**8

_EQ, _REL, _COMPLEX = 0, 1, 2


class BudgetExceeded(RuntimeError):
    """The node-expansion cap was reached before an answer was found."""


class EvaluationError(ValueError):
    pass


class _Part:
    __slots__ = ("kind", "node", "pol", "bvars", "outer", "args", "relset", "symbol", "idx")

    def __init__(self, node, pol, block_vars):
        self.node = node
        self.pol = pol
        fv = free_vars(node)
        self.bvars = tuple(sorted(fv & block_vars))
        self.outer = tuple(sorted(fv - block_vars))
        if isinstance(node, Eq):
            self.kind = _EQ
            self.args = (node.left, node.right)
        elif isinstance(node, Rel):
            self.kind = _REL
            self.args = node.args
            self.symbol = node.name
        else:
            self.kind = _COMPLEX
            self.args = None


class _Component:
    __slots__ = ("vars", "parts", "outer", "by_var", "generators")

    def __init__(self, variables, parts):
        self.vars = tuple(variables)
        self.parts = parts
        outer = set()
        for p in parts:
            outer.update(p.outer)
        self.outer = tuple(sorted(outer))
        self.by_var = {v: [] for v in self.vars}
        for i, p in enumerate(parts):
            for v in p.bvars:
                self.by_var[v].append(i)
        self.generators = [
            i for i, p in enumerate(parts) if p.pol and p.kind in (_EQ, _REL)
        ]


class _Block:
    __slots__ = ("vars", "pre", "components", "existential")

    def __init__(self, head):
        self.existential = isinstance(head, Exists)
        kind = type(head)
        variables = []
        node = head
        while isinstance(node, kind):
            if node.var not in variables:
                variables.append(node.var)
            node = node.body
        self.vars = tuple(variables)
        block_vars = frozenset(variables)
        parts = [_Part(n, p, block_vars) for n, p in _flatten(node, self.existential)]
        self.pre = [p for p in parts if not p.bvars]
        rest = [p for p in parts if p.bvars]
        # union-find over block variables
        parent = {v: v for v in variables}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for p in rest:
            first = find(p.bvars[0])
            for v in p.bvars[1:]:
                parent[find(v)] = first
        groups: dict[str, list] = {}
        for p in rest:
            groups.setdefault(find(p.bvars[0]), []).append(p)
        comps = []
        for root, ps in groups.items():
            vs = [v for v in variables if find(v) == root]
            comps.append(_Component(vs, ps))
        # variables constrained by nothing still range over the universe
        constrained = {v for c in comps for v in c.vars}
        self.components = sorted(comps, key=lambda c: (len(c.outer), len(c.vars)))
        self.vars = tuple(v for v in variables if v in constrained)


def _flatten(node, pol):
    """Conjunctive parts of ``node`` read at polarity ``pol``."""
    out = []
    stack = [(node, pol)]
    while stack:
        g, p = stack.pop()
        if (isinstance(g, And) and p) or (isinstance(g, Or) and not p):
            stack.extend((c, p) for c in reversed(g.parts))
        elif isinstance(g, Implies) and not p:
            stack.append((g.right, False))
            stack.append((g.left, True))
        elif isinstance(g, Not):
            stack.append((g.body, not p))
        else:
            out.append((g, p))
    return out


class Evaluator:
    """Evaluates formulas on one structure, sharing caches across calls."""

    def __init__(self, structure: FinStructure, budget: int = DEFAULT_BUDGET):
        self.structure = structure
        self.n = structure.size
        self.universe = tuple(structure.universe)
        self.rel = structure.relations
        self.out = structure.out_neighbors
        self.inn = structure.in_neighbors
        self.budget = budget
        self.steps = 0
        self._blocks: dict[int, tuple] = {}
        self._memo: dict = {}
        self._tables: dict = {}
        self._checked: dict[int, Formula] = {}

    # -- public -------------------------------------------------------------

    def satisfies(self, f: Formula, assignment=None) -> bool:
        env = dict(assignment or {})
        missing = free_vars(f) - set(env)
        if missing:
            raise EvaluationError(f"unbound free variables: {sorted(missing)}")
        if id(f) not in self._checked:
            for name, arity in relation_symbols(f).items():
                if name not in self.structure.vocab:
                    raise FormulaVocabularyError(f"relation symbol {name} is not in the structure's vocabulary")
                if self.structure.vocab.arity(name) != arity:
                    raise FormulaVocabularyError(f"{name} used with {arity} arguments")
            self._checked[id(f)] = f  # keeps f alive so its id stays unique
        for v, e in env.items():
            if not (1 <= e <= self.n):
                raise EvaluationError(f"value {e} of {v} outside the universe")
        return self._eval(f, env, True)

    # -- core ---------------------------------------------------------------

    def _tick(self, k=1):
        self.steps += k
        if self.steps > self.budget:
            raise BudgetExceeded(f"evaluation budget of {self.budget} expansions exceeded")

    def _eval(self, f, env, pol):
        while isinstance(f, Not):
            f, pol = f.body, not pol
        if isinstance(f, Rel):
            args = f.args
            if len(args) == 2:
                t = (env[args[0]], env[args[1]])
            elif len(args) == 1:
                t = (env[args[0]],)
            else:
                t = tuple(env[a] for a in args)
            return (t in self.rel[f.name]) == pol
        if isinstance(f, Eq):
            return (env[f.left] == env[f.right]) == pol
        if isinstance(f, And):
            if pol:
                return all(self._eval(p, env, True) for p in f.parts)
            return any(self._eval(p, env, False) for p in f.parts)
        if isinstance(f, Or):
            if pol:
                return any(self._eval(p, env, True) for p in f.parts)
            return all(self._eval(p, env, False) for p in f.parts)
        if isinstance(f, Implies):
            if pol:
                return self._eval(f.left, env, False) or self._eval(f.right, env, True)
            return self._eval(f.left, env, True) and self._eval(f.right, env, False)
        if isinstance(f, (Exists, Forall)):
            found = self._search(f, env)
            truth = found if isinstance(f, Exists) else not found
            return truth == pol
        raise TypeError(f"not a formula: {f!r}")

    def _block(self, head):
        entry = self._blocks.get(id(head))
        if entry is None:
            entry = self._blocks[id(head)] = (head, _Block(head))
        return entry[1]

    def _search(self, head, env):
        """Is there an assignment of the block variables making all parts hold?"""
        block = self._block(head)
        for p in block.pre:
            if not self._check(p, env):
                return False
        if not block.components:
            return True
        local = dict(env)
        for v in block.vars:
            local.pop(v, None)
        for comp in block.components:
            key = (id(comp), tuple(env[v] for v in comp.outer))
            res = self._memo.get(key)
            if res is None:
                res = self._solve(comp, local)
                self._memo[key] = res
            if not res:
                return False
        return True

    def _check(self, p, env):
        if p.kind == _REL:
            args = p.args
            if len(args) == 2:
                t = (env[args[0]], env[args[1]])
            elif len(args) == 1:
                t = (env[args[0]],)
            else:
                t = tuple(env[a] for a in args)
            return (t in self.rel[p.symbol]) == p.pol
        if p.kind == _EQ:
            return (env[p.args[0]] == env[p.args[1]]) == p.pol
        return self._eval(p.node, env, p.pol)

    def _solve(self, comp, env):
        parts = comp.parts
        missing = [len(p.bvars) for p in parts]
        unbound = set(comp.vars)
        by_var = comp.by_var

        def bind(v, value):
            env[v] = value
            ok = True
            touched = by_var[v]
            for i in touched:
                missing[i] -= 1
            for i in touched:
                if missing[i] == 0 and not self._check(parts[i], env):
                    ok = False
                    break
            return ok

        def unbind(v):
            for i in by_var[v]:
                missing[i] += 1
            del env[v]

        def rec():
            if not unbound:
                return True
            var, cands = self._choose(comp, env, unbound, missing)
            unbound.discard(var)
            try:
                for value in cands:
                    self._tick()
                    if bind(var, value) and rec():
                        return True
                    unbind(var)
            finally:
                unbound.add(var)
            return False

        found = rec()
        for v in comp.vars:
            env.pop(v, None)
        return found

    def _choose(self, comp, env, unbound, missing):
        parts = comp.parts
        best_var, best = None, None
        for i in comp.generators:
            if missing[i] != 1:
                continue
            p = parts[i]
            var = next(v for v in p.bvars if v in unbound)
            cands = self._generate(p, var, env)
            if best is None or len(cands) < len(best):
                best_var, best = var, cands
                if not best:
                    break
        if best is not None:
            return best_var, sorted(best)
        # a complex part with one unbound variable: tabulate it
        for i, p in enumerate(parts):
            if p.kind == _COMPLEX and missing[i] == 1:
                var = next(v for v in p.bvars if v in unbound)
                return var, self._table(p, var, env)
        counts = {}
        for i, p in enumerate(parts):
            if missing[i]:
                for v in p.bvars:
                    if v in unbound:
                        counts[v] = counts.get(v, 0) + 1
        var = max(sorted(unbound), key=lambda v: counts.get(v, 0))
        return var, self.universe

    def _generate(self, p, var, env):
        if p.kind == _EQ:
            other = p.args[1] if p.args[0] == var else p.args[0]
            if other == var:
                return self.universe
            return (env[other],)
        args = p.args
        if len(args) == 1:
            return [t[0] for t in self.rel[p.symbol]]
        if len(args) == 2:
            a, b = args
            if a == var and b == var:
                return [t[0] for t in self.rel[p.symbol] if t[0] == t[1]]
            if a == var:
                return self.inn[p.symbol][env[b]]
            return self.out[p.symbol][env[a]]
        out = set()
        for t in self.rel[p.symbol]:
            val = None
            ok = True
            for x, e in zip(args, t):
                if x == var:
                    if val is None:
                        val = e
                    elif val != e:
                        ok = False
                        break
                elif env[x] != e:
                    ok = False
                    break
            if ok:
                out.add(val)
        return out

    def _table(self, p, var, env):
        key = (id(p), var, tuple(env[v] for v in p.outer), tuple(env[v] for v in p.bvars if v != var))
        cached = self._tables.get(key)
        if cached is not None:
            return cached
        vals = []
        for value in self.universe:
            self._tick()
            env[var] = value
            if self._eval(p.node, env, p.pol):
                vals.append(value)
        del env[var]
        self._tables[key] = vals
        return vals


def satisfies(a: FinStructure, f: Formula, assignment=None, budget: int = DEFAULT_BUDGET) -> bool:
    return Evaluator(a, budget).satisfies(f, assignment)


def models(a: FinStructure, sentence: Formula, budget: int = DEFAULT_BUDGET) -> bool:
    return Evaluator(a, budget).satisfies(sentence, {})
