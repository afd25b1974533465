"""First-order formula syntax trees.

Nodes are immutable dataclasses.  Conjunction and disjunction are n-ary
(at least two parts); the parser only flattens unparenthesised chains, so
``(a & b) & c`` and ``a & b & c`` remain distinct trees.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class Formula:
    __slots__ = ()

    def __str__(self):
        from .syntax import render_formula

        return render_formula(self)

    def free_vars(self) -> frozenset[str]:
        return free_vars(self)


@dataclass(frozen=True)
class Eq(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Rel(Formula):
    name: str
    args: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    parts: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) < 2:
            raise ValueError("And needs at least two parts")


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) < 2:
            raise ValueError("Or needs at least two parts")


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


ATOMS = (Eq, Rel)
QUANTIFIERS = (Forall, Exists)


# -- builders ---------------------------------------------------------------

def conj(*parts) -> Formula:
    """Conjunction of one or more formulas (a single part is returned as is)."""
    parts = _flatten_args(parts)
    if not parts:
        raise ValueError("empty conjunction")
    return parts[0] if len(parts) == 1 else And(parts)


def disj(*parts) -> Formula:
    parts = _flatten_args(parts)
    if not parts:
        raise ValueError("empty disjunction")
    return parts[0] if len(parts) == 1 else Or(parts)


def _flatten_args(parts):
    if len(parts) == 1 and not isinstance(parts[0], Formula):
        parts = tuple(parts[0])
    return tuple(parts)


def neq(x: str, y: str) -> Formula:
    return Not(Eq(x, y))


def forall(variables, body: Formula) -> Formula:
    if isinstance(variables, str):
        variables = [variables]
    for v in reversed(list(variables)):
        body = Forall(v, body)
    return body


def exists(variables, body: Formula) -> Formula:
    if isinstance(variables, str):
        variables = [variables]
    for v in reversed(list(variables)):
        body = Exists(v, body)
    return body


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (And, Or)):
        return f.parts
    if isinstance(f, Implies):
        return (f.left, f.right)
    if isinstance(f, (Not, Forall, Exists)):
        return (f.body,)
    return ()


def subformulas(f: Formula):
    """Pre-order traversal (iterative, so deep chains are fine)."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


def relation_symbols(f: Formula) -> dict[str, int]:
    out = {}
    for g in subformulas(f):
        if isinstance(g, Rel):
            out.setdefault(g.name, len(g.args))
    return out


def free_vars(f: Formula) -> frozenset[str]:
    cached = f.__dict__.get("_fv")
    if cached is not None:
        return cached
    if isinstance(f, Eq):
        out = frozenset((f.left, f.right))
    elif isinstance(f, Rel):
        out = frozenset(f.args)
    elif isinstance(f, (Forall, Exists)):
        out = free_vars(f.body) - {f.var}
    else:
        out = frozenset()
        for c in children(f):
            out |= free_vars(c)
    object.__setattr__(f, "_fv", out)
    return out


def all_vars(f: Formula) -> set[str]:
    out = set()
    for g in subformulas(f):
        if isinstance(g, Eq):
            out.update((g.left, g.right))
        elif isinstance(g, Rel):
            out.update(g.args)
        elif isinstance(g, (Forall, Exists)):
            out.add(g.var)
    return out


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def fresh_name(base: str, taken) -> str:
    if base not in taken:
        return base
    for i in itertools.count(1):
        cand = f"{base}_{i}"
        if cand not in taken:
            return cand


def substitute(f: Formula, mapping: dict[str, str]) -> Formula:
    """Capture-avoiding renaming of free variables.

    Subtrees without affected free variables are returned unchanged (same
    object), which keeps large instantiated formulas compact in memory.
    """
    mapping = {k: v for k, v in mapping.items() if k != v}
    if not mapping:
        return f
    return _subst(f, mapping, set(mapping.values()))


def _subst(f, mapping, targets):
    if isinstance(f, Eq):
        l, r = mapping.get(f.left, f.left), mapping.get(f.right, f.right)
        return f if (l, r) == (f.left, f.right) else Eq(l, r)
    if isinstance(f, Rel):
        args = tuple(mapping.get(a, a) for a in f.args)
        return f if args == f.args else Rel(f.name, args)
    fv = free_vars(f)
    if not any(v in fv for v in mapping):
        return f
    if isinstance(f, Not):
        return Not(_subst(f.body, mapping, targets))
    if isinstance(f, And):
        return And(tuple(_subst(p, mapping, targets) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(_subst(p, mapping, targets) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(_subst(f.left, mapping, targets), _subst(f.right, mapping, targets))
    # quantifier
    inner = {k: v for k, v in mapping.items() if k != f.var}
    if not inner:
        return f
    var, body = f.var, f.body
    if var in set(inner.values()):
        # the bound variable would capture a substituted name: rename it first
        taken = all_vars(body) | set(inner.values()) | set(inner)
        new = fresh_name(var, taken)
        body = _subst(body, {var: new}, {new})
        var = new
    return type(f)(var, _subst(body, inner, set(inner.values())))
