"""Size measure, normal forms, syntactic classes and polarity."""

from __future__ import annotations

from enum import Enum

from .formula import (
    And,
    Eq,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    Or,
    Rel,
    children,
    conj,
    disj,
    fresh_name,
    substitute,
    subformulas,
)


def formula_size(f: Formula) -> int:
    """Node count: connectives and quantifiers count 1, an atom 1 plus its arguments.

    An n-ary conjunction counts as n-1 binary connectives, so the measure is
    additive: ``size(a & b) == size(a) + size(b) + 1``.
    """
    total = 0
    for g in subformulas(f):
        if isinstance(g, Eq):
            total += 3
        elif isinstance(g, Rel):
            total += 1 + len(g.args)
        elif isinstance(g, (And, Or)):
            total += len(g.parts) - 1
        else:
            total += 1
    return total


def eliminate_implications(f: Formula) -> Formula:
    if isinstance(f, (Eq, Rel)):
        return f
    if isinstance(f, Implies):
        return Or((Not(eliminate_implications(f.left)), eliminate_implications(f.right)))
    if isinstance(f, Not):
        return Not(eliminate_implications(f.body))
    if isinstance(f, And):
        return And(tuple(eliminate_implications(p) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(eliminate_implications(p) for p in f.parts))
    return type(f)(f.var, eliminate_implications(f.body))


def nnf(f: Formula, positive: bool = True) -> Formula:
    """Negation normal form; implications are removed along the way.

    Nested conjunctions/disjunctions of the same kind are flattened.
    """
    if isinstance(f, (Eq, Rel)):
        return f if positive else Not(f)
    if isinstance(f, Not):
        return nnf(f.body, not positive)
    if isinstance(f, Implies):
        parts = [nnf(f.left, not positive), nnf(f.right, positive)]
        return _flat(Or if positive else And, parts)
    if isinstance(f, (And, Or)):
        kind = type(f) if positive else (Or if isinstance(f, And) else And)
        return _flat(kind, [nnf(p, positive) for p in f.parts])
    if isinstance(f, Forall):
        return (Forall if positive else Exists)(f.var, nnf(f.body, positive))
    return (Exists if positive else Forall)(f.var, nnf(f.body, positive))


def _flat(kind, parts):
    out = []
    for p in parts:
        out.extend(p.parts if isinstance(p, kind) else [p])
    return kind(tuple(out))


class SyntacticClass(str, Enum):
    QUANTIFIER_FREE = "quantifier-free"
    EXISTENTIAL = "existential"
    UNIVERSAL = "universal"
    SIGMA2 = "sigma2"
    PI2 = "pi2"
    GENERAL = "general"


def quantifier_pattern(f: Formula) -> str:
    """Quantifier letters of the negation normal form in left-to-right order."""
    letters = []
    for g in subformulas(nnf(f)):
        if isinstance(g, Forall):
            letters.append("A")
        elif isinstance(g, Exists):
            letters.append("E")
    return "".join(letters)


def classify(f: Formula) -> SyntacticClass:
    """Read the prenex prefix obtained by pulling quantifiers out left to right."""
    pattern = quantifier_pattern(f)
    blocks = []
    for ch in pattern:
        if not blocks or blocks[-1] != ch:
            blocks.append(ch)
    key = "".join(blocks)
    return {
        "": SyntacticClass.QUANTIFIER_FREE,
        "A": SyntacticClass.UNIVERSAL,
        "E": SyntacticClass.EXISTENTIAL,
        "AE": SyntacticClass.PI2,
        "EA": SyntacticClass.SIGMA2,
    }.get(key, SyntacticClass.GENERAL)


def is_universal(f: Formula) -> bool:
    return classify(f) in (SyntacticClass.UNIVERSAL, SyntacticClass.QUANTIFIER_FREE)


def is_existential(f: Formula) -> bool:
    return classify(f) in (SyntacticClass.EXISTENTIAL, SyntacticClass.QUANTIFIER_FREE)


class Polarity(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    MIXED = "mixed"
    ABSENT = "absent"


def polarity(symbol: str, f: Formula) -> Polarity:
    """Parity of negations above each occurrence; an antecedent counts as negated."""
    seen = set()
    stack = [(f, True)]
    while stack:
        g, pos = stack.pop()
        if isinstance(g, Rel):
            if g.name == symbol:
                seen.add(pos)
        elif isinstance(g, Not):
            stack.append((g.body, not pos))
        elif isinstance(g, Implies):
            stack.append((g.left, not pos))
            stack.append((g.right, pos))
        else:
            stack.extend((c, pos) for c in children(g))
    if seen == {True}:
        return Polarity.POSITIVE
    if seen == {False}:
        return Polarity.NEGATIVE
    if seen:
        return Polarity.MIXED
    return Polarity.ABSENT


# -- prenexing universal sentences ------------------------------------------


class NotUniversalError(ValueError):
    pass


def prenex_universal(f: Formula, prefix: str = "x") -> tuple[tuple[str, ...], Formula]:
    """Return ``(variables, matrix)`` with ``f`` equivalent to ``forall vars. matrix``.

    Conjuncts share their variables (universal quantifiers distribute over
    conjunction), disjuncts get disjoint ones.  Variables are named
    ``x1, x2, ...``.
    """
    if not is_universal(f):
        raise NotUniversalError("sentence is not universal")
    g = nnf(f)
    count, matrix = _prenex(g, prefix, 0)
    return tuple(f"{prefix}{i}" for i in range(1, count + 1)), matrix


def _prenex(g, prefix, offset):
    """Pull out universal quantifiers; returns (number of new variables, matrix)."""
    if isinstance(g, (Eq, Rel, Not)):
        return 0, g
    if isinstance(g, Forall):
        name = f"{prefix}{offset + 1}"
        body = g.body
        if name != g.var:
            body = substitute(body, {g.var: _placeholder(g.var)})
            body = substitute(body, {_placeholder(g.var): name})
        count, matrix = _prenex(body, prefix, offset + 1)
        return count + 1, matrix
    if isinstance(g, And):
        results = [_prenex(p, prefix, offset) for p in g.parts]
        return max(c for c, _ in results), conj([m for _, m in results])
    if isinstance(g, Or):
        total, mats = 0, []
        for p in g.parts:
            c, m = _prenex(p, prefix, offset + total)
            total += c
            mats.append(m)
        return total, disj(mats)
    raise NotUniversalError(f"unexpected node {type(g).__name__} in universal sentence")


def _placeholder(v):
    # a name that cannot be produced by the tokenizer keeps renaming capture-free
    return f"#{v}"


def universal_width(f: Formula) -> int:
    return len(prenex_universal(f)[0])
