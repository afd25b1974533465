"""Isomorphism testing by backtracking with invariant pruning."""

from __future__ import annotations

from collections import Counter, defaultdict

from .core import FinStructure


def _local_profile(a: FinStructure) -> list:
    """Per-element invariant: occurrence counts by (symbol, equality pattern, position)."""
    prof = [Counter() for _ in range(a.size + 1)]
    for (name, _), content in zip(a.vocab.symbols, a.rels):
        for t in content:
            pattern = tuple(t.index(e) for e in t)
            for pos, e in enumerate(t):
                prof[e][(name, pattern, pos)] += 1
    return [tuple(sorted(p.items())) for p in prof]


def _refine(a: FinStructure, colors: list, rounds: int = 3) -> list:
    """A few rounds of colour refinement along binary relations."""
    binaries = [n for n, ar in a.vocab.symbols if ar == 2]
    for _ in range(rounds):
        new = [None]
        for e in a.universe:
            sig = [colors[e]]
            for name in binaries:
                sig.append(tuple(sorted(colors[f] for f in a.out_neighbors[name][e])))
                sig.append(tuple(sorted(colors[f] for f in a.in_neighbors[name][e])))
            new.append(hash(tuple(sig)))
        if len(set(new[1:])) == len(set(colors[1:])):
            return new
        colors = new
    return colors


def _invariants(a):
    base = [None] + [hash(p) for p in _local_profile(a)[1:]]
    return _refine(a, base)


def find_isomorphism(a: FinStructure, b: FinStructure) -> dict[int, int] | None:
    """Return a bijection ``a -> b`` preserving all relations both ways, or None."""
    if a.vocab != b.vocab or a.size != b.size:
        return None
    if any(len(x) != len(y) for x, y in zip(a.rels, b.rels)):
        return None
    ca, cb = _invariants(a), _invariants(b)
    if Counter(ca[1:]) != Counter(cb[1:]):
        return None
    by_color = defaultdict(list)
    for e in b.universe:
        by_color[cb[e]].append(e)

    # tuples touching each element, to check consistency incrementally
    touch_a = [[] for _ in range(a.size + 1)]
    for idx, content in enumerate(a.rels):
        for t in content:
            for e in set(t):
                touch_a[e].append((idx, t))
    touch_b = [[] for _ in range(b.size + 1)]
    for idx, content in enumerate(b.rels):
        for t in content:
            for e in set(t):
                touch_b[e].append((idx, t))

    # map rare colours and well-connected elements first
    freq = Counter(ca[1:])
    order = sorted(a.universe, key=lambda e: (freq[ca[e]], -len(touch_a[e]), e))
    fwd: dict[int, int] = {}
    used: set[int] = set()

    def consistent(x, y):
        # tuples of a through x inside the mapped part must exist in b
        na = 0
        for idx, t in touch_a[x]:
            if all(e in fwd for e in t):
                na += 1
                if tuple(fwd[e] for e in t) not in b.rels[idx]:
                    return False
        nb = 0
        for idx, t in touch_b[y]:
            if all(e in used for e in t):
                nb += 1
        return na == nb

    def extend(i):
        if i == len(order):
            return True
        x = order[i]
        for y in by_color[ca[x]]:
            if y in used:
                continue
            fwd[x] = y
            used.add(y)
            if consistent(x, y) and extend(i + 1):
                return True
            del fwd[x]
            used.discard(y)
        return False

    if extend(0):
        return dict(sorted(fwd.items()))
    return None


def isomorphic(a: FinStructure, b: FinStructure) -> bool:
    return find_isomorphism(a, b) is not None


def is_isomorphism(a: FinStructure, b: FinStructure, m: dict[int, int]) -> bool:
    """Independent check of a witness bijection."""
    if sorted(m) != list(a.universe) or sorted(m.values()) != list(b.universe):
        return False
    for x, y in zip(a.rels, b.rels):
        if {tuple(m[e] for e in t) for t in x} != set(y):
            return False
    return True


def canonical_key(a: FinStructure):
    """Exact isomorphism-class key by brute force over permutations (tiny structures only)."""
    from itertools import permutations

    best = None
    for perm in permutations(a.universe):
        m = dict(zip(a.universe, perm))
        key = tuple(tuple(sorted(tuple(m[e] for e in t) for t in content)) for content in a.rels)
        if best is None or key < best:
            best = key
    return (a.size, best)
