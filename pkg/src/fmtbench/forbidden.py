"""Forbidden induced substructures and universal sentences.

``compute_Fk`` collects the labeled counter-structures of a sentence up to a
size bound; ``forbidden_to_universal`` goes the other way by describing each
forbidden structure with the conjunction of all literals it satisfies.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from pathlib import Path

from .evaluate import DEFAULT_BUDGET, Evaluator
from .logic.analysis import NotUniversalError, is_universal, prenex_universal
from .logic.formula import Eq, Forall, Formula, Not, Rel, conj, forall
from .logic.vocab import TAU_E, Vocabulary, load_vocabulary
from .structures.core import FinStructure, induced_substructure
from .structures.enum import structures_of_size
from .structures.fileio import dump_structure, parse_structures
from .structures.iso import canonical_key, isomorphic


@dataclass(frozen=True)
class ForbiddenSet:
    vocab: Vocabulary
    members: tuple[FinStructure, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        for m in self.members:
            if m.vocab != self.vocab:
                raise ValueError("member over a different vocabulary")
            if m.size > self.k:
                raise ValueError(f"member of size {m.size} exceeds bound k={self.k}")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, a):
        return a in self.members

    def up_to_isomorphism(self) -> list[FinStructure]:
        """One representative per isomorphism class (presentation only)."""
        reps, seen = [], set()
        for m in self.members:
            key = canonical_key(m)
            if key not in seen:
                seen.add(key)
                reps.append(m)
        return reps


def compute_Fk(phi: Formula, k: int, vocab: Vocabulary = TAU_E, budget: int = DEFAULT_BUDGET) -> ForbiddenSet:
    """All structures with universe [l], l <= k, in which ``phi`` fails."""
    if k < 1:
        raise ValueError("k must be at least 1")
    members = []
    for n in range(1, k + 1):
        for a in structures_of_size(vocab, n):
            if not Evaluator(a, budget).satisfies(phi):
                members.append(a)
    return ForbiddenSet(vocab, tuple(members), k)


def forb_member(a: FinStructure, forbidden: ForbiddenSet) -> bool:
    """True iff no member is isomorphic to an induced substructure of ``a``."""
    if a.vocab != forbidden.vocab:
        raise ValueError("vocabulary mismatch")
    by_size: dict[int, list] = {}
    for m in forbidden.members:
        by_size.setdefault(m.size, []).append(m)
    for size, group in by_size.items():
        if size > a.size:
            continue
        small = size <= 5
        keys = {canonical_key(m) for m in group} if small else None
        for subset in combinations(a.universe, size):
            sub = induced_substructure(a, subset)
            if small:
                if canonical_key(sub) in keys:
                    return False
            elif any(isomorphic(sub, m) for m in group):
                return False
    return True


def delta_description(a: FinStructure, enumeration) -> Formula:
    """Conjunction of all literals over x1..xk true of ``enumeration`` in ``a``.

    Equalities come first (ordered pairs of indices), then relational atoms
    sorted by symbol name and index tuple.
    """
    enum = list(enumeration)
    if set(enum) != set(a.universe):
        raise ValueError("enumeration must cover the universe exactly")
    k = len(enum)
    xs = [f"x{i}" for i in range(1, k + 1)]
    lits = []
    for i, j in product(range(k), repeat=2):
        atom = Eq(xs[i], xs[j])
        lits.append(atom if enum[i] == enum[j] else Not(atom))
    for name, arity in sorted(a.vocab.symbols):
        rel = a[name]
        for idx in product(range(k), repeat=arity):
            atom = Rel(name, tuple(xs[i] for i in idx))
            lits.append(atom if tuple(enum[i] for i in idx) in rel else Not(atom))
    return conj(lits)


def standard_enumeration(a: FinStructure, k: int) -> list[int]:
    """1, 2, ..., n followed by repetitions of n up to length k."""
    return list(a.universe) + [a.size] * (k - a.size)


def forbidden_to_universal(forbidden: ForbiddenSet) -> Formula:
    if not forbidden.members:
        return Forall("x", Eq("x", "x"))
    k = forbidden.k
    xs = [f"x{i}" for i in range(1, k + 1)]
    parts = [Not(delta_description(m, standard_enumeration(m, k))) for m in forbidden.members]
    return forall(xs, conj(parts))


def universal_equivalent(mu: Formula, nu: Formula, vocab: Vocabulary = TAU_E, budget: int = DEFAULT_BUDGET) -> bool:
    """Decide equivalence of two universal sentences by comparing their F_l sets,
    l being the larger prenex width."""
    for s in (mu, nu):
        if not is_universal(s):
            raise NotUniversalError("universal_equivalent expects universal sentences")
    k = len(prenex_universal(mu)[0])
    l = len(prenex_universal(nu)[0])
    width = max(k, l, 1)
    return compute_Fk(mu, width, vocab, budget).members == compute_Fk(nu, width, vocab, budget).members


# -- serialization -----------------------------------------------------------------


def dump_forbidden(forbidden: ForbiddenSet) -> str:
    ref = forbidden.vocab.name or "vocab.txt"
    blocks = [f"forbidden k={forbidden.k}\n"]
    for i, m in enumerate(forbidden.members, 1):
        blocks.append(dump_structure(m, f"F{i}", ref))
    return "".join(blocks)


def parse_forbidden(text: str, base: Path | None = None, vocab: Vocabulary | None = None) -> ForbiddenSet:
    header = next((ln.strip() for ln in text.splitlines() if ln.strip()), "")
    if not header.startswith("forbidden k="):
        raise ValueError("forbidden set file must start with 'forbidden k=<k>'")
    k = int(header.split("=", 1)[1])
    items = parse_structures(text, base, vocab)
    if vocab is None:
        vocab = items[0][1].vocab if items else TAU_E
    return ForbiddenSet(vocab, tuple(a for _, a in items), k)


def read_forbidden(path, vocab: Vocabulary | None = None) -> ForbiddenSet:
    path = Path(path)
    return parse_forbidden(path.read_text(), path.parent, vocab)
