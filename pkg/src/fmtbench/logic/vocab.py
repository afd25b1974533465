"""Relational vocabularies with optional standard/complement pairing."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


class VocabularyError(ValueError):
    pass


@dataclass(frozen=True)
class Vocabulary:
    """Relation symbols with arities, in declaration order.

    ``pairs`` lists ``(standard, complement)`` symbol names.  ``name`` is an
    optional handle used when a structure file refers to a builtin vocabulary.
    """

    symbols: tuple[tuple[str, int], ...]
    pairs: tuple[tuple[str, str], ...] = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple((str(n), int(a)) for n, a in self.symbols))
        object.__setattr__(self, "pairs", tuple((str(s), str(c)) for s, c in self.pairs))
        seen = {}
        for sym, arity in self.symbols:
            if not _IDENT.match(sym):
                raise VocabularyError(f"bad relation name {sym!r}")
            if sym in seen:
                raise VocabularyError(f"duplicate relation symbol {sym}")
            if arity < 1:
                raise VocabularyError(f"arity of {sym} must be positive")
            seen[sym] = arity
        used = set()
        for std, comp in self.pairs:
            for s in (std, comp):
                if s not in seen:
                    raise VocabularyError(f"paired symbol {s} is not declared")
                if s in used:
                    raise VocabularyError(f"symbol {s} occurs in more than one pair")
                used.add(s)
            if std == comp:
                raise VocabularyError(f"{std} paired with itself")
            if seen[std] != seen[comp]:
                raise VocabularyError(f"pair {std}/{comp} has mismatched arities")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.symbols)

    def __contains__(self, name) -> bool:
        return any(n == name for n, _ in self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def arity(self, name: str) -> int:
        for n, a in self.symbols:
            if n == name:
                return a
        raise VocabularyError(f"undeclared relation symbol {name}")

    def index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.symbols):
            if n == name:
                return i
        raise VocabularyError(f"undeclared relation symbol {name}")

    def complement(self, name: str) -> str | None:
        for std, comp in self.pairs:
            if std == name:
                return comp
        return None

    @property
    def standard_symbols(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.pairs)

    def extend(self, symbols=(), pairs=(), name=None) -> "Vocabulary":
        return Vocabulary(self.symbols + tuple(symbols), self.pairs + tuple(pairs), name)

    def with_pairs(self, names, arity=2, suffix="_comp", name=None) -> "Vocabulary":
        """Add each name together with a fresh complement symbol."""
        syms, prs = [], []
        for n in names:
            syms += [(n, arity), (n + suffix, arity)]
            prs.append((n, n + suffix))
        return self.extend(syms, prs, name)


TAU_E = Vocabulary((("E", 2),), name="tau_E")
# the order symbol is spelled "Lt" since the formula grammar only has R(v,...) atoms
LT = "Lt"
TAU_0 = Vocabulary(((LT, 2), ("U_min", 1), ("U_max", 1), ("S", 2)), name="tau_0")

BUILTIN_VOCABS = {"tau_E": TAU_E, "tau_0": TAU_0}


def parse_vocabulary(text: str, name: str | None = None) -> Vocabulary:
    symbols, pairs = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "rel" and len(parts) == 2 and "/" in parts[1]:
            sym, _, ar = parts[1].partition("/")
            try:
                symbols.append((sym, int(ar)))
            except ValueError:
                raise VocabularyError(f"line {lineno}: bad arity in {line!r}") from None
        elif parts[0] == "pair" and len(parts) == 3:
            pairs.append((parts[1], parts[2]))
        else:
            raise VocabularyError(f"line {lineno}: cannot read {line!r}")
    return Vocabulary(tuple(symbols), tuple(pairs), name)


def dump_vocabulary(vocab: Vocabulary) -> str:
    lines = [f"rel {n}/{a}" for n, a in vocab.symbols]
    lines += [f"pair {s} {c}" for s, c in vocab.pairs]
    return "\n".join(lines) + "\n"


def load_vocabulary(ref: str | Path, base: Path | None = None) -> Vocabulary:
    """Resolve a builtin vocabulary name or read a vocabulary file."""
    if isinstance(ref, str) and ref in BUILTIN_VOCABS:
        return BUILTIN_VOCABS[ref]
    path = Path(ref)
    if base is not None and not path.is_absolute():
        path = base / path
    return parse_vocabulary(path.read_text(), name=str(ref))
