"""Text format for structures::

    structure <name>
    vocab <builtin name or vocabulary file>
    universe <n>
    rel <Name>: (1,2) (2,3)
    end
"""

from __future__ import annotations

import re
from pathlib import Path

from ..logic.vocab import BUILTIN_VOCABS, Vocabulary, dump_vocabulary, load_vocabulary
from .core import FinStructure, StructureError

_TUPLE = re.compile(r"\(([^()]*)\)")


class StructureFormatError(StructureError):
    pass


def dump_structure(a: FinStructure, name: str = "A", vocab_ref: str | None = None) -> str:
    ref = vocab_ref or a.vocab.name or "vocab.txt"
    lines = [f"structure {name}", f"vocab {ref}", f"universe {a.size}"]
    for sym, content in zip(a.vocab.names, a.rels):
        body = " ".join("(" + ",".join(map(str, t)) + ")" for t in sorted(content))
        lines.append(f"rel {sym}: {body}".rstrip())
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_structures(text: str, base: Path | None = None, vocab: Vocabulary | None = None) -> list[tuple[str, FinStructure]]:
    """Read consecutive structure blocks; ``vocab`` overrides the file's reference."""
    out = []
    block = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "structure":
            if block is not None:
                raise StructureFormatError(f"line {lineno}: missing 'end'")
            block = {"name": rest.strip() or "A", "rels": {}}
        elif block is None:
            if head == "forbidden":
                continue
            raise StructureFormatError(f"line {lineno}: expected 'structure'")
        elif head == "vocab":
            block["vocab"] = rest.strip()
        elif head == "universe":
            try:
                block["size"] = int(rest)
            except ValueError:
                raise StructureFormatError(f"line {lineno}: bad universe size") from None
        elif head == "rel":
            sym, colon, tuples = rest.partition(":")
            if not colon:
                raise StructureFormatError(f"line {lineno}: expected 'rel <Name>: tuples'")
            items = []
            for m in _TUPLE.finditer(tuples):
                try:
                    items.append(tuple(int(x) for x in m.group(1).split(",")))
                except ValueError:
                    raise StructureFormatError(f"line {lineno}: bad tuple ({m.group(1)})") from None
            leftover = _TUPLE.sub("", tuples).strip()
            if leftover:
                raise StructureFormatError(f"line {lineno}: cannot read {leftover!r}")
            block["rels"][sym.strip()] = items
        elif head == "end":
            if "size" not in block:
                raise StructureFormatError(f"line {lineno}: missing universe line")
            if vocab is not None:
                voc = vocab
            elif "vocab" in block:
                voc = load_vocabulary(block["vocab"], base)
            else:
                raise StructureFormatError(f"line {lineno}: missing vocab line")
            out.append((block["name"], FinStructure.build(voc, block["size"], block["rels"])))
            block = None
        else:
            raise StructureFormatError(f"line {lineno}: unknown directive {head!r}")
    if block is not None:
        raise StructureFormatError("unterminated structure block")
    return out


def parse_structure(text: str, base: Path | None = None, vocab: Vocabulary | None = None) -> FinStructure:
    items = parse_structures(text, base, vocab)
    if len(items) != 1:
        raise StructureFormatError(f"expected one structure, found {len(items)}")
    return items[0][1]


def read_structure(path, vocab: Vocabulary | None = None) -> FinStructure:
    path = Path(path)
    return parse_structure(path.read_text(), path.parent, vocab)


def write_structure(a: FinStructure, path, name: str | None = None) -> None:
    """Write ``a``; a non-builtin vocabulary is written next to it as ``<stem>.vocab``."""
    path = Path(path)
    ref = a.vocab.name if a.vocab.name in BUILTIN_VOCABS else None
    if ref is None:
        vpath = path.with_suffix(".vocab")
        vpath.write_text(dump_vocabulary(a.vocab))
        ref = vpath.name
    path.write_text(dump_structure(a, name or path.stem, ref))
