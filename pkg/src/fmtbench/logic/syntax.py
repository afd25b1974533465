"""ASCII concrete syntax: parsing and rendering.

Grammar (precedence ``!`` > ``&`` > ``|`` > ``->``, implication associates to
the right, quantifier scope extends as far right as possible)::

    F ::= forall v. F | exists v. F | F -> F | F | F | F & F | !F | (F)
        | R(v, ..., v) | v = v | v != v
"""

from __future__ import annotations

import re

from .formula import And, Eq, Exists, Forall, Formula, Implies, Not, Or, Rel
from .vocab import Vocabulary


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class FormulaVocabularyError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<neq>!=)|(?P<op>[!&|().,=])|(?P<ident>[A-Za-z_][A-Za-z0-9_']*))"
)
KEYWORDS = ("forall", "exists")


def _tokenize(text: str):
    pos, out = 0, []
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastgroup)
        out.append((m.group(m.lastgroup), start))
        pos = m.end()
    out.append(("<end>", n))
    return out


class _Parser:
    def __init__(self, text, vocab):
        self.text = text
        self.vocab = vocab
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def pos(self):
        return self.toks[self.i][1]

    def take(self, expected=None):
        tok, pos = self.toks[self.i]
        if expected is not None and tok != expected:
            shown = "end of input" if tok == "<end>" else repr(tok)
            raise FormulaSyntaxError(f"expected {expected!r}, found {shown}", pos, self.text)
        self.i += 1
        return tok

    def ident(self, what="variable"):
        tok, pos = self.toks[self.i]
        if not re.match(r"[A-Za-z_]", tok) or tok in KEYWORDS:
            shown = "end of input" if tok == "<end>" else repr(tok)
            raise FormulaSyntaxError(f"expected {what}, found {shown}", pos, self.text)
        self.i += 1
        return tok

    def parse(self):
        f = self.implication()
        if self.peek() != "<end>":
            raise FormulaSyntaxError(f"unexpected {self.peek()!r}", self.pos(), self.text)
        return f

    def implication(self):
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self):
        parts = [self.conjunction()]
        while self.peek() == "|":
            self.take()
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self):
        parts = [self.unary()]
        while self.peek() == "&":
            self.take()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self):
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok in KEYWORDS:
            self.take()
            var = self.ident()
            self.take(".")
            body = self.implication()
            return Forall(var, body) if tok == "forall" else Exists(var, body)
        return self.primary()

    def primary(self):
        if self.peek() == "(":
            self.take()
            f = self.implication()
            self.take(")")
            return f
        start = self.pos()
        name = self.ident("formula")
        if self.peek() == "(":
            self.take()
            args = [self.ident()]
            while self.peek() == ",":
                self.take()
                args.append(self.ident())
            self.take(")")
            self._check_atom(name, len(args), start)
            return Rel(name, tuple(args))
        tok = self.peek()
        if tok == "=":
            self.take()
            return Eq(name, self.ident())
        if tok == "!=":
            self.take()
            return Not(Eq(name, self.ident()))
        raise FormulaSyntaxError(f"expected '=', '!=' or '(' after {name!r}", self.pos(), self.text)

    def _check_atom(self, name, n, pos):
        if self.vocab is None:
            return
        if name not in self.vocab:
            raise FormulaVocabularyError(f"undeclared relation symbol {name} at position {pos}")
        if self.vocab.arity(name) != n:
            raise FormulaVocabularyError(
                f"{name} has arity {self.vocab.arity(name)} but is applied to {n} arguments"
                f" at position {pos}"
            )


def parse_formula(text: str, vocab: Vocabulary | None = None) -> Formula:
    """Parse ``text``; relation atoms are checked against ``vocab`` when given."""
    return _Parser(text, vocab).parse()


# -- rendering ----------------------------------------------------------------

_PREC_IMP, _PREC_OR, _PREC_AND, _PREC_ATOM = 1, 2, 3, 4


def _prec(f):
    if isinstance(f, Implies):
        return _PREC_IMP
    if isinstance(f, Or):
        return _PREC_OR
    if isinstance(f, And):
        return _PREC_AND
    if isinstance(f, (Forall, Exists)):
        return 0
    return _PREC_ATOM


def render_formula(f: Formula) -> str:
    out: list[str] = []
    _render(f, out)
    return "".join(out)


def _wrap(f, out, need):
    if need:
        out.append("(")
        _render(f, out)
        out.append(")")
    else:
        _render(f, out)


def _render(f, out):
    # iterate through quantifier chains to keep Python recursion shallow
    while isinstance(f, (Forall, Exists)):
        out.append(("forall " if isinstance(f, Forall) else "exists ") + f.var + ". ")
        body = f.body
        if isinstance(body, (And, Or, Implies)):
            _wrap(body, out, True)
            return
        f = body
    if isinstance(f, Eq):
        out.append(f"{f.left} = {f.right}")
    elif isinstance(f, Rel):
        out.append(f"{f.name}({','.join(f.args)})")
    elif isinstance(f, Not):
        if isinstance(f.body, Eq):
            out.append(f"{f.body.left} != {f.body.right}")
        else:
            out.append("!")
            _wrap(f.body, out, _prec(f.body) < _PREC_ATOM)
    elif isinstance(f, (And, Or)):
        level = _prec(f)
        sep = " & " if isinstance(f, And) else " | "
        for i, p in enumerate(f.parts):
            if i:
                out.append(sep)
            _wrap(p, out, _prec(p) <= level)
    elif isinstance(f, Implies):
        _wrap(f.left, out, _prec(f.left) <= _PREC_IMP)
        out.append(" -> ")
        _wrap(f.right, out, _prec(f.right) <= _PREC_IMP)
    else:
        raise TypeError(f"not a formula: {f!r}")
