"""Vocabularies, formulas, concrete syntax and named sentences."""

from .analysis import (
    NotUniversalError,
    Polarity,
    SyntacticClass,
    classify,
    eliminate_implications,
    formula_size,
    is_existential,
    is_universal,
    nnf,
    polarity,
    prenex_universal,
    quantifier_pattern,
    universal_width,
)
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
    all_vars,
    conj,
    disj,
    exists,
    forall,
    free_vars,
    is_sentence,
    neq,
    relation_symbols,
    substitute,
    subformulas,
)
from .sentences import BUILTIN_NAMES, builtin_sentence, builtin_vocab
from .syntax import FormulaSyntaxError, FormulaVocabularyError, parse_formula, render_formula
from .vocab import (
    LT,
    TAU_0,
    TAU_E,
    Vocabulary,
    VocabularyError,
    dump_vocabulary,
    load_vocabulary,
    parse_vocabulary,
)


def check_vocabulary(f: Formula, vocab: Vocabulary) -> None:
    """Raise if ``f`` uses a symbol missing from ``vocab`` or with the wrong arity."""
    for name, arity in relation_symbols(f).items():
        if name not in vocab:
            raise FormulaVocabularyError(f"relation symbol {name} is not in the vocabulary")
        if vocab.arity(name) != arity:
            raise FormulaVocabularyError(f"{name} used with {arity} arguments, declared {vocab.arity(name)}")
