"""Model checking, a reference evaluator and bounded model finding."""

import sys

from .evaluator import DEFAULT_BUDGET, BudgetExceeded, EvaluationError, Evaluator, models, satisfies
from .modelfind import find_model
from .naive import naive_satisfies

# translated sentences nest quantifier blocks deeply
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)
