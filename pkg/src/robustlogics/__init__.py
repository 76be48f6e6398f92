"""Robust temporal logics over lasso words: evaluation, reductions, automata, model checking."""
from .formula import FragmentError, LogicId
from .lasso import LassoWord, MatchSet
from .semantics import eval_rldl, eval_rprompt, eval_rpromptldl, match_set
from .syntax import ParseError, parse, parse_guard, render
from .truth import TruthValue

__all__ = [
    "FragmentError", "LassoWord", "LogicId", "MatchSet", "ParseError", "TruthValue",
    "eval_rldl", "eval_rprompt", "eval_rpromptldl", "match_set", "parse", "parse_guard",
    "render",
]
