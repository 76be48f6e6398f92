"""Independent reference evaluators for the three base logics.

These share no code with :mod:`robustlogics.semantics` beyond the lasso and
guard NFA types; they exist to cross-check the robust evaluator and the
formula translations.

* :func:`eval_rltl` evaluates rLTL(G,F) position-class by position-class
  with :class:`TruthValue` lattice operations.
* :func:`eval_ldl` is two-valued LDL, deciding diamonds by reachability in
  the product of the guard NFA with the lasso's class graph.
* :func:`eval_prompt` is two-valued Prompt-LTL for a fixed bound.
"""
from __future__ import annotations

from .formula import (
    FF, TT, Always, And, Atom, Box, Diamond, Eventually, Formula, Implies,
    LogicId, Not, Or, PromptEventually, check_fragment, holds_prop,
)
from .guards import compile_guard
from .lasso import LassoWord
from .truth import TruthValue, bit, from_bits, implies, join, join_all, meet, meet_all, negate


def eval_rltl(word: LassoWord, phi: Formula) -> TruthValue:
    check_fragment(phi, LogicId.RLTL)
    memo: dict[Formula, list[TruthValue]] = {}

    def values(f: Formula) -> list[TruthValue]:
        if f not in memo:
            memo[f] = _rltl(f)
        return memo[f]

    def _rltl(f: Formula) -> list[TruthValue]:
        n = word.n_classes
        if isinstance(f, Atom):
            return [TruthValue.V1111 if f.name in word.letter_at(c) else TruthValue.V0000
                    for c in range(n)]
        if isinstance(f, TT):
            return [TruthValue.V1111] * n
        if isinstance(f, FF):
            return [TruthValue.V0000] * n
        if isinstance(f, Not):
            return [negate(v) for v in values(f.arg)]
        if isinstance(f, And):
            return [meet(a, b) for a, b in zip(values(f.left), values(f.right))]
        if isinstance(f, Or):
            return [join(a, b) for a, b in zip(values(f.left), values(f.right))]
        if isinstance(f, Implies):
            return [implies(a, b) for a, b in zip(values(f.left), values(f.right))]
        sub = values(f.arg)
        loop = [sub[c] for c in word.loop_classes()]
        out = []
        for c in range(n):
            ahead = [sub[x] for x in word.reachable_classes(c)]
            if isinstance(f, Eventually):
                out.append(join_all(ahead))
            elif isinstance(f, Always):
                out.append(from_bits(bit(meet_all(ahead), 1), bit(meet_all(loop), 2),
                                     bit(join_all(loop), 3), bit(join_all(ahead), 4)))
            else:
                raise TypeError(f"unexpected node {f!r}")
        return out

    return values(phi)[0]


def eval_ldl(word: LassoWord, phi: Formula) -> int:
    check_fragment(phi, LogicId.LDL)
    memo: dict[Formula, list[bool]] = {}
    n = word.n_classes

    def truth(f: Formula) -> list[bool]:
        if f not in memo:
            memo[f] = _ldl(f)
        return memo[f]

    def diamond(r, target: list[bool]) -> list[bool]:
        nfa = compile_guard(r)
        out = []
        for start in range(n):
            seen = {(start, nfa.initial)}
            stack = [(start, nfa.initial)]
            found = False
            while stack and not found:
                x, q = stack.pop()
                if q in nfa.finals and target[x]:
                    found = True
                    break
                nxt = []
                for test, t in nfa.silent.get(q, ()):
                    if test is None or truth(test)[x]:
                        nxt.append((x, t))
                for prop, t in nfa.consuming.get(q, ()):
                    if holds_prop(prop, word.letter_at(x)):
                        nxt.append((word.next_class(x), t))
                for node in nxt:
                    if node not in seen:
                        seen.add(node)
                        stack.append(node)
            out.append(found)
        return out

    def _ldl(f: Formula) -> list[bool]:
        if isinstance(f, Atom):
            return [f.name in word.letter_at(c) for c in range(n)]
        if isinstance(f, TT):
            return [True] * n
        if isinstance(f, FF):
            return [False] * n
        if isinstance(f, Not):
            return [not v for v in truth(f.arg)]
        if isinstance(f, And):
            return [a and b for a, b in zip(truth(f.left), truth(f.right))]
        if isinstance(f, Or):
            return [a or b for a, b in zip(truth(f.left), truth(f.right))]
        if isinstance(f, Implies):
            return [(not a) or b for a, b in zip(truth(f.left), truth(f.right))]
        if isinstance(f, Diamond):
            return diamond(f.regex, truth(f.arg))
        if isinstance(f, Box):
            return [not v for v in diamond(f.regex, [not v for v in truth(f.arg)])]
        raise TypeError(f"unexpected node {f!r}")

    return int(truth(phi)[0])


def eval_prompt(word: LassoWord, k: int, phi: Formula) -> int:
    check_fragment(phi, LogicId.PROMPT_LTL)
    memo: dict[Formula, list[bool]] = {}
    n = word.n_classes

    def truth(f: Formula) -> list[bool]:
        if f not in memo:
            memo[f] = _prompt(f)
        return memo[f]

    def _prompt(f: Formula) -> list[bool]:
        if isinstance(f, Atom):
            return [f.name in word.letter_at(c) for c in range(n)]
        if isinstance(f, TT):
            return [True] * n
        if isinstance(f, FF):
            return [False] * n
        if isinstance(f, Not):
            return [not v for v in truth(f.arg)]
        if isinstance(f, And):
            return [a and b for a, b in zip(truth(f.left), truth(f.right))]
        if isinstance(f, Or):
            return [a or b for a, b in zip(truth(f.left), truth(f.right))]
        sub = truth(f.arg)
        if isinstance(f, Eventually):
            return [any(sub[x] for x in word.reachable_classes(c)) for c in range(n)]
        if isinstance(f, Always):
            return [all(sub[x] for x in word.reachable_classes(c)) for c in range(n)]
        if isinstance(f, PromptEventually):
            return [any(sub[word.suffix_class(c + j)] for j in range(k + 1)) for c in range(n)]
        raise TypeError(f"unexpected node {f!r}")

    return int(truth(phi)[0])
