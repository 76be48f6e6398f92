"""Compilation of rLDL formulas (per truth level) into weak alternating automata.

``V(w, phi) >= beta`` holds iff bit ``i`` of the value is set, where ``i`` is
the level of ``beta``.  The builder therefore produces, for each pair
(subformula, level), a one-step formula ``start(phi, i)``: a positive Boolean
combination of current-letter predicates and states to be satisfied from the
next position on.

Diamonds simulate the guard NFA existentially (priority 1, so a match must
eventually be reached).  Boxes are compiled through the Boolean closed forms
of their pre-bits, built from two primitives:

* ``EX(r, i, T)``: some r-match (tests at level i) satisfies T;
* ``INFEX(r, i, T)``: infinitely many r-matches satisfy T, realised as an
  infinite NFA run (priority 2) from every point of which ``EX`` holds.

Everything else (ALL, EMPTY, FIN, cofinitely-many) is a dual of those.  Duals
are taken state by state and memoized in both directions, so the state pool
never holds more than two copies of each primitive.  All automata produced are
weak, which makes the 0->1, 1->2, 2->1 dual priority map exact.
"""
from __future__ import annotations

from ..formula import (
    FF, TT, Always, And, Atom, Box, Diamond, Eventually, Formula, Guard, Implies,
    LogicId, Not, Or, PromptEventually, check_fragment, is_propositional, propositions,
)
from ..guards import compile_guard
from ..truth import TruthValue
from . import pbf
from .apa import APA, _DUAL_PRIORITY

TRUE, FALSE = pbf.TRUE, pbf.FALSE


class _Builder:
    def __init__(self):
        self.trans: list = []
        self.priority: list[int] = []
        self.names: list[str] = []
        self.memo: dict = {}
        self.dual_of: dict[int, int] = {}

    def new_state(self, name: str, priority: int, trans=None) -> int:
        self.trans.append(trans)
        self.priority.append(priority)
        self.names.append(name)
        return len(self.trans) - 1

    # --- duality ------------------------------------------------------------

    def dual(self, f):
        return pbf.dual(f, self.dual_state)

    def dual_state(self, q: int) -> int:
        hit = self.dual_of.get(q)
        if hit is not None:
            return hit
        if self.trans[q] is None:
            raise RuntimeError(f"dual of unfinished state {self.names[q]}")
        d = self.new_state("~" + self.names[q], _DUAL_PRIORITY[self.priority[q]])
        self.dual_of[q] = d
        self.dual_of[d] = q
        self.trans[d] = self.dual(self.trans[q])
        return d

    # --- formulas -----------------------------------------------------------

    def start(self, phi: Formula, lvl: int):
        key = ("start", phi, lvl)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = self._start(phi, lvl)
        return hit

    def _start(self, phi: Formula, lvl: int):
        if isinstance(phi, Atom):
            return ("L", phi)
        if isinstance(phi, TT):
            return TRUE
        if isinstance(phi, FF):
            return FALSE
        if isinstance(phi, Not):
            if is_propositional(phi):
                return ("NL", phi.arg) if isinstance(phi.arg, Atom) else ("L", phi)
            return self.dual(self.start(phi.arg, 1))
        if isinstance(phi, And):
            return pbf.conj([self.start(phi.left, lvl), self.start(phi.right, lvl)])
        if isinstance(phi, Or):
            return pbf.disj([self.start(phi.left, lvl), self.start(phi.right, lvl)])
        if isinstance(phi, Implies):
            # a -> b reaches level lvl iff V(a) <= V(b) bitwise, or b reaches lvl
            below = pbf.conj(pbf.disj([self.dual(self.start(phi.left, j)),
                                       self.start(phi.right, j)]) for j in (1, 2, 3, 4))
            return pbf.disj([below, self.start(phi.right, lvl)])
        if isinstance(phi, Diamond):
            return self.ex(phi.regex, lvl, self.start(phi.arg, lvl))
        if isinstance(phi, Box):
            return pbf.disj(self.box_pre_bit(phi, l) for l in range(1, lvl + 1))
        raise TypeError(f"cannot compile {phi!r}")

    def box_pre_bit(self, phi: Box, lvl: int):
        r = phi.regex
        sat = self.start(phi.arg, lvl)
        unsat = self.dual(sat)
        if lvl == 1:
            return self.dual(self.ex(r, 1, unsat))                        # ALL
        if lvl == 2:
            cofinitely_sat = self.dual(self.infex(r, 2, unsat))
            every_sat = self.dual(self.ex(r, 2, unsat))
            return pbf.conj([cofinitely_sat, pbf.disj([self.infex(r, 2, TRUE), every_sat])])
        some_or_empty = pbf.disj([self.ex(r, lvl, sat), self.dual(self.ex(r, lvl, TRUE))])
        if lvl == 3:
            finite = self.dual(self.infex(r, 3, TRUE))
            return pbf.disj([self.infex(r, 3, sat), pbf.conj([finite, some_or_empty])])
        return some_or_empty

    # --- guard primitives ---------------------------------------------------

    def _tests(self, tests, lvl: int):
        return [self.start(t, lvl) for t in sorted(tests, key=str)]

    def ex_states(self, r: Guard, lvl: int, target) -> dict[int, int]:
        key = ("EX", r, lvl, target)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        nfa = compile_guard(r)
        ids = {q: self.new_state(f"EX<{r}>{lvl}:{q}", 1) for q in nfa.pure_states()}
        self.memo[key] = ids
        for q, s in ids.items():
            options = []
            for t, tests in nfa.silent_paths(q):
                here = [target] if t in nfa.finals else []
                here += [pbf.conj([("L", prop), ids[u]]) for prop, u in nfa.consuming.get(t, ())]
                options.append(pbf.conj(self._tests(tests, lvl) + [pbf.disj(here)]))
            self.trans[s] = pbf.disj(options)
        return ids

    def ex(self, r: Guard, lvl: int, target):
        nfa = compile_guard(r)
        return self.trans[self.ex_states(r, lvl, target)[nfa.initial]]

    def infex(self, r: Guard, lvl: int, target):
        key = ("INF", r, lvl, target)
        nfa = compile_guard(r)
        ids = self.memo.get(key)
        if ids is None:
            ex_ids = self.ex_states(r, lvl, target)
            ids = {q: self.new_state(f"INF<{r}>{lvl}:{q}", 2) for q in nfa.pure_states()}
            self.memo[key] = ids
            for q, s in ids.items():
                moves = []
                for t, tests in nfa.silent_paths(q):
                    steps = [pbf.conj([("L", prop), ids[u]]) for prop, u in nfa.consuming.get(t, ())]
                    moves.append(pbf.conj(self._tests(tests, lvl) + [pbf.disj(steps)]))
                self.trans[s] = pbf.conj([self.trans[ex_ids[q]], pbf.disj(moves)])
        return self.trans[ids[nfa.initial]]

    # --- classical Prompt-LTL at a fixed bound ------------------------------

    def prompt_start(self, phi: Formula, k: int):
        key = ("prompt", phi, k)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = self._prompt_start(phi, k)
        return hit

    def _prompt_start(self, phi: Formula, k: int):
        if isinstance(phi, Atom):
            return ("L", phi)
        if isinstance(phi, TT):
            return TRUE
        if isinstance(phi, FF):
            return FALSE
        if isinstance(phi, Not):
            return ("NL", phi.arg)
        if isinstance(phi, And):
            return pbf.conj([self.prompt_start(phi.left, k), self.prompt_start(phi.right, k)])
        if isinstance(phi, Or):
            return pbf.disj([self.prompt_start(phi.left, k), self.prompt_start(phi.right, k)])
        body = self.prompt_start(phi.arg, k)
        if isinstance(phi, Eventually):
            q = self.new_state(f"F {phi.arg}", 1)
            self.trans[q] = pbf.disj([body, q])
            return self.trans[q]
        if isinstance(phi, Always):
            q = self.new_state(f"G {phi.arg}", 0)
            self.trans[q] = pbf.conj([body, q])
            return self.trans[q]
        if isinstance(phi, PromptEventually):
            # counter chain: C_j means "within k - j more steps"
            nxt = body
            for j in range(k, 0, -1):
                q = self.new_state(f"Fp{j} {phi.arg}", 1, nxt)
                nxt = pbf.disj([body, q])
            return nxt
        raise TypeError(f"cannot compile {phi!r}")

    # --- assembly -----------------------------------------------------------

    def finish(self, init, aps: tuple[str, ...]) -> APA:
        q0 = self.new_state("init", 0, init)
        order, index = [], {}
        stack = [q0]
        while stack:
            q = stack.pop()
            if q in index:
                continue
            index[q] = len(order)
            order.append(q)
            stack.extend(sorted(pbf.states_of(self.trans[q]), reverse=True))
        trans = [pbf.rename(self.trans[q], index.__getitem__) for q in order]
        return APA(aps, 0, trans, [self.priority[q] for q in order],
                   [self.names[q] for q in order])


def _aps(phi: Formula, aps) -> tuple[str, ...]:
    if aps is None:
        return tuple(sorted(propositions(phi)))
    aps = tuple(aps)
    missing = propositions(phi) - set(aps)
    if missing:
        raise ValueError(f"propositions not declared: {', '.join(sorted(missing))}")
    return aps


def build_apa(phi: Formula, beta: TruthValue, aps=None) -> APA:
    """Weak APA for {w : V(w, phi) >= beta}; ``aps`` fixes the proposition order."""
    check_fragment(phi, LogicId.RLDL)
    beta = TruthValue(beta)
    if beta == TruthValue.V0000:
        raise ValueError("beta = 0000 is the universal language; no automaton is built")
    b = _Builder()
    return b.finish(b.start(phi, beta.level), _aps(phi, aps))


def build_prompt_apa(psi: Formula, k: int, aps=None) -> APA:
    """Very weak APA for the classical Prompt-LTL formula ``psi`` at bound ``k``."""
    check_fragment(psi, LogicId.PROMPT_LTL)
    if k < 0:
        raise ValueError("bound must be non-negative")
    b = _Builder()
    return b.finish(b.prompt_start(psi, k), _aps(psi, aps))
