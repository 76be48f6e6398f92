"""Exact five-valued evaluation over lasso words.

Every suffix of u.v^omega is one of |u|+|v| suffix classes, so each
subformula is evaluated once per class and all quantifiers over positions
reduce to finite minima and maxima: "for all j" ranges over the classes
reachable from the current one, limit quantifiers range over the loop
classes.  Guards are run as NFAs from every start class; the sequence of
(class, reachable NFA states) pairs is deterministic and therefore cycles,
which yields the eventually periodic match sets exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    FF, TT, Always, And, Atom, Box, Diamond, Eventually, Formula, FragmentError,
    Guard, Implies, LogicId, Not, Or, PromptDiamond, PromptEventually,
    check_fragment, guard_tests, subformulas,
)
from .guards import compile_guard
from .lasso import LassoWord, MatchSet
from .truth import TruthValue, bit, from_bits


@dataclass(frozen=True)
class EvalDiagnostics:
    """Pre-monotonization bits of a box at one position, with its match sets."""
    pre_bits: tuple[int, int, int, int]
    cardinalities: tuple[str, str, str, str]
    match_sets: tuple[MatchSet, MatchSet, MatchSet, MatchSet]

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(max(self.pre_bits[:i + 1]) for i in range(4))


@dataclass
class _Run:
    """Guard NFA run from one start class at one bit level."""
    classes: list[int]
    matched: list[bool]
    cycle_start: int

    def class_at(self, j: int) -> int:
        if j < len(self.classes):
            return self.classes[j]
        period = len(self.classes) - self.cycle_start
        return self.classes[self.cycle_start + (j - self.cycle_start) % period]

    def matched_at(self, j: int) -> bool:
        if j < len(self.matched):
            return self.matched[j]
        period = len(self.matched) - self.cycle_start
        return self.matched[self.cycle_start + (j - self.cycle_start) % period]

    def transient_matches(self) -> list[int]:
        return [self.classes[j] for j in range(self.cycle_start) if self.matched[j]]

    def cyclic_matches(self) -> list[int]:
        return [self.classes[j] for j in range(self.cycle_start, len(self.classes))
                if self.matched[j]]

    def match_set(self) -> MatchSet:
        return MatchSet.from_indicator(list(self.matched), self.cycle_start)


class Engine:
    """Memoized evaluator for one word and one prompt bound.

    Values are kept as integers 0..4 (the number of one-bits), one list
    entry per suffix class.
    """

    def __init__(self, word: LassoWord, k: int | None = None):
        self.word = word
        self.k = k
        self.n = word.n_classes
        self.values: dict[Formula, list[int]] = {}
        self.runs: dict[tuple, _Run] = {}
        self.letters = [word.letter_at(c) for c in range(self.n)]
        self.succ = [word.next_class(c) for c in range(self.n)]

    # --- guards -------------------------------------------------------------

    def run(self, r: Guard, start: int, level: int) -> _Run:
        key = (r, start, level)
        hit = self.runs.get(key)
        if hit is not None:
            return hit
        nfa = compile_guard(r)

        def test_ok_at(x):
            return lambda test: bit(self.value(test)[x], level) == 1

        x = start
        current = nfa.closure([nfa.initial], test_ok_at(x))
        seen: dict[tuple[int, frozenset], int] = {}
        classes, matched = [], []
        while (x, current) not in seen:
            seen[(x, current)] = len(classes)
            classes.append(x)
            matched.append(bool(current & nfa.finals))
            nxt = self.succ[x]
            current = nfa.closure(nfa.step(current, self.letters[x]), test_ok_at(nxt))
            x = nxt
        result = _Run(classes, matched, seen[(x, current)])
        self.runs[key] = result
        return result

    def match_set(self, r: Guard, level: int, start: int = 0) -> MatchSet:
        return self.run(r, start, level).match_set()

    # --- formulas -----------------------------------------------------------

    def value(self, phi: Formula) -> list[int]:
        hit = self.values.get(phi)
        if hit is None:
            hit = self._compute(phi)
            for v in hit:
                # well-definedness: every value must be a monotone bit vector
                from_bits(*(bit(v, i) for i in range(1, 5)))
            self.values[phi] = hit
        return hit

    def _compute(self, phi: Formula) -> list[int]:
        n = self.n
        w = self.word
        if isinstance(phi, Atom):
            return [4 if phi.name in self.letters[c] else 0 for c in range(n)]
        if isinstance(phi, TT):
            return [4] * n
        if isinstance(phi, FF):
            return [0] * n
        if isinstance(phi, Not):
            a = self.value(phi.arg)
            return [0 if v == 4 else 4 for v in a]
        if isinstance(phi, And):
            a, b = self.value(phi.left), self.value(phi.right)
            return [min(x, y) for x, y in zip(a, b)]
        if isinstance(phi, Or):
            a, b = self.value(phi.left), self.value(phi.right)
            return [max(x, y) for x, y in zip(a, b)]
        if isinstance(phi, Implies):
            a, b = self.value(phi.left), self.value(phi.right)
            return [4 if x <= y else y for x, y in zip(a, b)]
        if isinstance(phi, Eventually):
            a = self.value(phi.arg)
            return [self._from_bits(lambda i, c=c: max(bit(a[x], i) for x in w.reachable_classes(c)))
                    for c in range(n)]
        if isinstance(phi, Always):
            a = self.value(phi.arg)
            loop = w.loop_classes()
            lim_inf = min(a[x] for x in loop)
            lim_sup = max(a[x] for x in loop)
            out = []
            for c in range(n):
                reach = [a[x] for x in w.reachable_classes(c)]
                out.append(self._from_bits_tuple((bit(min(reach), 1), bit(lim_inf, 2),
                                                  bit(lim_sup, 3), bit(max(reach), 4))))
            return out
        if isinstance(phi, PromptEventually):
            k = self._bound()
            a = self.value(phi.arg)
            return [self._from_bits(lambda i, c=c: max(bit(a[w.suffix_class(c + j)], i)
                                                       for j in range(k + 1)))
                    for c in range(n)]
        if isinstance(phi, Diamond):
            a = self.value(phi.arg)
            return [self._from_bits(lambda i, c=c: self._diamond_bit(phi.regex, a, c, i))
                    for c in range(n)]
        if isinstance(phi, PromptDiamond):
            k = self._bound()
            a = self.value(phi.arg)

            def prompt_bit(c, i):
                run = self.run(phi.regex, c, i)
                return max((bit(a[run.class_at(j)], i) for j in range(k + 1) if run.matched_at(j)),
                           default=0)

            return [self._from_bits(lambda i, c=c: prompt_bit(c, i)) for c in range(n)]
        if isinstance(phi, Box):
            return [self._box(phi, c) for c in range(n)]
        raise TypeError(f"not a formula: {phi!r}")

    def _bound(self) -> int:
        if self.k is None:
            raise FragmentError("prompt operators need a bound k")
        return self.k

    @staticmethod
    def _from_bits(bit_of) -> int:
        return int(from_bits(*(bit_of(i) for i in range(1, 5))))

    @staticmethod
    def _from_bits_tuple(bits) -> int:
        return int(from_bits(*bits))

    def _diamond_bit(self, r: Guard, a: list[int], c: int, i: int) -> int:
        run = self.run(r, c, i)
        return max((bit(a[x], i) for x, m in zip(run.classes, run.matched) if m), default=0)

    def box_pre_bits(self, phi: Box, c: int) -> tuple[int, int, int, int]:
        """b'_1..b'_4 by the case split on the cardinality of each match set."""
        a = self.value(phi.arg)
        pre = []
        for i in (1, 2, 3, 4):
            run = self.run(phi.regex, c, i)
            trans = [bit(a[x], i) for x in run.transient_matches()]
            cyc = [bit(a[x], i) for x in run.cyclic_matches()]
            everything = trans + cyc
            if not everything:
                pre.append(1)
            elif i == 1:
                pre.append(min(everything))
            elif i == 2:
                pre.append(min(cyc) if cyc else min(everything))
            elif i == 3:
                pre.append(max(cyc) if cyc else max(everything))
            else:
                pre.append(max(everything))
        return tuple(pre)  # type: ignore[return-value]

    def box_closed_form_bits(self, phi: Box, c: int) -> tuple[int, int, int, int]:
        """b'_1..b'_4 via the Boolean reformulation used by the automata builder."""
        a = self.value(phi.arg)
        out = []
        for i in (1, 2, 3, 4):
            run = self.run(phi.regex, c, i)
            trans = [bit(a[x], i) for x in run.transient_matches()]
            cyc = [bit(a[x], i) for x in run.cyclic_matches()]
            every_sat = all(trans) and all(cyc)
            some_sat = any(trans) or any(cyc)
            infinitely_many = bool(cyc)
            infinitely_many_sat = any(cyc)
            cofinitely_sat = all(cyc)
            empty = not trans and not cyc
            if i == 1:
                out.append(every_sat)
            elif i == 2:
                out.append(cofinitely_sat and (infinitely_many or every_sat))
            elif i == 3:
                out.append(infinitely_many_sat or (not infinitely_many and (some_sat or empty)))
            else:
                out.append(some_sat or empty)
        return tuple(int(b) for b in out)  # type: ignore[return-value]

    def _box(self, phi: Box, c: int) -> int:
        pre = self.box_pre_bits(phi, c)
        final = tuple(max(pre[:i + 1]) for i in range(4))
        return int(from_bits(*final))

    def box_diagnostics(self, phi: Box, c: int = 0) -> EvalDiagnostics:
        pre = self.box_pre_bits(phi, c)
        sets = tuple(self.run(phi.regex, c, i).match_set() for i in (1, 2, 3, 4))
        return EvalDiagnostics(pre, tuple(s.cardinality() for s in sets), sets)  # type: ignore[arg-type]


def _evaluate(word: LassoWord, phi: Formula, k: int | None, logic: LogicId) -> TruthValue:
    check_fragment(phi, logic)
    return TruthValue(Engine(word, k).value(phi)[0])


def eval_rldl(word: LassoWord, phi: Formula, diagnostics: bool = False):
    """V(w, phi) for rLDL.

    With ``diagnostics=True`` returns ``(value, {box: EvalDiagnostics})`` for
    every box subformula, taken at position 0.
    """
    check_fragment(phi, LogicId.RLDL)
    engine = Engine(word)
    value = TruthValue(engine.value(phi)[0])
    if not diagnostics:
        return value
    diag = {f: engine.box_diagnostics(f, 0) for f in subformulas(phi) if isinstance(f, Box)}
    return value, diag


def eval_rprompt(word: LassoWord, k: int, phi: Formula) -> TruthValue:
    return _evaluate(word, phi, k, LogicId.RPROMPT_LTL)


def eval_rpromptldl(word: LassoWord, k: int, phi: Formula) -> TruthValue:
    return _evaluate(word, phi, k, LogicId.RPROMPT_LDL)


def match_set(word: LassoWord, r: Guard, i: int, k: int | None = None) -> MatchSet:
    """R_i(w, r): positions j such that w[0, j) matches r at bit level i."""
    if i not in (1, 2, 3, 4):
        raise ValueError(f"bit level out of range: {i}")
    if k is None:
        for body in guard_tests(r):
            if any(isinstance(f, (PromptEventually, PromptDiamond)) for f in subformulas(body)):
                raise FragmentError(f"test {{{body}}}? contains prompt operators and needs a bound k")
    return Engine(word, k).match_set(r, i)
