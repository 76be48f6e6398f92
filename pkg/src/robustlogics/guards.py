"""Thompson-style compilation of guards into NFAs with test edges."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from .formula import Formula, GConcat, GProp, GStar, GTest, Guard, GUnion, holds_prop


@dataclass
class GuardNFA:
    """NFA whose non-consuming edges are either epsilon or ``test(phi)``.

    ``consuming`` maps a state to its (propositional formula, target) edges;
    ``silent`` maps a state to its (test formula or None, target) edges.
    """
    n_states: int
    initial: int
    finals: frozenset[int]
    consuming: dict[int, list[tuple[Formula, int]]] = field(default_factory=dict)
    silent: dict[int, list[tuple[Formula | None, int]]] = field(default_factory=dict)

    def closure(self, states: Iterable[int], test_ok: Callable[[Formula], bool]) -> frozenset[int]:
        seen = set(states)
        stack = list(seen)
        while stack:
            q = stack.pop()
            for test, t in self.silent.get(q, ()):
                if t not in seen and (test is None or test_ok(test)):
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def step(self, states: Iterable[int], letter: frozenset) -> frozenset[int]:
        return frozenset(t for q in states for prop, t in self.consuming.get(q, ())
                         if holds_prop(prop, letter))

    def accepts(self, word: list[frozenset], test_ok: Callable[[int, Formula], bool]) -> bool:
        """Does the finite ``word`` match?  ``test_ok(j, phi)`` decides tests at offset j."""
        current = self.closure([self.initial], lambda f: test_ok(0, f))
        for j, letter in enumerate(word):
            current = self.closure(self.step(current, letter), lambda f, j=j: test_ok(j + 1, f))
        return bool(current & self.finals)

    def pure_states(self) -> list[int]:
        """The initial state and every target of a consuming edge."""
        out = {self.initial}
        for edges in self.consuming.values():
            out.update(t for _, t in edges)
        return sorted(out)

    def silent_paths(self, q: int) -> list[tuple[int, frozenset[Formula]]]:
        """States reachable from q without consuming, with minimal test sets.

        Every simple silent path contributes its set of tests; for each target
        only the inclusion-minimal test sets are kept.
        """
        found: dict[int, list[frozenset[Formula]]] = {}

        def record(t: int, tests: frozenset) -> None:
            options = found.setdefault(t, [])
            if any(o <= tests for o in options):
                return
            options[:] = [o for o in options if not tests <= o]
            options.append(tests)

        stack = [(q, frozenset(), frozenset([q]))]
        while stack:
            s, tests, on_path = stack.pop()
            record(s, tests)
            for test, t in self.silent.get(s, ()):
                if t in on_path:
                    continue
                stack.append((t, tests | {test} if test is not None else tests, on_path | {t}))
        return [(t, ts) for t in sorted(found) for ts in found[t]]

    def dump(self) -> str:
        lines = [f"states: {self.n_states}", f"initial: {self.initial}",
                 f"finals: {sorted(self.finals)}"]
        for q in range(self.n_states):
            for prop, t in self.consuming.get(q, ()):
                lines.append(f"{q} -[{prop}]-> {t}")
            for test, t in self.silent.get(q, ()):
                label = "eps" if test is None else f"{{{test}}}?"
                lines.append(f"{q} -({label})-> {t}")
        return "\n".join(lines)


@lru_cache(maxsize=None)
def compile_guard(r: Guard) -> GuardNFA:
    nfa = GuardNFA(0, 0, frozenset())
    counter = [0]

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    def silent(a: int, b: int, test: Formula | None = None) -> None:
        nfa.silent.setdefault(a, []).append((test, b))

    def build(g: Guard) -> tuple[int, int]:
        if isinstance(g, GProp):
            s, f = fresh(), fresh()
            nfa.consuming.setdefault(s, []).append((g.prop, f))
            return s, f
        if isinstance(g, GTest):
            s, f = fresh(), fresh()
            silent(s, f, g.formula)
            return s, f
        if isinstance(g, GConcat):
            s0, f0 = build(g.left)
            s1, f1 = build(g.right)
            silent(f0, s1)
            return s0, f1
        if isinstance(g, GUnion):
            s, f = fresh(), fresh()
            s0, f0 = build(g.left)
            s1, f1 = build(g.right)
            silent(s, s0)
            silent(s, s1)
            silent(f0, f)
            silent(f1, f)
            return s, f
        if isinstance(g, GStar):
            s, f = fresh(), fresh()
            s0, f0 = build(g.arg)
            silent(s, s0)
            silent(s, f)
            silent(f0, s0)
            silent(f0, f)
            return s, f
        raise TypeError(f"not a guard: {g!r}")

    s, f = build(r)
    nfa.n_states = counter[0]
    nfa.initial = s
    nfa.finals = frozenset([f])
    return nfa
