"""Alternating parity automata with priorities in {0, 1, 2}.

A run branch is accepting iff the largest priority seen infinitely often is
even.  Transitions are symbolic positive Boolean formulas (see :mod:`.pbf`)
that may test the current letter; :meth:`APA.delta` resolves them.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..lasso import LassoWord
from . import pbf
from .search import strongly_connected_components


@dataclass
class APA:
    aps: tuple[str, ...]
    initial: int
    trans: list
    priority: list[int]
    names: list[str] = field(default_factory=list)
    _delta: dict = field(default_factory=dict, repr=False, compare=False)
    _models: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n_states(self) -> int:
        return len(self.trans)

    def project(self, letter: frozenset) -> frozenset:
        return frozenset(p for p in letter if p in self.aps)

    def delta(self, q: int, letter: frozenset):
        key = (q, letter)
        hit = self._delta.get(key)
        if hit is None:
            hit = self._delta[key] = pbf.on_letter(self.trans[q], letter)
        return hit

    def models(self, q: int, letter: frozenset) -> list[frozenset[int]]:
        key = (q, letter)
        hit = self._models.get(key)
        if hit is None:
            hit = self._models[key] = pbf.minimal_models(self.delta(q, letter))
        return hit

    def successors(self, q: int) -> set[int]:
        return pbf.states_of(self.trans[q])

    def is_weak(self) -> bool:
        """Every strongly connected part of the state graph has one priority parity."""
        for comp in strongly_connected_components(range(self.n_states), self.successors):
            if len({self.priority[q] % 2 for q in comp}) > 1:
                return False
        return True

    def name(self, q: int) -> str:
        return self.names[q] if q < len(self.names) and self.names[q] else f"q{q}"

    def dump(self) -> str:
        lines = [f"aps: {' '.join(self.aps)}", f"initial: {self.name(self.initial)}"]
        for q in range(self.n_states):
            lines.append(f"{self.name(q)} [{self.priority[q]}] -> "
                         f"{pbf.render(self.trans[q], self.name)}")
        return "\n".join(lines)


_DUAL_PRIORITY = {0: 1, 1: 2, 2: 1}


def dualize(a: APA) -> APA:
    """Complement automaton: and/or swapped, priorities shifted by one.

    The shift 0->1, 1->2, 2->1 flips the parity of every state; on weak
    automata (each strongly connected part has a single parity) this
    complements the language exactly.  Every automaton built by this package
    is weak.
    """
    if not a.is_weak():
        raise ValueError("dualize needs a weak automaton")
    return APA(a.aps, a.initial, [pbf.dual(t, lambda q: q) for t in a.trans],
               [_DUAL_PRIORITY[p] for p in a.priority],
               ["~" + a.name(q) for q in range(a.n_states)])


def _combine(a: APA, b: APA, op) -> APA:
    offset = a.n_states
    aps = a.aps + tuple(p for p in b.aps if p not in a.aps)
    shifted = [pbf.rename(t, lambda q: q + offset) for t in b.trans]
    trans = list(a.trans) + shifted
    priority = list(a.priority) + list(b.priority)
    names = [a.name(q) for q in range(a.n_states)] + [b.name(q) for q in range(b.n_states)]
    trans.append(op([a.trans[a.initial], shifted[b.initial]]))
    priority.append(0)
    names.append("init")
    return APA(aps, len(trans) - 1, trans, priority, names)


def apa_union(a: APA, b: APA) -> APA:
    return _combine(a, b, pbf.disj)


def apa_intersect(a: APA, b: APA) -> APA:
    return _combine(a, b, pbf.conj)


def apa_accepts_lasso(a: APA, word: LassoWord) -> int:
    """Solve the acceptance game of ``a`` on ``word``.

    Configurations are (state, suffix class).  Strongly connected parts of
    the configuration graph are solved sinks first with the three-priority
    nested fixpoint nu Z2. mu Z1. nu Z0, the priority being that of the
    successor configuration's state.
    """
    letters = [a.project(word.letter_at(c)) for c in range(word.n_classes)]

    def moves(config):
        q, c = config
        nxt = word.next_class(c)
        return [(t, nxt) for t in pbf.states_of(a.delta(q, letters[c]))]

    start = (a.initial, 0)
    graph: dict = {}
    stack = [start]
    while stack:
        x = stack.pop()
        if x in graph:
            continue
        graph[x] = moves(x)
        stack.extend(y for y in graph[x] if y not in graph)

    won: dict = {}
    for comp in strongly_connected_components([start], lambda x: graph[x]):
        members = set(comp)

        def step(z, members=members):
            sets = z

            def value(config_state, c):
                y = (config_state, c)
                if y in members:
                    return y in sets[a.priority[config_state]]
                return won[y]

            out = set()
            for x in members:
                q, c = x
                nxt = word.next_class(c)
                if pbf.evaluate(a.delta(q, letters[c]), lambda t: value(t, nxt)):
                    out.add(x)
            return out

        z2 = set(members)
        while True:
            z1: set = set()
            while True:
                z0 = set(members)
                while True:
                    new0 = step({0: z0, 1: z1, 2: z2})
                    if new0 == z0:
                        break
                    z0 = new0
                if z0 == z1:
                    break
                z1 = z0
            if z1 == z2:
                break
            z2 = z1
        for x in members:
            won[x] = x in z2
    return int(won[start])
