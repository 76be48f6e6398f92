"""Nondeterministic Büchi automata, built lazily, plus dealternation."""
from __future__ import annotations

from itertools import product
from typing import Callable, Hashable, Iterable

from ..lasso import LassoWord, powerset_alphabet
from .apa import APA
from .search import find_accepting_lasso


class NBA:
    """Büchi automaton over 2^aps with a successor function evaluated on demand.

    Successor lists are cached per (state, projected letter), so one instance
    can be shared by many membership and product queries.
    """

    def __init__(self, aps: Iterable[str], initial: Iterable[Hashable],
                 successors: Callable[[Hashable, frozenset], Iterable[Hashable]],
                 accepting: Callable[[Hashable], bool]):
        self.aps = tuple(aps)
        self._apset = frozenset(self.aps)
        self.initial = list(initial)
        self._successors = successors
        self._accepting = accepting
        self._cache: dict = {}
        self.letters = powerset_alphabet(self.aps)

    def project(self, letter: frozenset) -> frozenset:
        return letter & self._apset

    def succ(self, state, letter: frozenset) -> list:
        letter = letter & self._apset
        key = (state, letter)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = list(dict.fromkeys(self._successors(state, letter)))
        return hit

    def is_accepting(self, state) -> bool:
        return self._accepting(state)

    def explore(self) -> tuple[list, dict]:
        """All reachable states (breadth-first) and edges {state: [(letter, target)]}."""
        order = list(dict.fromkeys(self.initial))
        seen = set(order)
        edges: dict = {}
        i = 0
        while i < len(order):
            s = order[i]
            i += 1
            out = []
            for a in self.letters:
                for t in self.succ(s, a):
                    out.append((a, t))
                    if t not in seen:
                        seen.add(t)
                        order.append(t)
            edges[s] = out
        return order, edges


def explicit_nba(aps, initial, edges: dict, accepting) -> NBA:
    """NBA from an explicit table; ``edges[s]`` lists (letter-predicate, target)."""
    accepting = frozenset(accepting)

    def successors(s, letter):
        return [t for pred, t in edges.get(s, ()) if pred(letter)]

    return NBA(aps, initial, successors, accepting.__contains__)


def remove_alternation(a: APA) -> NBA:
    """Miyano-Hayashi breakpoint construction with F = even-priority states.

    Exact for weak automata, where a branch is accepting iff it settles in an
    even part.  NBA states are pairs (S, O): S the current level of the run
    DAG, O the branches still owing a visit to F; (S, O) is accepting iff O is
    empty.
    """
    if not a.is_weak():
        raise ValueError("breakpoint construction needs a weak automaton")
    even = frozenset(q for q in range(a.n_states) if a.priority[q] % 2 == 0)

    def successors(state, letter):
        current, owing = state
        choices = []
        for q in sorted(current):
            models = a.models(q, letter)
            if not models:
                return []
            choices.append((q, models))
        out = []
        for combo in product(*(m for _, m in choices)):
            nxt = frozenset().union(*combo)
            if owing:
                chosen = [m for (q, _), m in zip(choices, combo) if q in owing]
                new_owing = frozenset().union(*chosen) - even
            else:
                new_owing = nxt - even
            out.append((nxt, new_owing))
        return out

    start = (frozenset([a.initial]), frozenset())
    return NBA(a.aps, [start], successors, lambda s: not s[1])


def lasso_product_search(nba: NBA, word: LassoWord):
    letters = [nba.project(word.letter_at(c)) for c in range(word.n_classes)]

    def succ(node):
        c, s = node
        nxt = word.next_class(c)
        return [(letters[c], (nxt, t)) for t in nba.succ(s, letters[c])]

    return find_accepting_lasso([(0, s) for s in nba.initial], succ,
                                lambda node: nba.is_accepting(node[1]))


def nba_accepts_lasso(nba: NBA, word: LassoWord) -> int:
    return int(lasso_product_search(nba, word) is not None)


def nba_is_empty(nba: NBA) -> tuple[int, LassoWord | None]:
    """(1, None) if the language is empty, else (0, witness lasso)."""

    def succ(s):
        return [(a, t) for a in nba.letters for t in nba.succ(s, a)]

    found = find_accepting_lasso(nba.initial, succ, nba.is_accepting)
    if found is None:
        return 1, None
    return 0, LassoWord(tuple(lab for _, lab in found.stem), tuple(lab for _, lab in found.loop))
