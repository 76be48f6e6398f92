import random

from hypothesis import given, settings

from conftest import seeds
from robustlogics.formula import (
    Atom, GConcat, GProp, GStar, GTest, GUnion, Not, TT, guard_nodes, holds_prop,
)
from robustlogics.guards import compile_guard
from robustlogics.syntax import parse_guard

P = frozenset({"p"})
EMPTY = frozenset()


def ends(r, word, start):
    """End offsets j with word[start:j] matching r, straight from the match equations."""
    if isinstance(r, GProp):
        return {start + 1} if start < len(word) and holds_prop(r.prop, word[start]) else set()
    if isinstance(r, GUnion):
        return ends(r.left, word, start) | ends(r.right, word, start)
    if isinstance(r, GConcat):
        return {j for mid in ends(r.left, word, start) for j in ends(r.right, word, mid)}
    if isinstance(r, GStar):
        reached, frontier = {start}, [start]
        while frontier:
            mid = frontier.pop()
            for j in ends(r.arg, word, mid):
                if j not in reached:
                    reached.add(j)
                    frontier.append(j)
        return reached
    raise TypeError(r)


def matches(r, word):
    nfa = compile_guard(r)
    return {n for n in range(len(word) + 1) if nfa.accepts(word[:n], lambda j, f: True)}


def random_test_free_guard(rng, n):
    if n <= 1:
        return GProp(rng.choice([Atom("p"), Atom("q"), Not(Atom("p")), TT()]))
    kind = rng.choice(["union", "concat", "star"])
    if kind == "star":
        return GStar(random_test_free_guard(rng, n - 1))
    left = rng.randint(1, n - 2) if n > 2 else 1
    a = random_test_free_guard(rng, left)
    b = random_test_free_guard(rng, max(1, n - 1 - left))
    return GUnion(a, b) if kind == "union" else GConcat(a, b)


def random_word(rng, length):
    return [frozenset(x for x in ("p", "q") if rng.random() < 0.5) for _ in range(length)]


def test_single_letter_guard():
    assert matches(parse_guard("p"), [P, EMPTY]) == {1}
    assert matches(parse_guard("p"), [EMPTY, P]) == set()


def test_star_of_tt_matches_every_prefix():
    assert matches(parse_guard("tt*"), [EMPTY] * 5) == set(range(6))


def test_even_lengths():
    assert matches(parse_guard("(tt;tt)*"), [P, EMPTY] * 4) == {0, 2, 4, 6, 8}


def test_closure_terminates_on_empty_loops():
    for text in ("(tt*)*", "({tt}?)*", "(({p}?)*)*"):
        nfa = compile_guard(parse_guard(text))
        once = nfa.closure([nfa.initial], lambda f: True)
        assert nfa.closure(once, lambda f: True) == once
        assert nfa.accepts([], lambda j, f: True)


def test_tests_do_not_consume():
    r = parse_guard("{p}?;q")
    nfa = compile_guard(r)
    word = [frozenset({"p", "q"})]
    assert nfa.accepts(word, lambda j, f: j == 0)
    assert not nfa.accepts(word, lambda j, f: False)
    assert not nfa.accepts([], lambda j, f: True)
    assert isinstance(r.left, GTest)


@settings(max_examples=10_000, deadline=None)
@given(seed=seeds)
def test_nfa_agrees_with_match_equations(seed):
    rng = random.Random(seed)
    r = random_test_free_guard(rng, rng.randint(1, 8))
    word = random_word(rng, rng.randint(0, 8))
    assert matches(r, word) == ends(r, word, 0)
    assert compile_guard(r).n_states <= 2 * guard_nodes(r) + 2
