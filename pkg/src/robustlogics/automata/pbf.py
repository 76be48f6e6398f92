"""Positive Boolean formulas over automaton states, with letter predicates.

Representation (hashable tuples, no Python bools so that states can be plain
ints)::

    TRUE = ('T',)   FALSE = ('F',)   q (int)
    ('&', frozenset(children))   ('|', frozenset(children))
    ('L', prop)   ('NL', prop)      # prop holds / fails on the current letter

Letter predicates only occur in symbolic transitions; after substituting a
letter the formula mentions states only.
"""
from __future__ import annotations

from itertools import product
from typing import Callable, Iterable

from ..formula import holds_prop

TRUE = ("T",)
FALSE = ("F",)


def conj(items: Iterable) -> object:
    return _combine("&", TRUE, FALSE, items)


def disj(items: Iterable) -> object:
    return _combine("|", FALSE, TRUE, items)


def _combine(op, unit, zero, items):
    out = set()
    for f in items:
        if f == zero:
            return zero
        if f == unit:
            continue
        if isinstance(f, tuple) and f[0] == op:
            out.update(f[1])
        else:
            out.add(f)
    if not out:
        return unit
    if len(out) == 1:
        return next(iter(out))
    return (op, frozenset(out))


def dual(f, state_map: Callable[[int], int]):
    """Swap and/or, true/false and letter polarity; map states through ``state_map``."""
    if isinstance(f, int):
        return state_map(f)
    tag = f[0]
    if tag == "T":
        return FALSE
    if tag == "F":
        return TRUE
    if tag == "L":
        return ("NL", f[1])
    if tag == "NL":
        return ("L", f[1])
    children = [dual(c, state_map) for c in f[1]]
    return disj(children) if tag == "&" else conj(children)


def rename(f, state_map: Callable[[int], int]):
    if isinstance(f, int):
        return state_map(f)
    if f[0] in ("&", "|"):
        return (f[0], frozenset(rename(c, state_map) for c in f[1]))
    return f


def on_letter(f, letter: frozenset):
    """Resolve letter predicates; the result mentions states only."""
    if isinstance(f, int):
        return f
    tag = f[0]
    if tag in ("T", "F"):
        return f
    if tag == "L":
        return TRUE if holds_prop(f[1], letter) else FALSE
    if tag == "NL":
        return FALSE if holds_prop(f[1], letter) else TRUE
    children = [on_letter(c, letter) for c in f[1]]
    return conj(children) if tag == "&" else disj(children)


def states_of(f) -> set[int]:
    if isinstance(f, int):
        return {f}
    if f[0] in ("&", "|"):
        return set().union(*(states_of(c) for c in f[1]))
    return set()


def evaluate(f, value: Callable[[int], bool]) -> bool:
    if isinstance(f, int):
        return value(f)
    tag = f[0]
    if tag == "T":
        return True
    if tag == "F":
        return False
    if tag == "&":
        return all(evaluate(c, value) for c in f[1])
    if tag == "|":
        return any(evaluate(c, value) for c in f[1])
    raise ValueError(f"letter predicate left in {f!r}")


def minimal_models(f) -> list[frozenset[int]]:
    """Inclusion-minimal state sets satisfying a letter-free formula."""
    if isinstance(f, int):
        return [frozenset([f])]
    tag = f[0]
    if tag == "T":
        return [frozenset()]
    if tag == "F":
        return []
    parts = [minimal_models(c) for c in f[1]]
    if tag == "|":
        return _minimize(m for ms in parts for m in ms)
    if tag == "&":
        return _minimize(frozenset().union(*combo) for combo in product(*parts))
    raise ValueError(f"letter predicate left in {f!r}")


def _minimize(models: Iterable[frozenset]) -> list[frozenset]:
    ordered = sorted(set(models), key=len)
    kept: list[frozenset] = []
    for m in ordered:
        if not any(k <= m for k in kept):
            kept.append(m)
    return kept


def render(f, name: Callable[[int], str] = str) -> str:
    if isinstance(f, int):
        return name(f)
    tag = f[0]
    if tag == "T":
        return "true"
    if tag == "F":
        return "false"
    if tag == "L":
        return f"[{f[1]}]"
    if tag == "NL":
        return f"[!({f[1]})]"
    sep = " & " if tag == "&" else " | "
    return "(" + sep.join(sorted(render(c, name) for c in f[1])) + ")"
