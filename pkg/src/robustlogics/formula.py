"""Formula and guard syntax trees shared by every logic in the package.

One AST covers rLTL(G,F), LDL, Prompt-LTL, rLDL, rPrompt-LTL and
rPrompt-LDL; which logic a formula belongs to is decided by
:func:`fragment_of`.  Whether an operator is read robustly or classically is
a property of the evaluator, not of the tree.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator


class FragmentError(ValueError):
    """A formula uses a construct outside the requested logic."""


class LogicId(enum.Enum):
    RLTL = "rLTL"
    LDL = "LDL"
    PROMPT_LTL = "PromptLTL"
    RLDL = "rLDL"
    RPROMPT_LTL = "rPromptLTL"
    RPROMPT_LDL = "rPromptLDL"

    @classmethod
    def lookup(cls, name: str) -> "LogicId":
        key = name.lower().replace("-", "").replace("_", "")
        for logic in cls:
            if logic.value.lower() == key:
                return logic
        aliases = {"rprompt": cls.RPROMPT_LTL, "prompt": cls.PROMPT_LTL,
                   "rpromptldl": cls.RPROMPT_LDL}
        if key in aliases:
            return aliases[key]
        raise ValueError(f"unknown logic: {name!r}")


class _Node:
    """Frozen dataclass base with a cached structural hash."""

    __slots__ = ()

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((type(self).__name__,) + tuple(
                getattr(self, f) for f in self.__dataclass_fields__))
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self) -> str:
        from .syntax import render, render_guard
        if isinstance(self, Guard):
            return render_guard(self)
        return render(self)


# --- formulas ---------------------------------------------------------------

class Formula(_Node):
    __slots__ = ()

    def children(self) -> tuple["Formula", ...]:
        return ()

    def guard(self) -> "Guard | None":
        return None


@dataclass(frozen=True, eq=True)
class Atom(Formula):
    name: str

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class TT(Formula):
    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class FF(Formula):
    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Not(Formula):
    arg: Formula

    __hash__ = _Node.__hash__

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, eq=True)
class And(Formula):
    left: Formula
    right: Formula

    __hash__ = _Node.__hash__

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=True)
class Or(Formula):
    left: Formula
    right: Formula

    __hash__ = _Node.__hash__

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=True)
class Implies(Formula):
    left: Formula
    right: Formula

    __hash__ = _Node.__hash__

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=True)
class Eventually(Formula):
    arg: Formula

    __hash__ = _Node.__hash__

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, eq=True)
class Always(Formula):
    arg: Formula

    __hash__ = _Node.__hash__

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, eq=True)
class PromptEventually(Formula):
    arg: Formula

    __hash__ = _Node.__hash__

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, eq=True)
class Diamond(Formula):
    regex: "Guard"
    arg: Formula

    __hash__ = _Node.__hash__

    def children(self):
        return (self.arg,)

    def guard(self):
        return self.regex


@dataclass(frozen=True, eq=True)
class Box(Formula):
    regex: "Guard"
    arg: Formula

    __hash__ = _Node.__hash__

    def children(self):
        return (self.arg,)

    def guard(self):
        return self.regex


@dataclass(frozen=True, eq=True)
class PromptDiamond(Formula):
    regex: "Guard"
    arg: Formula

    __hash__ = _Node.__hash__

    def children(self):
        return (self.arg,)

    def guard(self):
        return self.regex


# --- guards -----------------------------------------------------------------

class Guard(_Node):
    __slots__ = ()

    def parts(self) -> tuple["Guard", ...]:
        return ()


@dataclass(frozen=True, eq=True)
class GProp(Guard):
    """Consumes one letter satisfying a propositional formula."""
    prop: Formula

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class GTest(Guard):
    """Consumes nothing; requires ``formula`` to hold at the current position."""
    formula: Formula

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class GUnion(Guard):
    left: Guard
    right: Guard

    __hash__ = _Node.__hash__

    def parts(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=True)
class GConcat(Guard):
    left: Guard
    right: Guard

    __hash__ = _Node.__hash__

    def parts(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=True)
class GStar(Guard):
    arg: Guard

    __hash__ = _Node.__hash__

    def parts(self):
        return (self.arg,)


# --- traversal and measures -------------------------------------------------

def guard_tests(r: Guard) -> Iterator[Formula]:
    if isinstance(r, GTest):
        yield r.formula
    for part in r.parts():
        yield from guard_tests(part)


def guard_nodes(r: Guard) -> int:
    return 1 + sum(guard_nodes(part) for part in r.parts())


def direct_subformulas(phi: Formula) -> tuple[Formula, ...]:
    """Children plus the bodies of tests in the guard, if any."""
    r = phi.guard()
    if r is None:
        return phi.children()
    return tuple(guard_tests(r)) + phi.children()


def subformulas(phi: Formula) -> set[Formula]:
    """cl(phi): all subformulas including test bodies, excluding guards."""
    seen: set[Formula] = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        stack.extend(direct_subformulas(node))
    return seen


def _guard_length_total(phi: Formula) -> int:
    total = 0
    r = phi.guard()
    if r is not None:
        total += guard_nodes(r)
    for sub in direct_subformulas(phi):
        total += _guard_length_total(sub)
    return total


def size(phi: Formula) -> int:
    """|cl(phi)| plus the node count of every guard occurrence."""
    return len(subformulas(phi)) + _guard_length_total(phi)


def node_count(phi: Formula) -> int:
    """Tree size, counting guard nodes; used to bound random generators."""
    n = 1 + sum(node_count(c) for c in phi.children())
    r = phi.guard()
    if r is not None:
        n += _guard_tree_size(r)
    return n


def _guard_tree_size(r: Guard) -> int:
    if isinstance(r, GTest):
        return 1 + node_count(r.formula)
    return 1 + sum(_guard_tree_size(p) for p in r.parts())


def propositions(phi: Formula) -> set[str]:
    out: set[str] = set()

    def visit_formula(f: Formula) -> None:
        if isinstance(f, Atom):
            out.add(f.name)
        for c in f.children():
            visit_formula(c)
        r = f.guard()
        if r is not None:
            visit_guard(r)

    def visit_guard(r: Guard) -> None:
        if isinstance(r, GProp):
            visit_formula(r.prop)
        elif isinstance(r, GTest):
            visit_formula(r.formula)
        for p in r.parts():
            visit_guard(p)

    visit_formula(phi)
    return out


def holds_prop(phi: Formula, letter: frozenset) -> bool:
    """A |= phi for a propositional formula phi."""
    if isinstance(phi, Atom):
        return phi.name in letter
    if isinstance(phi, TT):
        return True
    if isinstance(phi, FF):
        return False
    if isinstance(phi, Not):
        return not holds_prop(phi.arg, letter)
    if isinstance(phi, And):
        return holds_prop(phi.left, letter) and holds_prop(phi.right, letter)
    if isinstance(phi, Or):
        return holds_prop(phi.left, letter) or holds_prop(phi.right, letter)
    raise FragmentError(f"not propositional: {phi}")


def is_propositional(phi: Formula) -> bool:
    if isinstance(phi, (Atom, TT, FF)):
        return True
    if isinstance(phi, (Not, And, Or)):
        return all(is_propositional(c) for c in phi.children())
    return False


# --- fragments --------------------------------------------------------------

_BOOLEAN = (Atom, TT, FF, And, Or)
_LTL_TEMPORAL = (Eventually, Always)


def _in_fragment(phi: Formula, allowed: tuple, literal_negation: bool,
                 recurse_tests: bool) -> bool:
    if not isinstance(phi, allowed):
        return False
    if isinstance(phi, Not) and literal_negation and not isinstance(phi.arg, Atom):
        return False
    r = phi.guard()
    if r is not None and recurse_tests:
        for body in guard_tests(r):
            if not _in_fragment(body, allowed, literal_negation, recurse_tests):
                return False
    return all(_in_fragment(c, allowed, literal_negation, recurse_tests)
               for c in phi.children())


def fragment_of(phi: Formula) -> set[LogicId]:
    out = set()
    if _in_fragment(phi, _BOOLEAN + (Not, Implies) + _LTL_TEMPORAL, False, False):
        out.add(LogicId.RLTL)
    if _in_fragment(phi, _BOOLEAN + (Not, PromptEventually) + _LTL_TEMPORAL, True, False):
        out.add(LogicId.RPROMPT_LTL)
        out.add(LogicId.PROMPT_LTL)
    if _in_fragment(phi, _BOOLEAN + (Not, Implies, Diamond, Box), False, True):
        out.add(LogicId.LDL)
        out.add(LogicId.RLDL)
    if _in_fragment(phi, _BOOLEAN + (Not, Diamond, Box, PromptDiamond), True, True):
        out.add(LogicId.RPROMPT_LDL)
    return out


def offending_construct(phi: Formula, logic: LogicId) -> str:
    """Human-readable description of the first construct outside ``logic``."""
    stack = [phi]
    while stack:
        node = stack.pop()
        single = _single_node_ok(node, logic)
        if single is not None:
            return single
        stack.extend(direct_subformulas(node))
    return "formula"


_NAMES = {Implies: "implication", Not: "negation", Eventually: "eventually (F)",
          Always: "always (G)", PromptEventually: "prompt-eventually (Fp)",
          Diamond: "diamond <r>", Box: "box [r]", PromptDiamond: "prompt-diamond <<r>>"}


def _single_node_ok(node: Formula, logic: LogicId) -> str | None:
    allowed = {
        LogicId.RLTL: _BOOLEAN + (Not, Implies) + _LTL_TEMPORAL,
        LogicId.PROMPT_LTL: _BOOLEAN + (Not, PromptEventually) + _LTL_TEMPORAL,
        LogicId.RPROMPT_LTL: _BOOLEAN + (Not, PromptEventually) + _LTL_TEMPORAL,
        LogicId.LDL: _BOOLEAN + (Not, Implies, Diamond, Box),
        LogicId.RLDL: _BOOLEAN + (Not, Implies, Diamond, Box),
        LogicId.RPROMPT_LDL: _BOOLEAN + (Not, Diamond, Box, PromptDiamond),
    }[logic]
    literal_only = logic in (LogicId.PROMPT_LTL, LogicId.RPROMPT_LTL, LogicId.RPROMPT_LDL)
    if not isinstance(node, allowed):
        return f"{_NAMES.get(type(node), type(node).__name__)} not in fragment {logic.value}"
    if literal_only and isinstance(node, Not) and not isinstance(node.arg, Atom):
        return f"negation of a non-atomic formula not in fragment {logic.value}"
    return None


def check_fragment(phi: Formula, logic: LogicId) -> None:
    if logic not in fragment_of(phi):
        raise FragmentError(offending_construct(phi, logic))
