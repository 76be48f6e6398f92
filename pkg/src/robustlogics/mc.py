"""Model checking rLDL and rPrompt-LTL against finite transition systems.

Counterexamples are re-evaluated with the lasso evaluator before they are
reported; a disagreement raises :class:`InternalError` instead of producing a
wrong verdict.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .automata import build_apa, build_prompt_apa, dualize, remove_alternation
from .automata.nba import NBA
from .automata.search import find_accepting_lasso
from .formula import (
    Formula, LogicId, PromptEventually, check_fragment, fragment_of,
    propositions, subformulas,
)
from .lasso import LassoWord
from .reductions import lemma1_reduce, limit_formula
from .semantics import eval_rldl, eval_rprompt, eval_rpromptldl
from .truth import TruthValue


class SystemFormatError(ValueError):
    """Invalid transition system; ``line`` is the offending input line, if known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class InternalError(RuntimeError):
    """A computed counterexample did not survive re-evaluation."""


@dataclass(frozen=True)
class TransitionSystem:
    states: tuple[str, ...]
    init: str
    edges: dict = field(hash=False)
    labels: dict = field(hash=False)
    props: tuple[str, ...] | None = None
    lines: dict = field(default_factory=dict, hash=False, compare=False)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        known = set(self.states)
        if len(known) != len(self.states):
            raise SystemFormatError("duplicate state name", self.lines.get("states"))
        if self.init not in known:
            raise SystemFormatError(f"initial state {self.init} is not declared",
                                    self.lines.get("init"))
        for s, targets in self.edges.items():
            for t in (s, *targets):
                if t not in known:
                    raise SystemFormatError(f"unknown state {t}", self.lines.get(("edge", s, t)))
        for s in self.labels:
            if s not in known:
                raise SystemFormatError(f"label for unknown state {s}", self.lines.get(("label", s)))
        if self.props is not None:
            for s, lab in self.labels.items():
                extra = set(lab) - set(self.props)
                if extra:
                    raise SystemFormatError(f"unknown proposition {sorted(extra)[0]}",
                                            self.lines.get(("label", s)))
        for s in self.states:
            if not self.edges.get(s):
                raise SystemFormatError(f"terminal state {s} has no outgoing edge",
                                        self.lines.get(("state", s), self.lines.get("states")))

    def label(self, s: str) -> frozenset:
        return self.labels.get(s, frozenset())

    def successors(self, s: str) -> tuple[str, ...]:
        return self.edges[s]

    def check_formula(self, phi: Formula) -> None:
        if self.props is None:
            return
        extra = propositions(phi) - set(self.props)
        if extra:
            raise SystemFormatError(f"unknown proposition {sorted(extra)[0]} in formula")

    @classmethod
    def build(cls, states: Iterable[str], init: str, edges: Iterable[tuple[str, str]],
              labels: dict | None = None, props=None) -> "TransitionSystem":
        states = tuple(states)
        table: dict[str, list] = {s: [] for s in states}
        for a, b in edges:
            table.setdefault(a, [])
            if b not in table[a]:
                table[a].append(b)
        labels = {s: frozenset(v) for s, v in (labels or {}).items()}
        return cls(states, init, {s: tuple(t) for s, t in table.items()}, labels,
                   tuple(props) if props is not None else None)


def parse_system(text: str) -> TransitionSystem:
    """Read the line-oriented format (``states:``, ``init:``, ``label s:``, ``edge a b``).

    An optional ``props: p q`` line declares the proposition set; labels and
    formulas may then only use declared propositions.  ``#`` starts a comment.
    """
    states: list[str] = []
    init = None
    props = None
    labels: dict[str, frozenset] = {}
    edges: dict[str, list[str]] = {}
    lines: dict = {}
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("states:"):
            names = line[len("states:"):].split()
            if not names:
                raise SystemFormatError("no states declared", n)
            for s in names:
                lines.setdefault(("state", s), n)
            states.extend(names)
            lines.setdefault("states", n)
        elif line.startswith("init:"):
            parts = line[len("init:"):].split()
            if len(parts) != 1:
                raise SystemFormatError("init takes exactly one state", n)
            init = parts[0]
            lines["init"] = n
        elif line.startswith("props:"):
            props = tuple(line[len("props:"):].split())
            lines["props"] = n
        elif line.startswith("label"):
            head, sep, rest = line[len("label"):].partition(":")
            s = head.strip()
            rest = rest.strip()
            if not sep or not s or not (rest.startswith("{") and rest.endswith("}")):
                raise SystemFormatError("expected 'label <state>: {p,q}'", n)
            labels[s] = frozenset(x.strip() for x in rest[1:-1].split(",") if x.strip())
            lines[("label", s)] = n
        elif line.startswith("edge"):
            parts = line.split()
            if len(parts) != 3:
                raise SystemFormatError("expected 'edge <from> <to>'", n)
            _, a, b = parts
            edges.setdefault(a, [])
            if b not in edges[a]:
                edges[a].append(b)
            lines.setdefault(("edge", a, b), n)
        else:
            raise SystemFormatError(f"unrecognised line {line!r}", n)
    if not states:
        raise SystemFormatError("missing 'states:' line")
    if init is None:
        raise SystemFormatError("missing 'init:' line")
    return TransitionSystem(tuple(states), init, {s: tuple(t) for s, t in edges.items()},
                            labels, props, lines)


# --- verdicts ---------------------------------------------------------------

class VerdictKind(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    HOLDS_WITH_BOUND = "HoldsWithBound"
    FAILS_LIMIT = "FailsLimit"
    UNKNOWN_UP_TO = "UnknownUpTo"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    lasso: LassoWord | None = None
    path: tuple[tuple[str, ...], tuple[str, ...]] | None = None
    bound: int | None = None
    value: TruthValue | None = None

    @property
    def holds(self) -> bool:
        return self.kind in (VerdictKind.HOLDS, VerdictKind.HOLDS_WITH_BOUND)

    @property
    def exit_code(self) -> int:
        if self.holds:
            return 0
        return 2 if self.kind == VerdictKind.UNKNOWN_UP_TO else 1

    def __str__(self) -> str:
        if self.kind == VerdictKind.HOLDS:
            return "HOLDS"
        if self.kind == VerdictKind.HOLDS_WITH_BOUND:
            return f"HOLDS k={self.bound}"
        if self.kind == VerdictKind.FAILS:
            return f"FAILS {self.lasso}"
        if self.kind == VerdictKind.FAILS_LIMIT:
            return f"FAILS-LIMIT {self.lasso}"
        return f"UNKNOWN<={self.bound}"


HOLDS = Verdict(VerdictKind.HOLDS)


# --- automata-based checking ------------------------------------------------

@lru_cache(maxsize=512)
def violation_nba(phi: Formula, beta: TruthValue) -> NBA:
    """Lazy NBA for {w : V(w, phi) < beta}; shared across systems."""
    return remove_alternation(dualize(build_apa(phi, beta)))


@lru_cache(maxsize=512)
def prompt_violation_nba(psi: Formula, k: int) -> NBA:
    return remove_alternation(dualize(build_prompt_apa(psi, k)))


def find_violation(system: TransitionSystem, nba: NBA):
    """Accepting lasso of the product of ``system`` with ``nba``, as (stem, loop) state paths."""
    labels = {s: nba.project(system.label(s)) for s in system.states}

    def succ(node):
        s, n = node
        return [(s, (t, m)) for m in nba.succ(n, labels[s]) for t in system.successors(s)]

    found = find_accepting_lasso([(system.init, n) for n in nba.initial], succ,
                                 lambda node: nba.is_accepting(node[1]))
    if found is None:
        return None
    return tuple(s for (s, _), _ in found.stem), tuple(s for (s, _), _ in found.loop)


def _path_word(system: TransitionSystem, stem, loop) -> LassoWord:
    return LassoWord(tuple(system.label(s) for s in stem), tuple(system.label(s) for s in loop))


def _check_path(system: TransitionSystem, stem, loop) -> None:
    seq = list(stem) + list(loop) + [loop[0]]
    if seq[0] != system.init:
        raise InternalError("counterexample does not start in the initial state")
    for a, b in zip(seq, seq[1:]):
        if b not in system.successors(a):
            raise InternalError(f"counterexample uses a missing edge {a} -> {b}")


def _counterexample(system, path, kind, evaluate, beta) -> Verdict:
    stem, loop = path
    _check_path(system, stem, loop)
    word = _path_word(system, stem, loop)
    value = evaluate(word)
    if value >= beta:
        raise InternalError(f"counterexample {word} evaluates to {value}, not below {beta}")
    return Verdict(kind, word, (stem, loop), value=value)


def mc_rldl(system: TransitionSystem, phi: Formula, beta: TruthValue) -> Verdict:
    """Do all paths of ``system`` satisfy V(trace, phi) >= beta?"""
    check_fragment(phi, LogicId.RLDL)
    system.check_formula(phi)
    beta = TruthValue(beta)
    if beta == TruthValue.V0000:
        return HOLDS
    path = find_violation(system, violation_nba(phi, beta))
    if path is None:
        return HOLDS
    return _counterexample(system, path, VerdictKind.FAILS, lambda w: eval_rldl(w, phi), beta)


def mc_fixed_k(system: TransitionSystem, phi: Formula, beta: TruthValue, k: int) -> Verdict:
    """Do all paths satisfy V(trace, k, phi) >= beta for this fixed k?"""
    check_fragment(phi, LogicId.RPROMPT_LTL)
    system.check_formula(phi)
    beta = TruthValue(beta)
    if beta == TruthValue.V0000:
        return HOLDS
    psi = lemma1_reduce(phi, beta)
    path = find_violation(system, prompt_violation_nba(psi, k))
    if path is None:
        return HOLDS
    return _counterexample(system, path, VerdictKind.FAILS,
                           lambda w: eval_rprompt(w, k, phi), beta)


def default_cutoff(system: TransitionSystem, phi: Formula) -> int:
    return len(system.states) * 4 ** len(subformulas(phi))


def mc_rprompt(system: TransitionSystem, phi: Formula, beta: TruthValue,
               cutoff: int | None = None) -> Verdict:
    """Least k such that every path reaches beta at bound k, if one exists up to ``cutoff``.

    Raising k only helps, and the value at any k is bounded by the value of
    the formula with every Fp read as F.  So a failure of that limit formula
    refutes every k, and otherwise the first k that holds is optimal.
    """
    check_fragment(phi, LogicId.RPROMPT_LTL)
    system.check_formula(phi)
    beta = TruthValue(beta)
    if beta == TruthValue.V0000:
        return Verdict(VerdictKind.HOLDS_WITH_BOUND, bound=0)
    limit = limit_formula(phi)
    verdict = mc_fixed_k(system, limit, beta, 0)
    if not verdict.holds:
        return Verdict(VerdictKind.FAILS_LIMIT, verdict.lasso, verdict.path, value=verdict.value)
    has_prompt = any(isinstance(f, PromptEventually) for f in subformulas(phi))
    if cutoff is None:
        cutoff = default_cutoff(system, phi)
    for k in range(cutoff + 1):
        if mc_fixed_k(system, phi, beta, k).holds:
            return Verdict(VerdictKind.HOLDS_WITH_BOUND, bound=k)
        if not has_prompt:
            break
    return Verdict(VerdictKind.UNKNOWN_UP_TO, bound=cutoff)


# --- brute force --------------------------------------------------------------

class WorkLimitExceeded(RuntimeError):
    pass


def system_lassos(system: TransitionSystem, stem_bound: int, loop_bound: int,
                  props: Iterable[str] | None = None, work_limit: int = 1_000_000) -> dict:
    """Canonical lasso traces of the system with their state paths, shortest first.

    Paths are stems of at most ``stem_bound`` states followed by a simple
    cycle of at most ``loop_bound`` states.  Labels are projected onto
    ``props`` when given, and paths with the same projected trace are merged.
    """
    keep = frozenset(props) if props is not None else None

    def lab(s):
        full = system.label(s)
        return full & keep if keep is not None else full

    cycles: dict[str, list[tuple[str, ...]]] = {}

    def simple_cycles(c0):
        if c0 not in cycles:
            found = []
            stack = [(c0,)]
            while stack:
                path = stack.pop()
                for t in system.successors(path[-1]):
                    if t == c0:
                        found.append(path)
                    elif t not in path and len(path) < loop_bound:
                        stack.append(path + (t,))
            cycles[c0] = found
        return cycles[c0]

    out: dict[LassoWord, tuple] = {}
    work = 0
    # stems keyed by (projected labels, last state); one representative path each
    layer: dict = {((), None): ()}
    for depth in range(stem_bound + 1):
        for (labels, last), path in layer.items():
            heads = (system.init,) if last is None else system.successors(last)
            for c0 in heads:
                for cyc in simple_cycles(c0):
                    work += 1
                    if work > work_limit:
                        raise WorkLimitExceeded(f"more than {work_limit} lassos")
                    word = LassoWord(labels, tuple(lab(s) for s in cyc)).canonical()
                    best = out.get(word)
                    if best is None or len(path) + len(cyc) < len(best[0]) + len(best[1]):
                        out[word] = (path, cyc)
        if depth == stem_bound:
            break
        nxt: dict = {}
        for (labels, last), path in layer.items():
            heads = (system.init,) if last is None else system.successors(last)
            for s in heads:
                nxt.setdefault((labels + (lab(s),), s), path + (s,))
        layer = nxt
    return dict(sorted(out.items(), key=lambda kv: (kv[0].n_classes, str(kv[0]))))


def _evaluator(phi: Formula, k: int | None):
    logics = fragment_of(phi)
    if k is None:
        if LogicId.RLDL not in logics:
            raise ValueError("without a bound k the formula must be rLDL")
        return lambda w: eval_rldl(w, phi)
    if LogicId.RPROMPT_LTL in logics:
        return lambda w: eval_rprompt(w, k, phi)
    if LogicId.RPROMPT_LDL in logics:
        return lambda w: eval_rpromptldl(w, k, phi)
    raise ValueError("with a bound k the formula must be rPrompt-LTL or rPrompt-LDL")


def brute_force_mc(system: TransitionSystem, phi: Formula, beta: TruthValue,
                   k: int | None = None, stem_bound: int = 6, loop_bound: int = 6,
                   work_limit: int = 1_000_000, lassos: dict | None = None,
                   cache: dict | None = None) -> Verdict:
    """Testing oracle: evaluate every bounded lasso path directly.

    Returns Fails with the first violating lasso in :func:`system_lassos`
    order (shortest first), or Holds, meaning
    "holds on every enumerated lasso".  ``lassos`` may pass a precomputed
    :func:`system_lassos` table and ``cache`` a shared value memo.
    """
    beta = TruthValue(beta)
    evaluate = _evaluator(phi, k)
    if lassos is None:
        lassos = system_lassos(system, stem_bound, loop_bound, propositions(phi), work_limit)
    cache = {} if cache is None else cache
    for word, (stem, loop) in lassos.items():
        key = (phi, k, word)
        value = cache.get(key)
        if value is None:
            value = cache[key] = evaluate(word)
        if value < beta:
            return Verdict(VerdictKind.FAILS, _path_word(system, stem, loop), (stem, loop),
                           value=evaluate(_path_word(system, stem, loop)))
    return HOLDS

