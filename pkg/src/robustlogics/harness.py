"""Random instance generators, the fixed rLDL corpus, and seeded check suites.

Each suite returns a :class:`SuiteResult`; the ``oracle-check`` command and
the acceptance tests both run them.  All randomness flows from one
``random.Random(seed)`` per suite, so a seed and count reproduce an instance
set exactly.
"""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field

from .automata import (
    apa_accepts_lasso, build_apa, export_hoa, nba_accepts_lasso, parse_hoa, remove_alternation,
)
from .classical import eval_ldl, eval_prompt, eval_rltl
from .formula import (
    FF, TT, Always, And, Atom, Box, Diamond, Eventually, Formula, GConcat, GProp, GStar,
    GTest, Guard, GUnion, Implies, LogicId, Not, Or, PromptDiamond, PromptEventually,
    node_count, size, subformulas,
)
from .lasso import LassoWord, all_lassos, powerset_alphabet
from .mc import TransitionSystem, brute_force_mc, mc_rldl, system_lassos
from .reductions import embed_ldl, embed_rltl, lemma1_reduce
from .semantics import Engine, eval_rldl, eval_rprompt
from .syntax import parse, render
from .truth import ALL_VALUES, NONZERO, TruthValue, bit

PROPS = ("p", "q")

# rLDL formulas of at most 10 nodes (the two-box implication from the
# even/odd example has 15 and is included on purpose).
CORPUS_TEXT = [
    "p",
    "!p",
    "[tt*] p",
    "<tt*> p",
    "[{[tt*] p}?] ff",
    "[(tt;tt)*] q",
    "[tt;(tt;tt)*] p",
    "[(tt;tt)*] q -> [tt;(tt;tt)*] p",
    "[tt*] <tt*> p",
    "<tt*> [tt*] p",
    "[tt*] (p -> <tt*> q)",
    "[tt*] p -> [tt*] q",
    "![tt*] p",
    "[tt*] p & [tt*] q",
    "[tt*] p | <tt*> q",
    "[p*] q",
    "<p*;q> tt",
    "[(p;q)*] p",
    "[(!p)*;p] q",
    "<(tt;tt)*> p",
    "[tt*;{p}?] q",
    "[{p}?;tt] q",
    "[tt*] [tt*] p",
    "<tt*> (p & <tt> !p)",
    "[(p + q)*] p",
    "[tt;tt] p",
    "<tt;{q}?> p",
    "[tt*] (p | q)",
    "p -> [tt*] p",
    "[tt*] !p",
    "[(tt;tt)*;{p}?] ff",
    "[{<tt*> p}?;tt*] q",
    "<{[tt*] q}?> p",
    "[tt*] p -> p",
]


def corpus() -> list[Formula]:
    return [parse(t, LogicId.RLDL) for t in CORPUS_TEXT]


# --- generators ---------------------------------------------------------------

_LOGIC_OPS = {
    LogicId.RLTL: ("not", "and", "or", "implies", "F", "G"),
    LogicId.LDL: ("not", "and", "or", "implies", "diamond", "box"),
    LogicId.RLDL: ("not", "and", "or", "implies", "diamond", "box"),
    LogicId.PROMPT_LTL: ("nlit", "and", "or", "F", "G", "Fp"),
    LogicId.RPROMPT_LTL: ("nlit", "and", "or", "F", "G", "Fp"),
    LogicId.RPROMPT_LDL: ("nlit", "and", "or", "diamond", "box", "pdiamond"),
}


def random_formula(rng: random.Random, logic: LogicId, max_nodes: int,
                   props=PROPS) -> Formula:
    """Random formula of ``logic`` with at most ``max_nodes`` nodes (guards included)."""
    return _formula(rng, logic, rng.randint(1, max_nodes), tuple(props))


def _leaf(rng, props) -> Formula:
    roll = rng.random()
    if roll < 0.08:
        return TT()
    if roll < 0.12:
        return FF()
    return Atom(rng.choice(props))


def _formula(rng, logic, n, props) -> Formula:
    if n <= 1:
        return _leaf(rng, props)
    ops = [op for op in _LOGIC_OPS[logic] if op != "nlit" or n >= 2]
    if n < 3:
        ops = [op for op in ops if op not in ("and", "or", "implies", "diamond", "box", "pdiamond")]
    if not ops:
        return _leaf(rng, props)
    op = rng.choice(ops)
    if op == "nlit":
        return Not(Atom(rng.choice(props)))
    if op == "not":
        return Not(_formula(rng, logic, n - 1, props))
    if op in ("F", "G", "Fp"):
        ctor = {"F": Eventually, "G": Always, "Fp": PromptEventually}[op]
        return ctor(_formula(rng, logic, n - 1, props))
    if op in ("and", "or", "implies"):
        a = rng.randint(1, n - 2)
        ctor = {"and": And, "or": Or, "implies": Implies}[op]
        return ctor(_formula(rng, logic, a, props), _formula(rng, logic, n - 1 - a, props))
    g = rng.randint(1, n - 2)
    ctor = {"diamond": Diamond, "box": Box, "pdiamond": PromptDiamond}[op]
    return ctor(random_guard(rng, logic, g, props), _formula(rng, logic, n - 1 - g, props))


def random_guard(rng: random.Random, logic: LogicId, n: int, props=PROPS) -> Guard:
    """Random guard with exactly ``n`` nodes when possible; tests use ``logic``."""
    if n <= 1:
        roll = rng.random()
        if roll < 0.35:
            return GProp(TT())
        if roll < 0.5:
            return GProp(Not(Atom(rng.choice(props))))
        return GProp(Atom(rng.choice(props)))
    roll = rng.random()
    if roll < 0.2:
        return GTest(_formula(rng, logic, n - 1, props))
    if roll < 0.45:
        return GStar(random_guard(rng, logic, n - 1, props))
    if n < 3:
        return GStar(random_guard(rng, logic, n - 1, props))
    a = rng.randint(1, n - 2)
    ctor = GConcat if roll < 0.75 else GUnion
    return ctor(random_guard(rng, logic, a, props), random_guard(rng, logic, n - 1 - a, props))


def random_lasso(rng: random.Random, props=PROPS, max_stem: int = 4,
                 max_loop: int = 4) -> LassoWord:
    alphabet = powerset_alphabet(props)
    stem = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_stem)))
    loop = tuple(rng.choice(alphabet) for _ in range(rng.randint(1, max_loop)))
    return LassoWord(stem, loop)


def random_system(rng: random.Random, n_states: int, props=PROPS,
                  max_out: int = 2) -> TransitionSystem:
    names = [f"s{i}" for i in range(n_states)]
    alphabet = powerset_alphabet(props)
    edges = []
    for s in names:
        for t in rng.sample(names, rng.randint(1, min(max_out, n_states))):
            edges.append((s, t))
    labels = {s: rng.choice(alphabet) for s in names}
    return TransitionSystem.build(names, "s0", edges, labels)


def all_systems(n_states: int, props=("p",)):
    """Every system on s0..s{n-1} with initial state s0 and total edge relation."""
    names = [f"s{i}" for i in range(n_states)]
    alphabet = powerset_alphabet(props)
    succ_sets = [c for r in range(1, n_states + 1) for c in itertools.combinations(names, r)]
    for labels in itertools.product(alphabet, repeat=n_states):
        for succs in itertools.product(succ_sets, repeat=n_states):
            edges = [(s, t) for s, ts in zip(names, succs) for t in ts]
            yield TransitionSystem.build(names, "s0", edges, dict(zip(names, labels)))


# --- suites -------------------------------------------------------------------

@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    violations: int = 0
    first_failure: str | None = None
    notes: list[str] = field(default_factory=list)
    counts: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def fail(self, message: str) -> None:
        self.violations += 1
        if self.first_failure is None:
            self.first_failure = message

    def summary(self) -> str:
        status = "ok" if self.ok else "FAILED"
        line = f"{self.name}: {status} ({self.checked} checked, {self.violations} violations)"
        if self.first_failure:
            line += f"\n  first failure: {self.first_failure}"
        return line


def suite_lemma1(count: int = 10_000, seed: int = 0, max_nodes: int = 8) -> SuiteResult:
    """V(w,k,phi) >= beta iff the level-beta Prompt-LTL formula holds, for all five beta."""
    rng = random.Random(seed)
    res = SuiteResult("lemma1")
    for _ in range(count):
        phi = random_formula(rng, LogicId.RPROMPT_LTL, max_nodes)
        w = random_lasso(rng)
        k = rng.randint(0, 6)
        value = eval_rprompt(w, k, phi)
        for beta in ALL_VALUES:
            reduced = lemma1_reduce(phi, beta)
            res.checked += 1
            if (value >= beta) != bool(eval_prompt(w, k, reduced)):
                res.fail(f"phi={phi} beta={beta} w={w} k={k} value={value} reduced={reduced}")
            elif size(reduced) > 2 * size(phi) + 2:
                res.fail(f"size bound: phi={phi} beta={beta} reduced={reduced}")
    return res


def suite_embed(count: int = 10_000, seed: int = 0, max_nodes: int = 8) -> SuiteResult:
    """rLTL values survive embedding; LDL truth is bit 1 of the embedded value."""
    rng = random.Random(seed)
    res = SuiteResult("embed")
    for _ in range(count):
        phi = random_formula(rng, LogicId.RLTL, max_nodes)
        w = random_lasso(rng)
        res.checked += 1
        a, b = eval_rltl(w, phi), eval_rldl(w, embed_rltl(phi))
        if a != b:
            res.fail(f"rltl phi={phi} w={w}: {a} vs {b}")
        psi = random_formula(rng, LogicId.LDL, max_nodes)
        res.checked += 1
        c, d = eval_ldl(w, psi), bit(eval_rldl(w, embed_ldl(psi)), 1)
        if c != d:
            res.fail(f"ldl phi={psi} w={w}: {c} vs bit1 {d}")
    return res


def suite_compile(count: int = 300, seed: int = 0, max_nodes: int = 6,
                  lassos_per_formula: int = 10) -> SuiteResult:
    """Random rLDL formulas: APA and NBA membership equal [value >= beta]."""
    rng = random.Random(seed)
    res = SuiteResult("compile")
    for _ in range(count):
        phi = random_formula(rng, LogicId.RLDL, max_nodes)
        words = [random_lasso(rng, max_stem=3, max_loop=3) for _ in range(lassos_per_formula)]
        values = [eval_rldl(w, phi) for w in words]
        for beta in NONZERO:
            apa = build_apa(phi, beta, PROPS)
            nba = remove_alternation(apa)
            for w, v in zip(words, values):
                res.checked += 1
                want = int(v >= beta)
                got_apa, got_nba = apa_accepts_lasso(apa, w), nba_accepts_lasso(nba, w)
                if got_apa != want or got_nba != want:
                    res.fail(f"phi={phi} beta={beta} w={w} value={v} apa={got_apa} nba={got_nba}")
    return res


def check_corpus_formula(phi: Formula, words, res: SuiteResult, with_apa: bool = True) -> None:
    """Exhaustive agreement of NBA (and APA) membership with the evaluator."""
    values = [eval_rldl(w, phi) for w in words]
    for beta in NONZERO:
        apa = build_apa(phi, beta, PROPS)
        nba = remove_alternation(apa)
        for w, v in zip(words, values):
            res.checked += 1
            want = int(v >= beta)
            got = nba_accepts_lasso(nba, w)
            if got != want:
                res.fail(f"nba phi={phi} beta={beta} w={w} value={v} got={got}")
            if with_apa and apa_accepts_lasso(apa, w) != got:
                res.fail(f"apa/nba disagree phi={phi} beta={beta} w={w}")


def canonical_lassos(props=PROPS, max_total: int = 5) -> list[LassoWord]:
    """Distinct infinite words among all lassos with |u| + |v| <= max_total."""
    return list(dict.fromkeys(w.canonical() for w in all_lassos(powerset_alphabet(props), max_total)))


def suite_mc(count: int = 100, seed: int = 0, formulas=None) -> SuiteResult:
    """mc_rldl against the brute-force oracle on random 4-6 state systems."""
    rng = random.Random(seed)
    res = SuiteResult("mc")
    formulas = formulas if formulas is not None else [f for f in corpus() if node_count(f) <= 8]
    cache: dict = {}
    for _ in range(count):
        system = random_system(rng, rng.randint(4, 6))
        lassos = system_lassos(system, 6, 6, PROPS)
        for phi in formulas:
            for beta in NONZERO:
                res.checked += 1
                message = compare_mc(system, phi, beta, lassos, cache)
                if message:
                    res.fail(message)
    return res


def compare_mc(system, phi, beta, lassos, cache) -> str | None:
    """None when mc_rldl and the brute-force oracle are consistent."""
    verdict = mc_rldl(system, phi, beta)
    brute = brute_force_mc(system, phi, beta, lassos=lassos, cache=cache)
    if not brute.holds and verdict.holds:
        return f"mc holds but {brute.lasso} violates: phi={phi} beta={beta} system={system_text(system)}"
    if not verdict.holds:
        if eval_rldl(verdict.lasso, phi) >= beta:
            return f"counterexample {verdict.lasso} does not violate phi={phi} beta={beta}"
        if brute.holds and verdict.lasso.canonical() in lassos:
            return f"brute force missed {verdict.lasso} for phi={phi} beta={beta}"
    return None


def system_text(system: TransitionSystem) -> str:
    parts = [f"states: {' '.join(system.states)}", f"init: {system.init}"]
    for s in system.states:
        parts.append(f"label {s}: {{{','.join(sorted(system.label(s)))}}}")
    for s in system.states:
        parts.extend(f"edge {s} {t}" for t in system.successors(s))
    return "; ".join(parts)


def suite_invariants(count: int = 10_000, seed: int = 0) -> SuiteResult:
    """Well-definedness, match-set nesting, k-monotonicity, max-form of F/Fp, box closed form."""
    rng = random.Random(seed)
    res = SuiteResult("invariants")
    for _ in range(count):
        w = random_lasso(rng)
        phi = random_formula(rng, LogicId.RLDL, 8)
        engine = Engine(w)
        try:
            engine.value(phi)                       # asserts monotone bit vectors
        except ValueError as exc:
            res.fail(f"ill-defined value: phi={phi} w={w}: {exc}")
            continue
        res.checked += 1
        res.counts["well-defined"] += 1
        for node in _boxes_and_guards(phi):
            for c in range(w.n_classes):
                sets = [engine.match_set(node.regex, i, c) for i in (1, 2, 3, 4)]
                res.counts["match-set nesting"] += 1
                if not all(sets[i].issubset(sets[i + 1]) for i in range(3)):
                    res.fail(f"match sets not nested: r={node.regex} w={w} start={c}")
                if isinstance(node, Box):
                    res.counts["box closed form"] += 1
                    if engine.box_pre_bits(node, c) != engine.box_closed_form_bits(node, c):
                        res.fail(f"box closed form differs: {node} w={w} start={c}")
        psi = random_formula(rng, LogicId.RPROMPT_LTL, 8)
        k = rng.randint(0, 5)
        res.checked += 1
        res.counts["k-monotonicity"] += 1
        if eval_rprompt(w, k, psi) > eval_rprompt(w, k + 1, psi):
            res.fail(f"k-monotonicity: phi={psi} w={w} k={k}")
        prompt_engine = Engine(w, k)
        for node in [Eventually(psi), PromptEventually(psi)]:
            res.checked += 1
            res.counts["max form"] += 1
            got = prompt_engine.value(node)[0]
            inner = prompt_engine.value(psi)
            if isinstance(node, Eventually):
                want = max(inner[x] for x in w.reachable_classes(0))
            else:
                want = max(inner[w.suffix_class(j)] for j in range(k + 1))
            if got != want:
                res.fail(f"max form: {node} w={w} k={k}: {got} vs {want}")
    return res


def _boxes_and_guards(phi: Formula):
    return [f for f in subformulas(phi) if isinstance(f, (Box, Diamond))]


def suite_roundtrip(count: int = 10_000, seed: int = 0) -> SuiteResult:
    """parse(render(phi)) == phi for every fragment."""
    rng = random.Random(seed)
    res = SuiteResult("roundtrip")
    for logic in LogicId:
        for _ in range(count):
            phi = random_formula(rng, logic, 10)
            res.checked += 1
            text = render(phi)
            try:
                back = parse(text, logic)
            except ValueError as exc:
                res.fail(f"{logic.value}: {text!r} does not parse: {exc}")
                continue
            if back != phi:
                res.fail(f"{logic.value}: {text!r} parses to {back!r}")
    return res


def suite_hoa(formulas=None, words=None) -> SuiteResult:
    """Exported and re-read HOA automata accept the same corpus lassos."""
    res = SuiteResult("hoa")
    formulas = formulas if formulas is not None else corpus()
    words = words if words is not None else canonical_lassos(PROPS, 4)
    for phi in formulas:
        for beta in NONZERO:
            nba = remove_alternation(build_apa(phi, beta, PROPS))
            back = parse_hoa(export_hoa(nba))
            if back.aps != PROPS:
                res.fail(f"AP order changed for {phi}: {back.aps}")
            for w in words:
                res.checked += 1
                if nba_accepts_lasso(nba, w) != nba_accepts_lasso(back, w):
                    res.fail(f"hoa round trip phi={phi} beta={beta} w={w}")
    return res


SUITES = {
    "lemma1": suite_lemma1,
    "embed": suite_embed,
    "compile": suite_compile,
    "mc": suite_mc,
    "invariants": suite_invariants,
}

# instance counts for a default oracle-check run (a few seconds per suite)
DEFAULT_COUNTS = {
    "lemma1": 2000,
    "embed": 2000,
    "compile": 60,
    "mc": 10,
    "invariants": 2000,
}
