import random

import pytest

from robustlogics.formula import LogicId
from robustlogics.harness import corpus, random_system
from robustlogics.mc import (
    SystemFormatError, TransitionSystem, VerdictKind, brute_force_mc, mc_fixed_k, mc_rldl,
    mc_rprompt, parse_system,
)
from robustlogics.semantics import eval_rldl, eval_rprompt
from robustlogics.syntax import parse
from robustlogics.truth import ALL_VALUES, TruthValue as V

SELF_P = TransitionSystem.build(["s"], "s", [("s", "s")], {"s": {"p"}}, ["p"])
SELF_EMPTY = TransitionSystem.build(["s"], "s", [("s", "s")], {"s": set()}, ["s"])
TWO_CYCLE = parse_system("""
states: s0 s1
init: s0
label s0: {p}
label s1: {}
edge s0 s1
edge s1 s0
""")
THREE_CYCLE = parse_system("""
states: s0 s1 s2
init: s0
label s0: {s}
edge s0 s1
edge s1 s2
edge s2 s0
""")
G_FP_S = parse("G Fp s", LogicId.RPROMPT_LTL)


def test_single_state():
    assert mc_rldl(SELF_P, parse("[tt*] p"), V.V1111).kind == VerdictKind.HOLDS
    assert brute_force_mc(SELF_P, parse("[tt*] p"), V.V1111).holds


def test_two_cycle():
    assert mc_rldl(TWO_CYCLE, parse("[(tt;tt)*] p"), V.V1111).holds
    verdict = mc_rldl(TWO_CYCLE, parse("[tt*] p"), V.V0111)
    assert verdict.kind == VerdictKind.FAILS and verdict.value == V.V0011
    assert eval_rldl(verdict.lasso, parse("[tt*] p")) == V.V0011
    assert str(verdict).startswith("FAILS {p} {}") and verdict.exit_code == 1
    assert brute_force_mc(TWO_CYCLE, parse("[tt*] p"), V.V0111).value == V.V0011


def test_fixed_bound():
    assert mc_fixed_k(THREE_CYCLE, G_FP_S, V.V1111, 2).holds
    verdict = mc_fixed_k(THREE_CYCLE, G_FP_S, V.V1111, 1)
    assert not verdict.holds and verdict.value == V.V0011
    assert eval_rprompt(verdict.lasso, 1, G_FP_S) == V.V0011
    for k in range(3):
        assert mc_fixed_k(THREE_CYCLE, G_FP_S, V.V0000, k).holds


def test_bound_search():
    assert str(mc_rprompt(THREE_CYCLE, G_FP_S, V.V1111)) == "HOLDS k=2"
    assert str(mc_rprompt(THREE_CYCLE, G_FP_S, V.V0011)) == "HOLDS k=0"
    verdict = mc_rprompt(SELF_EMPTY, parse("Fp s", LogicId.RPROMPT_LTL), V.V0001)
    assert verdict.kind == VerdictKind.FAILS_LIMIT and verdict.exit_code == 1


def test_unknown_up_to_cutoff():
    verdict = mc_rprompt(THREE_CYCLE, G_FP_S, V.V1111, cutoff=1)
    assert verdict.kind == VerdictKind.UNKNOWN_UP_TO and str(verdict) == "UNKNOWN<=1"
    assert verdict.exit_code == 2


@pytest.mark.parametrize("text, fragment", [
    ("states: a\ninit: a\nlabel a: {p}\n", "terminal state a"),
    ("states: a\ninit: b\nedge a a\n", "line 2"),
    ("states: a\ninit: a\nedge a c\n", "line 3"),
    ("states: a\ninit: a\nlabel a: p\nedge a a\n", "line 3"),
    ("states: a\nprops: p\ninit: a\nlabel a: {q}\nedge a a\n", "line 4"),
    ("states: a\nedge a a\n", "init"),
    ("bogus\n", "line 1"),
])
def test_system_format_errors(text, fragment):
    with pytest.raises(SystemFormatError, match=fragment):
        parse_system(text)


def test_terminal_state_reports_line():
    with pytest.raises(SystemFormatError, match="line 1: terminal state s1"):
        parse_system("states: s0 s1\ninit: s0\nedge s0 s1\n")


def test_unknown_proposition_in_formula():
    system = parse_system("states: a\nprops: p\ninit: a\nedge a a\n")
    with pytest.raises(ValueError, match="q"):
        mc_rldl(system, parse("[tt*] q"), V.V1111)


def test_verdicts_monotone_in_bound_and_level():
    rng = random.Random(11)
    prompts = [parse(t, LogicId.RPROMPT_LTL) for t in ("G Fp p", "F G Fp q", "G (p | Fp q)", "Fp p & G q")]
    for _ in range(15):
        system = random_system(rng, rng.randint(1, 4))
        phi = rng.choice(prompts)
        beta = rng.choice(ALL_VALUES)
        held = [mc_fixed_k(system, phi, beta, k).holds for k in range(4)]
        assert held == sorted(held)
        found = mc_rprompt(system, phi, beta, cutoff=4)
        if found.kind == VerdictKind.HOLDS_WITH_BOUND and found.bound > 0:
            assert not mc_fixed_k(system, phi, beta, found.bound - 1).holds
    for _ in range(15):
        system = random_system(rng, rng.randint(1, 4))
        phi = rng.choice(corpus())
        verdicts = [mc_rldl(system, phi, b).holds for b in ALL_VALUES]
        # ALL_VALUES ascends, so a verdict may only switch from holds to fails
        assert verdicts == sorted(verdicts, reverse=True)


def test_agreement_with_brute_force_on_random_systems():
    rng = random.Random(5)
    formulas = [phi for phi in corpus() if len(str(phi)) < 40][:10]
    for _ in range(6):
        system = random_system(rng, rng.randint(2, 4))
        for phi in formulas:
            beta = rng.choice(ALL_VALUES)
            assert mc_rldl(system, phi, beta).holds == brute_force_mc(system, phi, beta).holds
