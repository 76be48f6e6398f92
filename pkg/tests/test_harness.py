import random

from robustlogics import harness
from robustlogics.automata import build as build_module
from robustlogics.cli import main
from robustlogics.harness import random_formula, random_lasso, random_system
from robustlogics.formula import LogicId, fragment_of


def test_generators_are_seeded():
    def draw(seed):
        rng = random.Random(seed)
        return (random_formula(rng, LogicId.RLDL, 8), random_lasso(rng),
                random_system(rng, 4))
    assert draw(7) == draw(7)


def test_suites_are_deterministic():
    a = harness.suite_lemma1(count=100, seed=7)
    b = harness.suite_lemma1(count=100, seed=7)
    assert a.ok and (a.checked, a.violations) == (b.checked, b.violations)


def test_small_suites_pass():
    for name, suite in harness.SUITES.items():
        count = 5 if name in ("compile", "mc") else 200
        result = suite(count=count, seed=1)
        assert result.ok, result.summary()


def test_injected_box_bug_is_caught(monkeypatch):
    original = build_module._Builder.box_pre_bit

    def negated(self, phi, lvl):
        return self.dual(original(self, phi, lvl))

    monkeypatch.setattr(build_module._Builder, "box_pre_bit", negated)
    result = harness.suite_compile(count=20, seed=0)
    assert not result.ok
    assert "phi=" in result.first_failure and "beta=" in result.first_failure
    assert "w=" in result.first_failure


def test_oracle_check_command(capsys):
    assert main(["oracle-check", "--suite", "lemma1", "--count", "100", "--seed", "7"]) == 0
    first = capsys.readouterr().out
    main(["oracle-check", "--suite", "lemma1", "--count", "100", "--seed", "7"])
    assert capsys.readouterr().out == first
    assert "lemma1: ok" in first


def test_corpus_is_well_formed():
    formulas = harness.corpus()
    assert len(formulas) == len(set(formulas)) >= 30
    assert all(LogicId.RLDL in fragment_of(f) for f in formulas)
