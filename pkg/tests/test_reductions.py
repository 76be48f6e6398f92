import random

import pytest
from hypothesis import given, settings

from conftest import lasso, seeds
from robustlogics.classical import eval_ldl, eval_prompt, eval_rltl
from robustlogics.formula import LogicId, TT, fragment_of, size
from robustlogics.harness import random_formula, random_lasso
from robustlogics.reductions import embed_ldl, embed_rltl, lemma1_reduce
from robustlogics.semantics import eval_rldl, eval_rprompt
from robustlogics.syntax import parse, render
from robustlogics.truth import ALL_VALUES, TruthValue as V, bit


def rp(text):
    return parse(text, LogicId.RPROMPT_LTL)


@pytest.mark.parametrize("beta, expected", [
    (V.V1111, "G p"), (V.V0111, "F G p"), (V.V0011, "G F p"), (V.V0001, "F p"), (V.V0000, "tt"),
])
def test_always_per_level(beta, expected):
    assert render(lemma1_reduce(rp("G p"), beta)) == expected


def test_nested_prompt():
    assert render(lemma1_reduce(rp("G Fp s"), V.V0111)) == "F G Fp s"
    assert lemma1_reduce(rp("G Fp s"), V.V0000) == TT()


def test_embed_rltl():
    assert render(embed_rltl(parse("G p"))) == "[tt*] p"
    assert render(embed_rltl(parse("F p"))) == "<tt*> p"
    assert render(embed_rltl(parse("p -> G q"))) == "p -> [tt*] q"
    w = lasso("{} | {p}")
    assert eval_rldl(w, embed_rltl(parse("G p"))) == eval_rltl(w, parse("G p")) == V.V0111
    assert eval_rldl(lasso("| {}"), embed_rltl(parse("F p"))) == V.V0000


def test_embed_ldl():
    assert render(embed_ldl(parse("p -> q"))) == "!p | q"
    w = lasso("| {p} {}")
    phi = parse("[(tt;tt)*] p")
    assert eval_ldl(w, phi) == 1 == bit(eval_rldl(w, embed_ldl(phi)), 1)
    w, phi = lasso("{} | {p}"), parse("![tt*] p")
    assert eval_ldl(w, phi) == 1
    assert eval_rldl(w, embed_ldl(phi)) == V.V1111


@settings(max_examples=2000, deadline=None)
@given(seed=seeds)
def test_level_reduction_is_exact(seed):
    rng = random.Random(seed)
    phi = random_formula(rng, LogicId.RPROMPT_LTL, 8)
    w, k = random_lasso(rng), rng.randint(0, 6)
    value = eval_rprompt(w, k, phi)
    for beta in ALL_VALUES:
        reduced = lemma1_reduce(phi, beta)
        assert LogicId.PROMPT_LTL in fragment_of(reduced)
        assert (value >= beta) == bool(eval_prompt(w, k, reduced))
        assert size(reduced) <= 2 * size(phi) + 2


@settings(max_examples=2000, deadline=None)
@given(seed=seeds)
def test_embeddings_preserve_values(seed):
    rng = random.Random(seed)
    w = random_lasso(rng)
    phi = random_formula(rng, LogicId.RLTL, 8)
    assert eval_rldl(w, embed_rltl(phi)) == eval_rltl(w, phi)
    psi = random_formula(rng, LogicId.LDL, 8)
    assert bit(eval_rldl(w, embed_ldl(psi)), 1) == eval_ldl(w, psi)
