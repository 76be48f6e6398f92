import random

import pytest

from conftest import lasso
from robustlogics.automata import (
    APA, HoaError, apa_accepts_lasso, apa_intersect, apa_union, build_apa, dualize,
    explicit_nba, export_hoa, nba_accepts_lasso, nba_is_empty, parse_hoa, remove_alternation,
)
from robustlogics.automata import pbf
from robustlogics.automata.search import find_accepting_lasso, strongly_connected_components
from robustlogics.formula import guard_nodes, size
from robustlogics.harness import canonical_lassos, corpus, random_lasso
from robustlogics.semantics import eval_rldl
from robustlogics.syntax import parse
from robustlogics.truth import NONZERO, TruthValue as V

APS = ("p", "q")
WORDS = ["| {p}", "| {}", "{} | {p}", "| {} {p}", "{p} | {}", "| {q} {}", "{q} {p} | {} {q}"]


def accepts(a, word):
    return apa_accepts_lasso(a, lasso(word))


def test_reachability():
    a = build_apa(parse("<tt*> p"), V.V0001, APS)
    assert accepts(a, "| {p}") and not accepts(a, "| {}")
    assert accepts(build_apa(parse("<tt*> p"), V.V1111, APS), "{} | {p}")


def test_always_eventually_levels():
    a = build_apa(parse("[tt*] p"), V.V0111, APS)
    assert accepts(a, "{} | {p}") and not accepts(a, "| {} {p}")
    assert not accepts(build_apa(parse("[tt*] p"), V.V1111, APS), "{} | {p}")
    assert accepts(build_apa(parse("[{[tt*] p}?] ff"), V.V1111, APS), "{} | {p}")


def test_zero_level_is_rejected():
    with pytest.raises(ValueError):
        build_apa(parse("p"), V.V0000)


def test_duality_and_boolean_closure():
    a = build_apa(parse("[tt*] p"), V.V0111, APS)
    d = dualize(a)
    assert not accepts(d, "{} | {p}")
    both, either = apa_intersect(a, d), apa_union(a, d)
    for w in WORDS:
        assert accepts(d, w) != accepts(a, w)
        assert accepts(either, w) and not accepts(both, w)
        assert accepts(dualize(d), w) == accepts(a, w)


def test_dualize_refuses_non_weak():
    # priority 2 and 1 inside one cycle
    a = APA(aps=("p",), initial=0, trans=[1, 0], priority=[2, 1])
    assert not a.is_weak()
    with pytest.raises(ValueError):
        dualize(a)


def test_remove_alternation():
    n = remove_alternation(build_apa(parse("<tt*> p"), V.V1111, APS))
    assert nba_accepts_lasso(n, lasso("| {p}")) and not nba_accepts_lasso(n, lasso("| {}"))
    n = remove_alternation(dualize(build_apa(parse("[tt*] p"), V.V0011, APS)))
    assert nba_accepts_lasso(n, lasso("| {}"))


def test_emptiness():
    phi = parse("<tt*> p")
    empty, witness = nba_is_empty(remove_alternation(build_apa(phi, V.V1111, APS)))
    assert empty == 0 and eval_rldl(witness, phi) == V.V1111
    a = build_apa(parse("[tt*] p"), V.V0011, APS)
    assert nba_is_empty(remove_alternation(apa_intersect(a, dualize(a)))) == (1, None)


def test_state_count_bound():
    for phi in corpus():
        widest = max((guard_nodes(f.guard()) for f in _nodes(phi) if f.guard() is not None),
                     default=0)
        for beta in NONZERO:
            assert build_apa(phi, beta, APS).n_states <= 4 * size(phi) * 2 ** widest


def _nodes(phi):
    stack, out = [phi], []
    while stack:
        f = stack.pop()
        out.append(f)
        stack.extend(f.children())
    return out


def test_corpus_membership_and_level_monotonicity():
    words = canonical_lassos(APS, 3)
    for phi in corpus()[:12]:
        langs = []
        for beta in NONZERO:
            a = build_apa(phi, beta, APS)
            n = remove_alternation(a)
            lang = set()
            for w in words:
                expected = eval_rldl(w, phi) >= beta
                assert apa_accepts_lasso(a, w) == expected, (phi, beta, w)
                assert nba_accepts_lasso(n, w) == expected, (phi, beta, w)
                if expected:
                    lang.add(w)
            langs.append(lang)
        # NONZERO runs from 1111 down, so languages grow
        assert all(a <= b for a, b in zip(langs, langs[1:]))


def test_pbf_helpers():
    assert pbf.conj([1, pbf.disj([2, pbf.TRUE])]) == 1
    assert pbf.disj([1, pbf.conj([2, pbf.FALSE])]) == 1
    g = pbf.disj([pbf.conj([1, 2]), 3])
    assert pbf.evaluate(g, {3}.__contains__) and not pbf.evaluate(g, {1}.__contains__)
    assert sorted(map(sorted, pbf.minimal_models(g))) == [[1, 2], [3]]
    same = lambda q: q
    assert pbf.dual(pbf.dual(g, same), same) == g
    assert sorted(map(sorted, pbf.minimal_models(pbf.dual(g, same)))) == [[1, 3], [2, 3]]


def test_scc_order_and_nested_dfs():
    succ = {0: [1], 1: [2], 2: [1, 3], 3: [3]}
    comps = strongly_connected_components([0], lambda s: succ[s])
    assert [set(c) for c in comps] == [{3}, {1, 2}, {0}]
    found = find_accepting_lasso([0], lambda s: [(None, t) for t in succ[s]], lambda s: s == 2)
    assert found is not None and [n for n, _ in found.loop][0] in (1, 2)
    assert find_accepting_lasso([0], lambda s: [(None, t) for t in succ[s]], lambda s: s == 0) is None


def test_hoa_universal():
    nba = explicit_nba(("p",), [0], {0: [(lambda a: True, 0)]}, [0])
    text = export_hoa(nba)
    assert "Acceptance: 1 Inf(0)" in text and "[t] 0" in text
    assert nba_accepts_lasso(parse_hoa(text), lasso("| {p}"))


def test_hoa_round_trip_and_ap_order():
    phi = parse("[tt*] p -> [tt*] q")
    nba = remove_alternation(build_apa(phi, V.V0111, ("q", "p")))
    text = export_hoa(nba)
    assert 'AP: 2 "q" "p"' in text
    back = parse_hoa(text)
    rng = random.Random(3)
    for _ in range(50):
        w = random_lasso(rng)
        assert nba_accepts_lasso(back, w) == nba_accepts_lasso(nba, w) == (eval_rldl(w, phi) >= V.V0111)


@pytest.mark.parametrize("text", ["HOA: v1\nAP: 1 \"p\"\n", "HOA: v1\nAP: 1 \"p\"\n--BODY--\nState: 0\n[0 & ] 0\n--END--\n",
                                  "HOA: v1\nAP: 1 \"p\"\n--BODY--\nState: 0\n[3] 0\n--END--\n"])
def test_hoa_errors(text):
    with pytest.raises(HoaError):
        parse_hoa(text)


def test_external_tool_membership(tmp_path):
    spot = pytest.importorskip("spot")
    nba = remove_alternation(build_apa(parse("[tt*] p"), V.V0111, ("p",)))
    aut = spot.automaton(export_hoa(nba))
    word = spot.parse_word("!p; cycle{p}", aut.get_dict())
    assert aut.intersects(word.as_automaton())
