import json

import pytest

from robustlogics.automata import nba_accepts_lasso, parse_hoa
from robustlogics.cli import main
from robustlogics.lasso import LassoWord

THREE_CYCLE = "states: s0 s1 s2\ninit: s0\nlabel s0: {s}\nedge s0 s1\nedge s1 s2\nedge s2 s0\n"
TWO_CYCLE = "states: s0 s1\ninit: s0\nlabel s0: {p}\nedge s0 s1\nedge s1 s0\n"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


@pytest.fixture
def system_file(tmp_path):
    def write(text):
        path = tmp_path / "system.txt"
        path.write_text(text)
        return str(path)
    return write


@pytest.mark.parametrize("argv, expected", [
    (["--logic", "rldl", "-f", "[tt*] p", "-w", "{} | {p}"], "0111"),
    (["--logic", "rprompt", "-k", "2", "-f", "G Fp s", "-w", "| {s} {} {}"], "1111"),
    (["--logic", "rldl", "-f", "[tt*] p", "-w", "{p} | {p}"], "1111"),
    (["--logic", "ldl", "-f", "[(tt;tt)*] p", "-w", "| {p} {}"], "1"),
])
def test_eval(capsys, argv, expected):
    assert run(capsys, "eval", *argv)[:2] == (0, expected)


def test_eval_diagnostics(capsys):
    code, out, _ = run(capsys, "eval", "-f", "[{[tt*] p}?] ff", "-w", "{} | {p}", "--diagnostics")
    assert code == 0 and out.splitlines()[0] == "1111"
    assert "[{[tt*] p}?] ff: b'=1000 R1={} R2={0}" in out


def test_eval_against_beta(capsys):
    assert run(capsys, "eval", "-f", "[tt*] p", "-w", "{} | {p}", "--beta", "1111")[0] == 1
    assert run(capsys, "eval", "-f", "[tt*] p", "-w", "{} | {p}", "--beta", "0111")[0] == 0


@pytest.mark.parametrize("formula, beta, expected", [
    ("G p", "0011", "G F p"), ("G p", "0000", "tt"), ("G Fp s", "0111", "F G Fp s"),
])
def test_reduce(capsys, formula, beta, expected):
    assert run(capsys, "reduce", "-f", formula, "--beta", beta)[:2] == (0, expected)


def test_compile_reachability(capsys):
    code, out, _ = run(capsys, "compile", "-f", "<tt*> p", "--beta", "1111")
    assert code == 0 and out.startswith("HOA: v1")
    nba = parse_hoa(out)
    for word, want in [("| {p}", 1), ("| {}", 0), ("{} {} | {} {p}", 1)]:
        assert nba_accepts_lasso(nba, LassoWord.parse(word)) == want


def test_compile_atom_levels_agree(capsys):
    low = parse_hoa(run(capsys, "compile", "-f", "p", "--beta", "0001")[1])
    high = parse_hoa(run(capsys, "compile", "-f", "p", "--beta", "1111")[1])
    for word in ["| {p}", "| {}", "{p} | {}", "{} | {p}"]:
        w = LassoWord.parse(word)
        assert nba_accepts_lasso(low, w) == nba_accepts_lasso(high, w)


def test_compile_to_file_with_ap_order(capsys, tmp_path):
    target = tmp_path / "out.hoa"
    code, out, _ = run(capsys, "compile", "-f", "[tt*] p", "--beta", "0111", "--aps", "q,p",
                       "-o", str(target))
    assert code == 0 and out == ""
    text = target.read_text()
    assert 'AP: 2 "q" "p"' in text
    assert nba_accepts_lasso(parse_hoa(text), LassoWord.parse("{} | {p}"))


def test_compile_zero_level_is_universal(capsys):
    code, out, _ = run(capsys, "compile", "-f", "p", "--beta", "0000")
    assert code == 0 and "States: 1" in out and "[t] 0" in out


def test_mc_prompt_bound(capsys, system_file):
    path = system_file(THREE_CYCLE)
    assert run(capsys, "mc", "--logic", "rprompt", "-f", "G Fp s", "--beta", "1111",
               "-s", path)[:2] == (0, "HOLDS k=2")
    code, out, _ = run(capsys, "mc", "--logic", "rprompt", "-f", "G Fp s", "--beta", "1111",
                       "-s", path, "--cutoff", "1")
    assert (code, out) == (2, "UNKNOWN<=1")
    code, out, _ = run(capsys, "mc", "--logic", "rprompt", "-f", "G Fp s", "--beta", "1111",
                       "-s", path, "-k", "1")
    assert code == 1 and out.startswith("FAILS")


def test_mc_counterexample(capsys, system_file):
    code, out, _ = run(capsys, "mc", "-f", "[tt*] p", "--beta", "0111", "-s",
                       system_file(TWO_CYCLE))
    assert code == 1 and out.startswith("FAILS {p} {}")


def test_mc_json(capsys, system_file):
    code, out, _ = run(capsys, "mc", "-f", "[tt*] p", "--beta", "0111", "-s",
                       system_file(TWO_CYCLE), "--format", "json")
    record = json.loads(out)
    assert code == 1 and set(record) == {"query", "verdict", "value", "witness"}
    assert record["value"] == "0011" and record["verdict"].startswith("FAILS")
    assert record["witness"]["loop"]


def test_mc_terminal_state(capsys, system_file):
    code, _, err = run(capsys, "mc", "-f", "p", "--beta", "1111", "-s",
                       system_file("states: s0 s1\ninit: s0\nedge s0 s1\n"))
    assert code == 3 and "terminal state" in err and "line 1" in err


@pytest.mark.parametrize("argv", [
    ["eval", "-f", "[tt* p", "-w", "| {p}"],
    ["eval", "-f", "p", "-w", "{p}"],
    ["eval", "--logic", "rprompt", "-f", "Fp p", "-w", "| {p}"],
    ["reduce", "-f", "G (p -> q)", "--beta", "0111"],
    ["reduce", "-f", "G p", "--beta", "1011"],
    ["mc", "-f", "p", "--beta", "1111", "-s", "/nonexistent/system"],
    ["no-such-command"],
])
def test_errors_exit_3(capsys, argv):
    assert run(capsys, *argv)[0] == 3


def test_text_and_json_agree(capsys):
    _, text, _ = run(capsys, "eval", "-f", "[tt*] p", "-w", "{} | {p}")
    _, js, _ = run(capsys, "eval", "-f", "[tt*] p", "-w", "{} | {p}", "--format", "json")
    assert json.loads(js)["value"] == text
