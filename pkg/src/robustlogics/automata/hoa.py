"""HOA v1 output for Büchi automata and a small reader for the same subset.

The writer emits state-based Büchi acceptance with explicit labels; each edge
label is a disjunction of full cubes over the AP indices.  The reader accepts
what the writer produces plus the usual label syntax (``t``, ``f``, ``!``,
``&``, ``|``, parentheses, AP indices).
"""
from __future__ import annotations

import re
import shlex

from .nba import NBA, explicit_nba


class HoaError(ValueError):
    pass


def _cube(letter: frozenset, aps) -> str:
    return "&".join(str(i) if p in letter else f"!{i}" for i, p in enumerate(aps))


def export_hoa(nba: NBA, name: str | None = None) -> str:
    order, edges = nba.explore()
    index = {s: i for i, s in enumerate(order)}
    aps = nba.aps
    lines = ["HOA: v1"]
    if name:
        lines.append(f"name: {_quote(name)}")
    lines.append(f"States: {len(order)}")
    for s in dict.fromkeys(nba.initial):
        lines.append(f"Start: {index[s]}")
    lines.append(f"AP: {len(aps)}" + "".join(f" {_quote(p)}" for p in aps))
    lines.append("acc-name: Buchi")
    lines.append("Acceptance: 1 Inf(0)")
    lines.append("properties: explicit-labels state-acc")
    lines.append("--BODY--")
    full = len(nba.letters)
    for s in order:
        lines.append(f"State: {index[s]}" + (" {0}" if nba.is_accepting(s) else ""))
        by_target: dict[int, list] = {}
        for letter, t in edges[s]:
            by_target.setdefault(index[t], []).append(letter)
        for t in sorted(by_target):
            letters = by_target[t]
            if len(letters) == full or not aps:
                label = "t"
            else:
                label = " | ".join(_cube(a, aps) for a in sorted(letters, key=sorted))
            lines.append(f"[{label}] {t}")
    lines.append("--END--")
    return "\n".join(lines) + "\n"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


# --- reading -----------------------------------------------------------------

_LABEL_TOKEN = re.compile(r"\s*(\d+|[tf!&|()])")


def _parse_label(text: str, aps):
    tokens = []
    pos = 0
    while pos < len(text.rstrip()):
        m = _LABEL_TOKEN.match(text, pos)
        if m is None:
            raise HoaError(f"bad label {text!r}")
        tokens.append(m.group(1))
        pos = m.end()
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else None

    def disjunction():
        nonlocal i
        parts = [conjunction()]
        while peek() == "|":
            i += 1
            parts.append(conjunction())
        return lambda v: any(p(v) for p in parts)

    def conjunction():
        nonlocal i
        parts = [unary()]
        while peek() == "&":
            i += 1
            parts.append(unary())
        return lambda v: all(p(v) for p in parts)

    def unary():
        nonlocal i
        tok = peek()
        if tok is None:
            raise HoaError(f"truncated label {text!r}")
        i += 1
        if tok == "!":
            inner = unary()
            return lambda v: not inner(v)
        if tok == "t":
            return lambda v: True
        if tok == "f":
            return lambda v: False
        if tok == "(":
            inner = disjunction()
            if peek() != ")":
                raise HoaError(f"unbalanced label {text!r}")
            i += 1
            return inner
        if tok.isdigit():
            n = int(tok)
            if n >= len(aps):
                raise HoaError(f"AP index {n} out of range")
            prop = aps[n]
            return lambda v: prop in v
        raise HoaError(f"unexpected {tok!r} in label {text!r}")

    pred = disjunction()
    if i != len(tokens):
        raise HoaError(f"trailing input in label {text!r}")
    return pred


def parse_hoa(text: str) -> NBA:
    """Read a state-based Büchi HOA document with explicit labels."""
    header, _, rest = text.partition("--BODY--")
    if not rest:
        raise HoaError("missing --BODY--")
    body, _, _ = rest.partition("--END--")
    starts, aps, n_states = [], (), None
    for line in header.splitlines():
        line = line.strip()
        if not line:
            continue
        key, _, value = line.partition(":")
        value = value.strip()
        if key == "HOA" and value != "v1":
            raise HoaError(f"unsupported version {value}")
        elif key == "States":
            n_states = int(value)
        elif key == "Start":
            starts.append(int(value))
        elif key == "AP":
            fields = shlex.split(value)
            aps = tuple(fields[1:])
            if int(fields[0]) != len(aps):
                raise HoaError("AP count does not match the names")
        elif key == "Acceptance":
            if " ".join(value.split()) not in ("1 Inf(0)", "0 t"):
                raise HoaError(f"only Büchi acceptance is supported, got {value}")
    edges: dict[int, list] = {}
    accepting = set()
    current = None
    for line in body.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("State:"):
            m = re.match(r"State:\s*(?:\[[^\]]*\]\s*)?(\d+)\s*(\"[^\"]*\")?\s*(\{[^}]*\})?", line)
            if m is None:
                raise HoaError(f"bad state line {line!r}")
            current = int(m.group(1))
            edges.setdefault(current, [])
            if m.group(3) and "0" in m.group(3)[1:-1].split():
                accepting.add(current)
            continue
        m = re.match(r"\[([^\]]*)\]\s*(\d+)", line)
        if m is None or current is None:
            raise HoaError(f"bad edge line {line!r}")
        edges[current].append((_parse_label(m.group(1), aps), int(m.group(2))))
    if n_states is not None and any(s >= n_states for s in edges):
        raise HoaError("state index out of range")
    return explicit_nba(aps, starts, edges, accepting)
