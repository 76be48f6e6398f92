"""Ultimately periodic words u.v^omega and eventually periodic sets of naturals."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

Letter = frozenset


class LassoSyntaxError(ValueError):
    pass


def letter(*props: str) -> Letter:
    return frozenset(props)


def format_letter(a: Letter) -> str:
    return "{" + ",".join(sorted(a)) + "}"


_LETTER = re.compile(r"\{\s*([^{}]*)\}")


def _parse_letters(text: str) -> list[Letter]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _LETTER.match(text, pos)
        if m is None:
            raise LassoSyntaxError(f"expected a letter like {{p,q}} at {text[pos:]!r}")
        names = [n.strip() for n in m.group(1).split(",") if n.strip()]
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                raise LassoSyntaxError(f"bad proposition name {n!r}")
        out.append(frozenset(names))
        pos = m.end()
    return out


@dataclass(frozen=True)
class LassoWord:
    stem: tuple[Letter, ...]
    loop: tuple[Letter, ...]

    def __post_init__(self):
        if len(self.loop) < 1:
            raise ValueError("the loop of a lasso word must be nonempty")
        object.__setattr__(self, "stem", tuple(frozenset(a) for a in self.stem))
        object.__setattr__(self, "loop", tuple(frozenset(a) for a in self.loop))

    @classmethod
    def parse(cls, text: str) -> "LassoWord":
        if text.count("|") != 1:
            raise LassoSyntaxError("a lasso needs exactly one '|' between stem and loop")
        stem_text, loop_text = text.split("|")
        loop = _parse_letters(loop_text)
        if not loop:
            raise LassoSyntaxError("the loop must contain at least one letter")
        return cls(tuple(_parse_letters(stem_text)), tuple(loop))

    def __str__(self) -> str:
        stem = " ".join(format_letter(a) for a in self.stem)
        loop = " ".join(format_letter(a) for a in self.loop)
        return f"{stem} | {loop}" if stem else f"| {loop}"

    @property
    def n_classes(self) -> int:
        return len(self.stem) + len(self.loop)

    def suffix_class(self, j: int) -> int:
        u = len(self.stem)
        return j if j < u else u + (j - u) % len(self.loop)

    def letter_at(self, j: int) -> Letter:
        c = self.suffix_class(j)
        u = len(self.stem)
        return self.stem[c] if c < u else self.loop[c - u]

    def next_class(self, c: int) -> int:
        return c + 1 if c + 1 < self.n_classes else len(self.stem)

    def loop_classes(self) -> range:
        return range(len(self.stem), self.n_classes)

    def reachable_classes(self, c: int) -> range:
        """Classes of the positions j >= any position of class c."""
        return range(c, self.n_classes) if c < len(self.stem) else self.loop_classes()

    def prefix(self, n: int) -> list[Letter]:
        return [self.letter_at(j) for j in range(n)]

    def suffix(self, j: int) -> "LassoWord":
        c = self.suffix_class(j)
        u = len(self.stem)
        if c < u:
            return LassoWord(self.stem[c:], self.loop)
        r = c - u
        return LassoWord((), self.loop[r:] + self.loop[:r])

    def propositions(self) -> set[str]:
        return set().union(*self.stem, *self.loop)

    def canonical(self) -> "LassoWord":
        """The shortest representation of the same infinite word."""
        loop = list(self.loop)
        n = len(loop)
        for d in range(1, n + 1):
            if n % d == 0 and loop == loop[:d] * (n // d):
                loop = loop[:d]
                break
        stem = list(self.stem)
        while stem and stem[-1] == loop[-1]:
            stem.pop()
            loop = [loop[-1]] + loop[:-1]
        return LassoWord(tuple(stem), tuple(loop))


def all_lassos(alphabet: list[Letter], max_total: int) -> Iterator[LassoWord]:
    """Every (stem, loop) pair with |stem| + |loop| <= max_total over ``alphabet``."""
    from itertools import product
    for total in range(1, max_total + 1):
        for stem_len in range(total):
            for stem in product(alphabet, repeat=stem_len):
                for loop in product(alphabet, repeat=total - stem_len):
                    yield LassoWord(stem, loop)


def powerset_alphabet(props: Iterable[str]) -> list[Letter]:
    props = sorted(props)
    return [frozenset(p for k, p in enumerate(props) if mask >> k & 1)
            for mask in range(1 << len(props))]


@dataclass(frozen=True)
class MatchSet:
    """{transient} u {threshold + r + m*period : r in periodic, m >= 0}.

    Every member of ``transient`` is below ``threshold`` and every residue in
    ``periodic`` is below ``period``.  Instances built through
    :meth:`from_indicator` are canonical (minimal period, then minimal
    threshold), so equality of sets is equality of instances.
    """
    threshold: int
    transient: frozenset[int]
    period: int
    periodic: frozenset[int]

    @classmethod
    def from_indicator(cls, flags: list[bool], cycle_start: int) -> "MatchSet":
        """Canonical set from membership flags where flags[cycle_start:] repeats."""
        period = len(flags) - cycle_start
        if period < 1:
            raise ValueError("empty cycle")
        cyc = flags[cycle_start:]
        for d in range(1, period + 1):
            if period % d == 0 and all(cyc[i] == cyc[i % d] for i in range(period)):
                cyc = cyc[:d]
                period = d
                break
        start = cycle_start
        head = flags[:cycle_start]
        # shift the cycle left while the element before it agrees with its last slot
        while start > 0 and head[start - 1] == cyc[-1]:
            start -= 1
            cyc = [cyc[-1]] + cyc[:-1]
        if not any(cyc):
            period = 1
            cyc = [False]
            while start > 0 and not head[start - 1]:
                start -= 1
        return cls(start, frozenset(j for j in range(start) if head[j]),
                   period, frozenset(r for r in range(period) if cyc[r]))

    @classmethod
    def finite(cls, elements: Iterable[int]) -> "MatchSet":
        elements = sorted(set(elements))
        top = (elements[-1] + 1) if elements else 0
        flags = [j in elements for j in range(top)] + [False]
        return cls.from_indicator(flags, top)

    def __contains__(self, j: int) -> bool:
        if j < self.threshold:
            return j in self.transient
        return (j - self.threshold) % self.period in self.periodic

    @property
    def is_finite(self) -> bool:
        return not self.periodic

    @property
    def is_empty(self) -> bool:
        return not self.periodic and not self.transient

    def cardinality(self) -> str:
        if self.is_empty:
            return "empty"
        return "finite" if self.is_finite else "infinite"

    def elements_upto(self, n: int) -> list[int]:
        return [j for j in range(n) if j in self]

    def issubset(self, other: "MatchSet") -> bool:
        horizon = max(self.threshold, other.threshold) + self.period * other.period
        return all(j in other for j in self.elements_upto(horizon))

    def __str__(self) -> str:
        if self.is_finite:
            return "{" + ", ".join(map(str, sorted(self.transient))) + "}"
        head = ", ".join(map(str, sorted(self.transient)))
        tail = ", ".join(f"{self.threshold + r}+{self.period}m" for r in sorted(self.periodic))
        return "{" + (head + ", " if head else "") + tail + "}"
