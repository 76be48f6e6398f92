"""Graph searches shared by the emptiness and membership checks."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable


@dataclass(frozen=True)
class FoundLasso:
    """stem/loop are (node, label-of-outgoing-edge) pairs; the loop's last edge returns to loop[0]."""
    stem: tuple[tuple[Hashable, object], ...]
    loop: tuple[tuple[Hashable, object], ...]


def find_accepting_lasso(initials: Iterable[Hashable],
                         succ: Callable[[Hashable], Iterable[tuple[object, Hashable]]],
                         accepting: Callable[[Hashable], bool]) -> FoundLasso | None:
    """Nested depth-first search for a reachable accepting node on a cycle.

    ``succ(node)`` yields (label, next_node) pairs.  Once a seed is found the
    witness is rebuilt with breadth-first searches, so stems and loops are
    shortest for that seed.
    """
    cache: dict[Hashable, list] = {}

    def nexts(x):
        out = cache.get(x)
        if out is None:
            out = cache[x] = list(succ(x))
        return out

    initials = list(dict.fromkeys(initials))
    outer_seen: set = set()
    inner_seen: set = set()

    def inner(seed) -> bool:
        # inner_seen is shared between seeds; sound because seeds come in postorder
        stack = [iter(nexts(seed))]
        while stack:
            for _, y in stack[-1]:
                if y == seed:
                    return True
                if y not in inner_seen:
                    inner_seen.add(y)
                    stack.append(iter(nexts(y)))
                    break
            else:
                stack.pop()
        return False

    seed = None
    for init in initials:
        if init in outer_seen:
            continue
        outer_seen.add(init)
        stack = [(init, iter(nexts(init)))]
        while stack and seed is None:
            x, it = stack[-1]
            for _, y in it:
                if y not in outer_seen:
                    outer_seen.add(y)
                    stack.append((y, iter(nexts(y))))
                    break
            else:
                stack.pop()
                if accepting(x) and inner(x):
                    seed = x
        if seed is not None:
            break
    if seed is None:
        return None

    stem = _shortest_path(initials, lambda n: n == seed, nexts)
    loop = _shortest_path([seed], lambda n: n == seed, nexts, must_move=True)
    assert stem is not None and loop is not None
    return FoundLasso(tuple(stem), tuple(loop))


def _shortest_path(starts, is_goal, nexts, must_move=False):
    """BFS; returns the (node, label) edges of a shortest path to a goal."""
    parent: dict = {}
    queue = deque()
    for s in starts:
        if not must_move and is_goal(s):
            return []
        if s not in parent:
            parent[s] = None
            queue.append(s)
    while queue:
        x = queue.popleft()
        for label, y in nexts(x):
            if is_goal(y):
                path = [(x, label)]
                while parent[x] is not None:
                    x, lab = parent[x]
                    path.append((x, lab))
                return path[::-1]
            if y not in parent:
                parent[y] = (x, label)
                queue.append(y)
    return None


def strongly_connected_components(nodes: Iterable[Hashable],
                                  succ: Callable[[Hashable], Iterable[Hashable]]) -> list[list]:
    """Tarjan's algorithm, iterative; components come out sinks first."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    out: list[list] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    out.append(comp)
    return out
