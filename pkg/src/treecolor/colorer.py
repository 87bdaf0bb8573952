"""Verify, find and count tree-colorings.

A tree-coloring is a proper 4-coloring in which every pair of colour classes
induces a tree.  The search only enforces acyclicity; connectedness of the
bichromatic subgraphs is checked afterwards by :func:`verify`.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .planar import Triangulation

COLORS = (1, 2, 3, 4)
PAIRS = tuple(itertools.combinations(COLORS, 2))
_PAIR_INDEX = {p: i for i, p in enumerate(PAIRS)}
_PAIR_INDEX.update({(b, a): i for (a, b), i in list(_PAIR_INDEX.items())})


class MissingVertex(ValueError):
    pass


@dataclass(frozen=True)
class Valid:
    kind = "valid"

    def __str__(self) -> str:
        return "valid"


@dataclass(frozen=True)
class Improper:
    edge: tuple[int, int]
    kind = "improper"

    def __str__(self) -> str:
        return f"improper edge {self.edge[0]} {self.edge[1]}"


@dataclass(frozen=True)
class BichromaticCycle:
    pair: tuple[int, int]
    cycle: tuple[int, ...]
    kind = "bichromatic_cycle"

    def __str__(self) -> str:
        return f"bichromatic cycle on colors {self.pair[0]},{self.pair[1]}: " + " ".join(map(str, self.cycle))


@dataclass(frozen=True)
class DisconnectedPair:
    pair: tuple[int, int]
    kind = "disconnected_pair"

    def __str__(self) -> str:
        return f"colors {self.pair[0]},{self.pair[1]} induce a disconnected forest"


Verdict = Valid | Improper | BichromaticCycle | DisconnectedPair


def _as_list(t: Triangulation, f: Mapping[int, int] | Sequence[int]) -> list[int]:
    if isinstance(f, Mapping):
        missing = [v for v in range(t.n) if v not in f]
        if missing:
            raise MissingVertex(f"coloring does not assign vertex {missing[0]}")
        return [f[v] for v in range(t.n)]
    if len(f) != t.n:
        raise MissingVertex(f"coloring has {len(f)} entries for {t.n} vertices")
    return list(f)


def _smallest_cycle(adj: dict[int, list[int]]) -> tuple[int, ...] | None:
    """Lexicographically smallest cycle of a simple graph, as a vertex sequence.

    The cycle starts at its smallest vertex and is oriented towards the smaller
    of that vertex's two cycle neighbours.
    """
    # vertices on some cycle: strip degree <= 1 vertices repeatedly
    deg = {v: len(ns) for v, ns in adj.items()}
    alive = set(adj)
    stack = [v for v in adj if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] <= 1:
                    stack.append(w)
    if not alive:
        return None
    s = min(alive)

    path = [s]
    # greedy: extend with the smallest neighbour from which s is still reachable
    # without reusing path vertices; closing as early as possible
    while True:
        x = path[-1]
        if len(path) >= 3 and s in adj[x]:
            return tuple(path)
        on_path = set(path)
        for y in sorted(adj[x]):
            if y not in alive or y in on_path:
                continue
            banned = on_path | {y}
            if _can_return(adj, alive, s, y, banned, len(path) + 1):
                path.append(y)
                break
        else:  # pragma: no cover - alive vertices always lie on a cycle
            raise AssertionError("cycle search dead end")


def _can_return(adj, alive, s: int, start: int, banned: set[int], length: int) -> bool:
    """Whether a simple path from ``start`` back to ``s`` avoids ``banned``."""
    if length >= 3 and s in adj[start]:
        return True
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for y in adj[x]:
            if y == s and x != start:
                return True
            if y in alive and y not in banned and y not in seen:
                seen.add(y)
                todo.append(y)
    return False


def verify(t: Triangulation, f: Mapping[int, int] | Sequence[int]) -> Verdict:
    """Check that ``f`` is a tree-coloring of ``t`` and explain the first failure.

    Failures are reported in this order: the smallest improper edge, then per
    colour pair (in lexicographic order) the smallest bichromatic cycle, then a
    disconnected pair.
    """
    col = _as_list(t, f)
    for c in col:
        if c not in COLORS:
            raise ValueError(f"color {c} is not in 1..4")
    for u, v in t.edges:
        if col[u] == col[v]:
            return Improper((u, v))
    disconnected = None
    for a, b in PAIRS:
        verts = [v for v in range(t.n) if col[v] in (a, b)]
        adj = {v: [w for w in t.rotation[v] if col[w] in (a, b)] for v in verts}
        n_edges = sum(len(ns) for ns in adj.values()) // 2
        comps = _components(adj)
        if n_edges != len(verts) - comps:
            cycle = _smallest_cycle(adj)
            assert cycle is not None
            return BichromaticCycle((a, b), cycle)
        if comps > 1 and disconnected is None:
            disconnected = DisconnectedPair((a, b))
    return disconnected or Valid()


def _components(adj: dict[int, list[int]]) -> int:
    seen: set[int] = set()
    count = 0
    for s in adj:
        if s in seen:
            continue
        count += 1
        seen.add(s)
        todo = [s]
        while todo:
            for y in adj[todo.pop()]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
    return count


def is_tree_coloring(t: Triangulation, f) -> bool:
    return isinstance(verify(t, f), Valid)


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


@dataclass
class SolveStats:
    nodes: int = 0
    outcome: str = "exhausted"
    elapsed: float = 0.0


def search_order(t: Triangulation) -> list[int]:
    """Face 0's corners first, then the remaining vertices by decreasing degree."""
    seed = list(t.faces[0])
    rest = sorted((v for v in range(t.n) if v not in seed), key=lambda v: (-t.degrees[v], v))
    return seed + rest


class _Search:
    """Backtracking over a fixed vertex order with six undoable union-finds."""

    def __init__(self, t: Triangulation):
        self.t = t
        self.order = search_order(t)
        rank = {v: i for i, v in enumerate(self.order)}
        self.earlier = [
            [w for w in t.rotation[v] if rank[w] < rank[v]] for v in range(t.n)
        ]
        self.color = [0] * t.n
        self.parent = [list(range(t.n)) for _ in PAIRS]
        self.size = [[1] * t.n for _ in PAIRS]
        self.nodes = 0

    def _find(self, p: list[int], x: int) -> int:
        while p[x] != x:
            x = p[x]
        return x

    def _try(self, v: int, c: int, undo: list[tuple[int, int, int]]) -> bool:
        """Colour ``v`` with ``c``; return False (with undo applied) on conflict."""
        color = self.color
        for w in self.earlier[v]:
            if color[w] == c:
                self._undo(undo)
                return False
        for w in self.earlier[v]:
            k = _PAIR_INDEX[(c, color[w])]
            p = self.parent[k]
            rv, rw = self._find(p, v), self._find(p, w)
            if rv == rw:
                self._undo(undo)
                return False
            sz = self.size[k]
            if sz[rv] < sz[rw]:
                rv, rw = rw, rv
            p[rw] = rv
            sz[rv] += sz[rw]
            undo.append((k, rv, rw))
        color[v] = c
        return True

    def _undo(self, undo: list[tuple[int, int, int]]) -> None:
        while undo:
            k, rv, rw = undo.pop()
            self.parent[k][rw] = rw
            self.size[k][rv] -= self.size[k][rw]

    def run(self) -> Iterator[list[int]]:
        """Yield every acyclic proper colouring with face 0 fixed to colours 1, 2, 3."""
        order = self.order
        n = len(order)
        seed = [1, 2, 3]

        def rec(i: int) -> Iterator[list[int]]:
            self.nodes += 1
            if i == n:
                yield list(self.color)
                return
            v = order[i]
            choices = (seed[i],) if i < 3 else COLORS
            for c in choices:
                undo: list[tuple[int, int, int]] = []
                if not self._try(v, c, undo):
                    continue
                yield from rec(i + 1)
                self._undo(undo)
                self.color[v] = 0

        yield from rec(0)


def solve(t: Triangulation) -> tuple[dict[int, int] | None, SolveStats]:
    """Find one tree-coloring of ``t`` or prove that none exists.

    The returned colouring is acyclic by construction; callers that need the
    spanning-tree property confirmed run :func:`verify` on it.
    """
    start = time.perf_counter()
    search = _Search(t)
    found = None
    for col in search.run():
        found = dict(enumerate(col))
        break
    stats = SolveStats(nodes=search.nodes, outcome="found" if found else "exhausted")
    stats.elapsed = time.perf_counter() - start
    return found, stats


def _seeded_colorings(t: Triangulation) -> Iterator[list[int]]:
    return _Search(t).run()


def all_colorings(t: Triangulation, up_to_color_permutation: bool = False) -> Iterator[dict[int, int]]:
    """Every tree-coloring of ``t``.

    Fixing face 0 to colours 1, 2, 3 picks exactly one colouring per partition
    into colour classes (the fourth class is forced to colour 4), so the raw
    stream is that representative under all 24 colour permutations.
    """
    for col in _seeded_colorings(t):
        if up_to_color_permutation:
            yield dict(enumerate(col))
            continue
        for perm in itertools.permutations(COLORS):
            yield {v: perm[c - 1] for v, c in enumerate(col)}


def count_colorings(t: Triangulation, up_to_color_permutation: bool = False) -> int:
    partitions = sum(1 for _ in _seeded_colorings(t))
    return partitions if up_to_color_permutation else 24 * partitions


def is_tree_colorable(t: Triangulation) -> bool:
    return solve(t)[0] is not None


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def format_coloring(f: Mapping[int, int]) -> str:
    return "".join(f"{v} {f[v]}\n" for v in sorted(f))


def parse_coloring(text: str) -> dict[int, int]:
    out: dict[int, int] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"bad coloring line: {line!r}")
        v, c = int(parts[0]), int(parts[1])
        if v in out:
            raise ValueError(f"vertex {v} colored twice")
        out[v] = c
    return out
