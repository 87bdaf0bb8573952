"""Duals of triangulations and Hamilton-cycle double covers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping

from .colorer import Valid, verify
from .planar import Face, Triangulation


class ColoringInvalid(ValueError):
    pass


class CycleDisconnected(AssertionError):
    pass


PARTITIONS = (((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3)))


class DualGraph:
    """The cubic plane dual of a triangulation.

    Dual vertex ``i`` is face ``i`` of the source; dual edge ``k`` crosses the
    source edge ``source.edges[k]``.  ``rotation[i]`` lists the dual
    neighbours of ``i`` in the boundary order of its face.
    """

    def __init__(self, source: Triangulation):
        self.source = source
        self.face_map: tuple[Face, ...] = source.faces
        df = source.dart_face
        self.edges: tuple[tuple[int, int], ...] = tuple(
            (min(df[(u, v)], df[(v, u)]), max(df[(u, v)], df[(v, u)])) for u, v in source.edges
        )
        self.edge_index = {e: k for k, e in enumerate(self.edges)}
        if len(self.edge_index) != len(self.edges):
            raise AssertionError("dual has parallel edges")
        rot = []
        for a, b, c in self.face_map:
            rot.append(tuple(df[(y, x)] for x, y in ((a, b), (b, c), (c, a))))
        self.rotation: tuple[tuple[int, ...], ...] = tuple(rot)

    @property
    def n(self) -> int:
        return len(self.face_map)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(r) for r in self.rotation)

    def degree(self, i: int) -> int:
        return len(self.rotation[i])

    def dual(self) -> Triangulation:
        """Trace this embedding's faces and build their adjacency (the dual of the dual)."""
        pos = [{w: k for k, w in enumerate(r)} for r in self.rotation]
        face_of: dict[tuple[int, int], int] = {}
        count = 0
        for u, r in enumerate(self.rotation):
            for v in r:
                if (u, v) in face_of:
                    continue
                a, b = u, v
                while (a, b) not in face_of:
                    face_of[(a, b)] = count
                    rb = self.rotation[b]
                    a, b = b, rb[(pos[b][a] + 1) % len(rb)]
                count += 1
        rot: list[list[int]] = [[] for _ in range(count)]
        for u, r in enumerate(self.rotation):
            for v in r:
                # walking u->v, the face on the other side is that of v->u
                rot[face_of[(u, v)]].append((u, v))
        out = []
        for darts in rot:
            # order the darts of a face along its boundary walk
            nxt = {}
            for a, b in darts:
                rb = self.rotation[b]
                nxt[(a, b)] = (b, rb[(pos[b][a] + 1) % len(rb)])
            walk = [darts[0]]
            while len(walk) < len(darts):
                walk.append(nxt[walk[-1]])
            out.append([face_of[(b, a)] for a, b in walk])
        return Triangulation(out)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def dual(t: Triangulation) -> DualGraph:
    return DualGraph(t)


def _edge_set(d: DualGraph, cycle: list[int]) -> frozenset[tuple[int, int]]:
    k = len(cycle)
    return frozenset(
        (min(cycle[i], cycle[(i + 1) % k]), max(cycle[i], cycle[(i + 1) % k])) for i in range(k)
    )


def ham_cycles(d: DualGraph, limit: int | None = None) -> Iterator[frozenset[tuple[int, int]]]:
    """Every Hamilton cycle of ``d`` once, as a set of ``(a, b)`` edges with ``a < b``.

    Depth-first path extension from vertex 0.  A vertex off the path whose
    usable neighbours (unvisited, or a path end) drop below two is a dead end.
    """
    n = d.n
    adj = [sorted(r) for r in d.rotation]
    on_path = [False] * n
    avail = [len(a) for a in adj]
    path = [0]
    on_path[0] = True
    found = 0

    def rec() -> Iterator[frozenset[tuple[int, int]]]:
        nonlocal found
        x = path[-1]
        if len(path) == n:
            if 0 in adj[x] and path[1] < path[-1]:
                found += 1
                yield _edge_set(d, path)
            return
        for y in adj[x]:
            if on_path[y]:
                continue
            # x becomes interior once y is appended (unless x is the start)
            touched = []
            dead = False
            if x != 0:
                for z in adj[x]:
                    if z != y and not on_path[z]:
                        avail[z] -= 1
                        touched.append(z)
                        if avail[z] < 2:
                            dead = True
            if not dead:
                on_path[y] = True
                path.append(y)
                yield from rec()
                path.pop()
                on_path[y] = False
            for z in touched:
                avail[z] += 1
            if limit is not None and found >= limit:
                return

    if n == 0:
        return
    yield from rec()


@dataclass(frozen=True)
class HamTriple:
    cycles: tuple[frozenset[tuple[int, int]], ...]

    def check(self, d: DualGraph) -> None:
        """Assert the double-cover invariants against ``d``."""
        if len(self.cycles) != 3 or len(set(self.cycles)) != 3:
            raise AssertionError("a triple needs three distinct cycles")
        for c in self.cycles:
            if not is_hamilton_cycle(d, c):
                raise AssertionError("a cycle of the triple is not Hamiltonian")
        for e in d.edges:
            k = sum(1 for c in self.cycles if e in c)
            if k != 2:
                raise AssertionError(f"dual edge {e} lies in {k} cycles")


def is_hamilton_cycle(d: DualGraph, edges: frozenset[tuple[int, int]]) -> bool:
    if len(edges) != d.n or not all(e in d.edge_index for e in edges):
        return False
    nbrs: dict[int, list[int]] = {}
    for a, b in edges:
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    if len(nbrs) != d.n or any(len(v) != 2 for v in nbrs.values()):
        return False
    prev, cur, steps = -1, 0, 0
    while True:
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
        steps += 1
        if cur == 0:
            return steps == d.n


def triple_from_coloring(t: Triangulation, f: Mapping[int, int]) -> HamTriple:
    """Three Hamilton cycles of the dual read off a tree-coloring.

    For each split of the colours into two pairs, the dual edges crossing
    source edges whose ends fall on different sides form one cycle.
    """
    verdict = verify(t, f)
    if not isinstance(verdict, Valid):
        raise ColoringInvalid(str(verdict))
    d = dual(t)
    cycles = []
    for side, _ in PARTITIONS:
        cyc = frozenset(
            d.edges[k] for k, (u, v) in enumerate(t.edges) if (f[u] in side) != (f[v] in side)
        )
        if not is_hamilton_cycle(d, cyc):
            raise CycleDisconnected(f"colours {side} versus the rest do not cut out a Hamilton cycle")
        cycles.append(cyc)
    return HamTriple(tuple(cycles))


def has_double_cover_triple(d: DualGraph) -> tuple[bool, HamTriple | None]:
    """Search for three Hamilton cycles covering every dual edge exactly twice.

    Two cycles of such a triple cover all edges, and the third is then their
    symmetric difference, so only pairs are enumerated.
    """
    cycles = list(ham_cycles(d))
    index = {c: i for i, c in enumerate(cycles)}
    all_edges = frozenset(d.edges)
    for i, a in enumerate(cycles):
        for j in range(i + 1, len(cycles)):
            b = cycles[j]
            if a | b != all_edges:
                continue
            k = index.get(a ^ b)
            if k is not None and k > j:
                return True, HamTriple((a, b, cycles[k]))
    return False, None
