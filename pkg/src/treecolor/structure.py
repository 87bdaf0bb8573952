"""Odd-vertex census, separating triangles, 4-connectivity and MPG4 classification."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .colorer import SolveStats, Valid, solve, verify
from .planar import Triangulation


class TooSmall(ValueError):
    pass


class NotSeparating(ValueError):
    pass


class OddShape(str, Enum):
    """Isomorphism type of the subgraph induced by four odd vertices."""

    EMPTY = "4K1"
    ONE_EDGE = "K2+2K1"
    PATH3 = "P3+K1"
    MATCHING = "2K2"
    PATH4 = "P4"
    CYCLE4 = "C4"
    CLAW = "CLAW"
    HAS_TRIANGLE = "HAS_TRIANGLE"
    OTHER = "OTHER"

    def __str__(self) -> str:
        return self.value


ADMISSIBLE_SHAPES = frozenset(
    {OddShape.EMPTY, OddShape.ONE_EDGE, OddShape.PATH3, OddShape.MATCHING, OddShape.PATH4, OddShape.CYCLE4}
)

# (edge count, sorted degrees) identifies every graph on four vertices
_SHAPE_BY_DEGREES = {
    (0, (0, 0, 0, 0)): OddShape.EMPTY,
    (1, (0, 0, 1, 1)): OddShape.ONE_EDGE,
    (2, (0, 1, 1, 2)): OddShape.PATH3,
    (2, (1, 1, 1, 1)): OddShape.MATCHING,
    (3, (1, 1, 2, 2)): OddShape.PATH4,
    (3, (1, 1, 1, 3)): OddShape.CLAW,
    (3, (0, 2, 2, 2)): OddShape.HAS_TRIANGLE,
    (4, (2, 2, 2, 2)): OddShape.CYCLE4,
    (4, (1, 2, 2, 3)): OddShape.HAS_TRIANGLE,
    (5, (2, 2, 3, 3)): OddShape.HAS_TRIANGLE,
    (6, (3, 3, 3, 3)): OddShape.HAS_TRIANGLE,
}


@dataclass(frozen=True)
class OddProfile:
    odd_vertices: frozenset[int]
    o_count: int
    euler_deficit: int


def odd_profile(t: Triangulation) -> OddProfile:
    odd = frozenset(v for v, d in enumerate(t.degrees) if d % 2)
    return OddProfile(odd, len(odd), sum(d - 6 for d in t.degrees))


def triangles(t: Triangulation) -> list[tuple[int, int, int]]:
    out = []
    adj = t.adjacency
    for u in range(t.n):
        for v in adj[u]:
            if v <= u:
                continue
            for w in adj[u] & adj[v]:
                if w > v:
                    out.append((u, v, w))
    return sorted(out)


def _components_without(t: Triangulation, removed: set[int]) -> list[list[int]]:
    seen = set(removed)
    comps = []
    for s in range(t.n):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        todo = [s]
        while todo:
            for y in t.rotation[todo.pop()]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    todo.append(y)
        comps.append(sorted(comp))
    return comps


def separating_triangles(t: Triangulation) -> list[tuple[int, int, int]]:
    """Triangles that are not faces; each one disconnects ``t`` when removed."""
    face_set = {tuple(sorted(f)) for f in t.faces}
    out = [c for c in triangles(t) if c not in face_set]
    for c in out:
        assert len(_components_without(t, set(c))) >= 2, f"non-facial triangle {c} does not separate"
    return out


@dataclass(frozen=True)
class CycleSplit:
    cycle: tuple[int, int, int]
    interior: Triangulation
    exterior: Triangulation
    interior_vertices: tuple[int, ...]
    exterior_vertices: tuple[int, ...]


def induced_triangulation(t: Triangulation, keep: list[int]) -> Triangulation:
    """Restrict the embedding to ``keep`` (sorted old ids become ``0..k-1``)."""
    keep = sorted(keep)
    new_id = {old: i for i, old in enumerate(keep)}
    return Triangulation([new_id[w] for w in t.rotation[v] if w in new_id] for v in keep)


def split(t: Triangulation, cycle: tuple[int, int, int]) -> CycleSplit:
    """Cut ``t`` along a separating triangle.

    The interior is the side with fewer vertices (ties go to the side holding
    the smallest vertex id).  Each part keeps ``cycle`` and is relabelled in
    increasing order of old ids; ``interior_vertices`` lists those old ids.
    """
    c = tuple(sorted(cycle))
    if len(set(c)) != 3 or not all(t.has_edge(a, b) for a, b in itertools.combinations(c, 2)):
        raise NotSeparating(f"{cycle} is not a triangle")
    comps = _components_without(t, set(c))
    if len(comps) < 2:
        raise NotSeparating(f"{cycle} does not separate the graph")
    assert len(comps) == 2
    inner, outer = sorted(comps, key=lambda comp: (len(comp), comp[0]))
    ivs = sorted(inner + list(c))
    evs = sorted(outer + list(c))
    return CycleSplit(c, induced_triangulation(t, ivs), induced_triangulation(t, evs), tuple(ivs), tuple(evs))


def is_4connected(t: Triangulation) -> bool:
    if t.n <= 4:
        raise TooSmall("4-connectivity needs at least 5 vertices")
    return not separating_triangles(t)


def odd_shape(t: Triangulation, vertices) -> OddShape:
    vs = list(vertices)
    if len(vs) != 4:
        raise ValueError("odd shapes are defined for exactly four vertices")
    degs = [sum(1 for w in vs if t.has_edge(v, w)) for v in vs]
    return _SHAPE_BY_DEGREES.get((sum(degs) // 2, tuple(sorted(degs))), OddShape.OTHER)


@dataclass(frozen=True)
class Mpg4Report:
    n: int
    min_degree: int
    is_4connected: bool
    is_tree_colorable: bool
    o_count: int
    in_mpg4: bool
    odd_shape: OddShape | None
    euler_deficit: int
    stats: SolveStats
    coloring: dict[int, int] | None = None
    # an acyclic colouring whose bichromatic forest is disconnected
    forest_disconnected: bool = False


def classify(t: Triangulation) -> Mpg4Report:
    """Compute the MPG4 membership data of ``t``.

    ``odd_shape`` is only computed when exactly four vertices are odd.
    """
    prof = odd_profile(t)
    four = t.n > 4 and is_4connected(t)
    coloring, stats = solve(t)
    colorable = coloring is not None
    shape = odd_shape(t, sorted(prof.odd_vertices)) if prof.o_count == 4 else None
    return Mpg4Report(
        n=t.n,
        min_degree=t.min_degree(),
        is_4connected=four,
        is_tree_colorable=colorable,
        o_count=prof.o_count,
        in_mpg4=four and colorable and prof.o_count == 4,
        odd_shape=shape,
        euler_deficit=prof.euler_deficit,
        stats=stats,
        coloring=coloring,
        forest_disconnected=colorable and not isinstance(verify(t, coloring), Valid),
    )


# ---------------------------------------------------------------------------
# configurations used in the proofs
# ---------------------------------------------------------------------------

G7_PROFILE = "G7_PROFILE"
G8_PROFILE = "G8_PROFILE"
LEM4_FIG2_PROFILE = "LEM4_FIG2_PROFILE"


def _four_neighbours(t: Triangulation, v: int) -> list[int]:
    return [w for w in t.rotation[v] if t.degrees[w] == 4]


def _has_g7_profile(t: Triangulation) -> bool:
    return t.n == 7 and any(
        t.degrees[v] == 5 and len(_four_neighbours(t, v)) >= 4 for v in range(t.n)
    )


def _has_g8_profile(t: Triangulation) -> bool:
    """Four 5-vertices, one of which sees three 4-vertices spanning exactly one edge."""
    if t.n != 8 or Counter(t.degrees) != Counter({5: 4, 4: 4}):
        return False
    for v in range(t.n):
        if t.degrees[v] != 5:
            continue
        fours = _four_neighbours(t, v)
        if len(fours) != 3:
            continue
        if sum(1 for a, b in itertools.combinations(fours, 2) if t.has_edge(a, b)) == 1:
            return True
    return False


def _has_lem4_fig2_profile(t: Triangulation) -> bool:
    """A 9-vertex whose rim reads (5, 4, 4) three times, each 4-pair closed by a 6-vertex."""
    if t.n != 13 or Counter(t.degrees) != Counter({9: 1, 5: 3, 4: 6, 6: 3}):
        return False
    deg = t.degrees
    for v in range(t.n):
        if deg[v] != 9:
            continue
        rim = t.rotation[v]
        for shift in range(3):
            pattern = [deg[rim[(shift + k) % 9]] for k in range(9)]
            if pattern != [5, 4, 4] * 3:
                continue
            ok = True
            for k in range(3):
                a, b = rim[(shift + 3 * k + 1) % 9], rim[(shift + 3 * k + 2) % 9]
                common = (t.adjacency[a] & t.adjacency[b]) - {v}
                if len(common) != 1 or deg[next(iter(common))] != 6:
                    ok = False
            if ok:
                return True
    return False


def recognize_special(t: Triangulation) -> set[str]:
    tags = set()
    if _has_g7_profile(t):
        tags.add(G7_PROFILE)
    if _has_g8_profile(t):
        tags.add(G8_PROFILE)
    if _has_lem4_fig2_profile(t):
        tags.add(LEM4_FIG2_PROFILE)
    return tags


def nine_wheel_graph() -> Triangulation:
    """The 13-vertex configuration around a 9-vertex with six rim 4-vertices.

    Centre 0 has rim 1..9; the rim pairs (2,3), (5,6), (8,9) are 4-vertices
    closed off by 10, 11, 12, which form a triangle.
    """
    edges = [(0, i) for i in range(1, 10)]
    edges += [(i, i % 9 + 1) for i in range(1, 10)]
    edges += [(10, 1), (10, 2), (10, 3), (10, 4)]
    edges += [(11, 4), (11, 5), (11, 6), (11, 7)]
    edges += [(12, 7), (12, 8), (12, 9), (12, 1)]
    edges += [(10, 11), (11, 12), (12, 10)]
    return Triangulation.from_edges(13, edges)
