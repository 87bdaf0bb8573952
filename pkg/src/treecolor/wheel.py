"""Contracting 4-wheels: delete a degree-4 centre and identify two opposite rim vertices."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping

from .planar import InvalidTriangulation, Triangulation

log = logging.getLogger(__name__)


class ContractionError(ValueError):
    pass


class NotFourVertex(ContractionError):
    pass


class NeighborsAdjacent(ContractionError):
    pass


class ResultNotSimple(ContractionError):
    pass


class ResultDegreeBelow3(ContractionError):
    pass


class ResultNotTriangulation(ContractionError):
    pass


class MergedPairColorsDiffer(ValueError):
    pass


class NotMpg4Input(ValueError):
    pass


@dataclass(frozen=True)
class Wheel:
    center: int
    rim: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.rim)


def wheel_at(t: Triangulation, v: int) -> Wheel:
    """The wheel around ``v``: its rim is the clockwise neighbour cycle."""
    return Wheel(v, t.rotation[v])


def rim_is_induced(t: Triangulation, v: int) -> bool:
    """True when ``G[N[v]]`` is a wheel, i.e. the rim has no chords."""
    rim = t.rotation[v]
    d = len(rim)
    for i in range(d):
        for j in range(i + 2, d):
            if (i, j) != (0, d - 1) and t.has_edge(rim[i], rim[j]):
                return False
    return True


@dataclass(frozen=True)
class WheelContraction:
    """One application of the contraction at ``center`` merging ``merged``.

    ``mapping`` sends each surviving source vertex to its id in ``result``;
    both merged vertices map to ``merged_vertex``.
    """

    source: Triangulation
    center: int
    merged: tuple[int, int]
    flank: tuple[int, int]
    result: Triangulation
    merged_vertex: int
    mapping: Mapping[int, int]

    def degree_deltas(self) -> dict[int, int]:
        """Result degree minus source degree for each surviving source vertex."""
        src, res = self.source.degrees, self.result.degrees
        u, w = self.merged
        out = {old: res[new] - src[old] for old, new in self.mapping.items() if old not in (u, w)}
        out[u] = res[self.merged_vertex] - src[u]
        out[w] = res[self.merged_vertex] - src[w]
        return out


def contract(t: Triangulation, v: int, u: int, w: int) -> WheelContraction:
    """Delete the 4-vertex ``v`` and identify its opposite neighbours ``u`` and ``w``.

    The merged vertex's rotation is ``u``'s rotation from one flank vertex to
    the other followed by ``w``'s rotation back, so the result inherits the
    embedding.  Surviving vertices are renumbered densely in increasing order
    of their old ids; the merged vertex takes ``u``'s place.
    """
    if t.degrees[v] != 4:
        raise NotFourVertex(f"vertex {v} has degree {t.degrees[v]}, not 4")
    rim = t.rotation[v]
    if u not in rim or w not in rim or u == w:
        raise ValueError(f"{u} and {w} must be two distinct neighbours of {v}")
    if t.has_edge(u, w):
        raise NeighborsAdjacent(f"{u} and {w} are adjacent")
    iu = rim.index(u)
    x, y = rim[(iu + 1) % 4], rim[(iu + 3) % 4]
    extra = (t.adjacency[u] & t.adjacency[w]) - {v, x, y}
    if extra:
        log.debug("contraction at %d rejected: %d,%d share %s", v, u, w, sorted(extra))
        raise ResultNotSimple(
            f"merging {u} and {w} duplicates edges to common neighbours {sorted(extra)}"
        )
    low = [z for z in (x, y) if t.degrees[z] - 2 < 3]
    if low:
        raise ResultDegreeBelow3(f"flank vertex {low[0]} would drop to degree {t.degrees[low[0]] - 2}")
    if t.has_edge(x, y):
        raise ResultNotTriangulation(f"flank vertices {x} and {y} are adjacent; the result is not maximal planar")

    survivors = [z for z in range(t.n) if z not in (v, w)]
    new_id = {old: i for i, old in enumerate(survivors)}
    new_id[w] = new_id[u]
    m = new_id[u]

    def arc(z: int) -> list[int]:
        r = t.rotation[z]
        k = r.index(v)
        return [r[(k + s) % len(r)] for s in range(1, len(r))]

    u_arc, w_arc = arc(u), arc(w)
    if w_arc[0] != u_arc[-1] or w_arc[-1] != u_arc[0]:
        raise ResultNotTriangulation("rotations of the merged pair do not splice")
    merged_rot = u_arc + w_arc[1:-1]

    rot: list[list[int]] = []
    for old in survivors:
        if old == u:
            rot.append([new_id[z] for z in merged_rot])
            continue
        r = t.rotation[old]
        if old in (x, y):
            # u, v, w are consecutive here; keep one copy of the merged vertex
            r = [z for z in r if z not in (v, w)]
        rot.append([new_id[z] for z in r])
    try:
        result = Triangulation(rot)
    except InvalidTriangulation as exc:
        raise ResultNotTriangulation(str(exc)) from None
    mapping = {old: new_id[old] for old in range(t.n) if old != v}
    return WheelContraction(t, v, (u, w), (x, y), result, m, mapping)


def opposite_pairs(t: Triangulation, v: int) -> list[tuple[int, int]]:
    """The two pairs of opposite rim vertices of a 4-vertex."""
    a, b, c, d = t.rotation[v]
    return [(a, c), (b, d)]


def inherited_coloring(f: Mapping[int, int], c: WheelContraction) -> dict[int, int]:
    """Copy ``f`` onto the contracted graph; the merged vertex keeps the shared colour."""
    u, w = c.merged
    if f[u] != f[w]:
        raise MergedPairColorsDiffer(f"f({u})={f[u]} differs from f({w})={f[w]}")
    return {new: f[old] for old, new in c.mapping.items()}


def coloring_guided_pair(t: Triangulation, f: Mapping[int, int], v: int) -> tuple[int, int] | None:
    """The opposite rim pair of the 4-vertex ``v`` that shares a colour under ``f``."""
    for a, b in opposite_pairs(t, v):
        if f[a] == f[b]:
            return (a, b)
    return None


def contractible_vertices(t: Triangulation) -> list[tuple[int, int, int]]:
    """All ``(v, u, w)`` whose contraction stays inside MPG4, with ``u < w``."""
    from .structure import classify

    if not classify(t).in_mpg4:
        raise NotMpg4Input("input graph is not in MPG4")
    out = []
    for v in range(t.n):
        if t.degrees[v] != 4:
            continue
        for a, b in opposite_pairs(t, v):
            u, w = min(a, b), max(a, b)
            try:
                c = contract(t, v, u, w)
            except ContractionError:
                continue
            if classify(c.result).in_mpg4:
                out.append((v, u, w))
    return out
