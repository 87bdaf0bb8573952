"""Plane triangulations stored as rotation systems.

The rotation system (clockwise cyclic neighbour order of every vertex) is the
single source of truth; adjacency sets, degrees and faces are derived lazily.
Vertex ids are dense ``0..n-1``; planar_code uses 1-based bytes and the shift
happens only at the I/O boundary.
"""

from __future__ import annotations

import hashlib
from functools import cached_property
from typing import Iterable, Iterator, Sequence

PLANAR_CODE_HEADER = b">>planar_code<<"
MAX_VERTICES = 255


class InvalidTriangulation(ValueError):
    """A rotation system that is not a simple plane triangulation."""


class PlanarCodeError(ValueError):
    pass


class BadHeader(PlanarCodeError):
    pass


class TruncatedRecord(PlanarCodeError):
    def __init__(self, index: int, reason: str = "unexpected end of data"):
        super().__init__(f"record {index}: {reason}")
        self.index = index
        self.reason = reason


class NotATriangulation(PlanarCodeError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"record {index}: {reason}")
        self.index = index
        self.reason = reason


Face = tuple[int, int, int]


class Triangulation:
    """A maximal planar graph with a fixed combinatorial embedding.

    ``rotation[v]`` lists the neighbours of ``v`` in clockwise order.  The
    constructor validates every triangulation invariant and raises
    :class:`InvalidTriangulation` with a reason when one fails.
    """

    def __init__(self, rotation: Iterable[Sequence[int]], *, validate: bool = True):
        self.rotation: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in rotation)
        if validate:
            self._validate()

    # -- derived data -----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.rotation)

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.rotation) // 2

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rotation)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(r) for r in self.rotation)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Undirected edges as sorted pairs, in lexicographic order."""
        return tuple(sorted((u, v) for u, r in enumerate(self.rotation) for v in r if u < v))

    @cached_property
    def _position(self) -> tuple[dict[int, int], ...]:
        return tuple({w: i for i, w in enumerate(r)} for r in self.rotation)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def min_degree(self) -> int:
        return min(self.degrees)

    def next_cw(self, v: int, u: int, step: int = 1) -> int:
        """The neighbour of ``v`` that comes ``step`` places clockwise after ``u``."""
        r = self.rotation[v]
        return r[(self._position[v][u] + step) % len(r)]

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        return tuple(_trace_faces(self.rotation, self._position))

    @cached_property
    def dart_face(self) -> dict[tuple[int, int], int]:
        """Map each directed edge ``(u, v)`` to the index of the face it bounds."""
        out = {}
        for i, (a, b, c) in enumerate(self.faces):
            out[(a, b)] = i
            out[(b, c)] = i
            out[(c, a)] = i
        return out

    def relabel(self, perm: Sequence[int]) -> Triangulation:
        """Rename vertex ``v`` to ``perm[v]``."""
        rot: list[tuple[int, ...]] = [()] * self.n
        for v, r in enumerate(self.rotation):
            rot[perm[v]] = tuple(perm[w] for w in r)
        return Triangulation(rot)

    def mirror(self) -> Triangulation:
        return Triangulation(tuple(reversed(r)) for r in self.rotation)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Triangulation:
        """Recover the (unique up to mirror) embedding of a maximal planar graph."""
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(n))
        for u, v in edges:
            if u == v:
                raise InvalidTriangulation(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidTriangulation(f"edge ({u}, {v}) out of range for n={n}")
            g.add_edge(u, v)
        if g.number_of_edges() != 3 * n - 6:
            raise InvalidTriangulation(f"expected {3 * n - 6} distinct edges, got {g.number_of_edges()}")
        planar, emb = nx.check_planarity(g)
        if not planar:
            raise InvalidTriangulation("graph is not planar")
        return cls(tuple(emb.neighbors_cw_order(v)) for v in range(n))

    # -- equality / hashing follow the embedding ----------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Triangulation) and self.rotation == other.rotation

    def __hash__(self) -> int:
        return hash(self.rotation)

    def __repr__(self) -> str:
        return f"Triangulation(n={self.n}, degrees={sorted(self.degrees, reverse=True)})"

    # -- validation ---------------------------------------------------------

    def _validate(self) -> None:
        n = self.n
        rot = self.rotation
        if n < 4:
            raise InvalidTriangulation(f"need at least 4 vertices, got {n}")
        if n > MAX_VERTICES:
            raise InvalidTriangulation(f"at most {MAX_VERTICES} vertices supported, got {n}")
        for v, r in enumerate(rot):
            if len(r) < 3:
                raise InvalidTriangulation(f"vertex {v} has degree {len(r)} < 3")
            if len(set(r)) != len(r):
                raise InvalidTriangulation(f"vertex {v} has a repeated neighbour")
            for w in r:
                if not 0 <= w < n:
                    raise InvalidTriangulation(f"vertex {v} has out-of-range neighbour {w}")
                if w == v:
                    raise InvalidTriangulation(f"loop at vertex {v}")
        adj = self.adjacency
        for v, r in enumerate(rot):
            for w in r:
                if v not in adj[w]:
                    raise InvalidTriangulation(f"edge {v}->{w} has no reverse")
        if self.m != 3 * n - 6:
            raise InvalidTriangulation(f"edge count {self.m} != 3n-6 = {3 * n - 6}")
        faces = self.faces
        if len(faces) != 2 * n - 4:
            raise InvalidTriangulation(f"face count {len(faces)} != 2n-4 = {2 * n - 4}")
        # connectivity: Euler's formula with 2n-4 triangular faces already forces
        # a single sphere component, but a cheap BFS keeps the reason explicit
        seen = {0}
        stack = [0]
        while stack:
            for w in rot[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n:
            raise InvalidTriangulation("graph is disconnected")


def _trace_faces(rotation, position) -> Iterator[Face]:
    """Trace faces; the dart after ``u->v`` is ``v->w`` with ``w`` clockwise-next to ``u`` at ``v``.

    Raises InvalidTriangulation on a non-triangular face.
    """
    used: set[tuple[int, int]] = set()
    for u, r in enumerate(rotation):
        for v in r:
            if (u, v) in used:
                continue
            walk = [u]
            a, b = u, v
            while True:
                used.add((a, b))
                rb = rotation[b]
                c = rb[(position[b][a] + 1) % len(rb)]
                a, b = b, c
                if (a, b) == (u, v):
                    break
                walk.append(a)
                if len(walk) > 3:
                    raise InvalidTriangulation(f"face through dart {u}->{v} is not a triangle")
            if len(walk) != 3:
                raise InvalidTriangulation(f"face through dart {u}->{v} has length {len(walk)}")
            yield (walk[0], walk[1], walk[2])


def faces(t: Triangulation) -> list[Face]:
    return list(t.faces)


# ---------------------------------------------------------------------------
# canonical code
# ---------------------------------------------------------------------------


def _bfs_code(rot, pos, n: int, u: int, v: int, reverse: bool, best: list[int] | None) -> list[int] | None:
    """planar_code body of the embedding numbered by BFS from dart ``u->v``.

    Returns None as soon as the partial code exceeds ``best``.
    """
    number = [0] * n
    first = [0] * n
    number[u] = 1
    first[u] = v
    order = [u]
    out: list[int] = []
    k = 1
    tight = best is not None
    i = 0
    for x in order:
        r = rot[x]
        d = len(r)
        i0 = pos[x][first[x]]
        step = -1 if reverse else 1
        for t in range(d):
            y = r[(i0 + step * t) % d]
            ny = number[y]
            if ny == 0:
                k += 1
                number[y] = ny = k
                first[y] = x
                order.append(y)
            if tight:
                b = best[i]
                if ny > b:
                    return None
                if ny < b:
                    tight = False
            out.append(ny)
            i += 1
        if tight:
            if best[i] != 0:
                return None
        out.append(0)
        i += 1
    return out


def _start_darts(t: Triangulation) -> list[tuple[int, int]]:
    """Darts whose endpoint invariants are lexicographically largest.

    The invariant is preserved by isomorphisms and mirroring, so taking the
    minimal code over this subset is still canonical.
    """
    deg = t.degrees
    inv = [(deg[v], tuple(sorted(deg[w] for w in r))) for v, r in enumerate(t.rotation)]
    top = max(inv)
    best_key = None
    darts: list[tuple[int, int]] = []
    for u, r in enumerate(t.rotation):
        if inv[u] != top:
            continue
        for v in r:
            key = inv[v]
            if best_key is None or key > best_key:
                best_key = key
                darts = [(u, v)]
            elif key == best_key:
                darts.append((u, v))
    return darts


def canonical_code(t: Triangulation) -> bytes:
    """Isomorphism-invariant planar_code record of ``t``.

    Minimises the BFS planar code over both orientations and all start darts
    in an invariant-selected subset.  Every triangulation on at least four
    vertices is 3-connected, so its embedding is unique up to reflection and
    equal codes mean isomorphic graphs.
    """
    rot = t.rotation
    pos = t._position
    n = t.n
    best: list[int] | None = None
    for u, v in _start_darts(t):
        for reverse in (False, True):
            code = _bfs_code(rot, pos, n, u, v, reverse, best)
            if code is not None and (best is None or code < best):
                best = code
    assert best is not None
    return bytes([n]) + bytes(best)


def canonical_form(t: Triangulation) -> Triangulation:
    """The triangulation decoded from its canonical code (canonical labelling)."""
    return _decode_record(canonical_code(t), 0)


def code_digest(code: bytes) -> str:
    """Short stable hash of a canonical code for report rows."""
    return hashlib.sha1(code).hexdigest()[:12]


def is_isomorphic(a: Triangulation, b: Triangulation) -> bool:
    return a.n == b.n and canonical_code(a) == canonical_code(b)


# ---------------------------------------------------------------------------
# planar_code I/O
# ---------------------------------------------------------------------------


def _decode_record(record: bytes, index: int) -> Triangulation:
    n = record[0]
    rot: list[list[int]] = []
    cur: list[int] = []
    for b in record[1:]:
        if b == 0:
            rot.append(cur)
            cur = []
        else:
            if b > n:
                raise NotATriangulation(index, f"neighbour {b} exceeds n={n}")
            cur.append(b - 1)
    try:
        return Triangulation(rot)
    except InvalidTriangulation as exc:
        raise NotATriangulation(index, str(exc)) from None


def iter_planar_code(data: bytes) -> Iterator[tuple[int, Triangulation | PlanarCodeError]]:
    """Decode records one by one, yielding ``(index, graph_or_error)``.

    A record that decodes but is not a triangulation yields its error and
    decoding continues; a truncated record ends the stream.
    """
    if not data.startswith(PLANAR_CODE_HEADER):
        raise BadHeader("input does not begin with '>>planar_code<<'")
    pos = len(PLANAR_CODE_HEADER)
    index = 0
    while pos < len(data):
        start = pos
        n = data[pos]
        pos += 1
        if n == 0:
            yield index, NotATriangulation(index, "record declares zero vertices")
            return
        zeros = 0
        while zeros < n:
            if pos >= len(data):
                yield index, TruncatedRecord(index)
                return
            if data[pos] == 0:
                zeros += 1
            pos += 1
        try:
            yield index, _decode_record(data[start:pos], index)
        except NotATriangulation as exc:
            yield index, exc
        index += 1


def parse_planar_code(data: bytes) -> list[Triangulation]:
    """Decode a whole planar_code stream; the first bad record raises."""
    out = []
    for _, item in iter_planar_code(data):
        if isinstance(item, PlanarCodeError):
            raise item
        out.append(item)
    return out


def encode_record(t: Triangulation) -> bytes:
    body = bytearray([t.n])
    for r in t.rotation:
        body.extend(w + 1 for w in r)
        body.append(0)
    return bytes(body)


def write_planar_code(graphs: Iterable[Triangulation]) -> bytes:
    return PLANAR_CODE_HEADER + b"".join(encode_record(t) for t in graphs)


# ---------------------------------------------------------------------------
# edge-list text format
# ---------------------------------------------------------------------------


def parse_edge_list(text: str) -> Triangulation:
    """Parse ``n m`` followed by ``m`` lines ``u v`` (0-based)."""
    tokens = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not tokens or len(tokens[0]) != 2:
        raise InvalidTriangulation("edge list must start with a line 'n m'")
    n, m = int(tokens[0][0]), int(tokens[0][1])
    rows = tokens[1:]
    if len(rows) != m:
        raise InvalidTriangulation(f"header declares {m} edges but {len(rows)} follow")
    edges = []
    for row in rows:
        if len(row) != 2:
            raise InvalidTriangulation(f"bad edge line: {' '.join(row)}")
        edges.append((int(row[0]), int(row[1])))
    return Triangulation.from_edges(n, edges)


def format_edge_list(t: Triangulation) -> str:
    lines = [f"{t.n} {t.m}"]
    lines.extend(f"{u} {v}" for u, v in t.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# named small triangulations
# ---------------------------------------------------------------------------


def k4() -> Triangulation:
    return Triangulation.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def bipyramid(k: int) -> Triangulation:
    """Equator ``0..k-1`` with apexes ``k`` and ``k+1``; ``k=3`` is the unique 5-vertex triangulation."""
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(i, k) for i in range(k)] + [(i, k + 1) for i in range(k)]
    if k == 3:
        edges = list({tuple(sorted(e)) for e in edges})
    return Triangulation.from_edges(k + 2, edges)


def octahedron() -> Triangulation:
    return bipyramid(4)


def icosahedron() -> Triangulation:
    top, bottom = 0, 11
    upper = list(range(1, 6))
    lower = list(range(6, 11))
    edges = []
    for i in range(5):
        edges += [(top, upper[i]), (bottom, lower[i])]
        edges += [(upper[i], upper[(i + 1) % 5]), (lower[i], lower[(i + 1) % 5])]
        edges += [(upper[i], lower[i]), (upper[i], lower[(i + 1) % 5])]
    return Triangulation.from_edges(12, edges)
