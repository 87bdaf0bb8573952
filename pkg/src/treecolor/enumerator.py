"""Isomorph-free generation of plane triangulations and batch theorem scans.

Triangulations on ``n+1`` vertices are obtained from those on ``n`` vertices
by splitting a vertex (the inverse of contracting an edge).  Every
triangulation with at least five vertices has an edge outside all separating
triangles, so this reaches every isomorphism class; duplicates are dropped by
canonical code.
"""

from __future__ import annotations

import json
import logging
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .planar import (
    PlanarCodeError,
    Triangulation,
    canonical_code,
    code_digest,
    iter_planar_code,
    k4,
)

log = logging.getLogger(__name__)

DEFAULT_SOFT_CAP = 14


class SoftCapExceeded(ValueError):
    pass


def soft_cap() -> int:
    value = os.environ.get("TREECOLOR_SOFT_CAP")
    return int(value) if value else DEFAULT_SOFT_CAP


def split_vertex(t: Triangulation, v: int, i: int, j: int) -> Triangulation:
    """Split ``v`` along the rotation positions ``i`` and ``j``.

    ``v`` keeps the clockwise arc ``rot[i]..rot[j]``; a new vertex ``n`` takes
    the arc ``rot[j]..rot[i]``; both stay adjacent to ``rot[i]`` and ``rot[j]``
    and to each other.
    """
    rot = [list(r) for r in t.rotation]
    r = t.rotation[v]
    d = len(r)
    if i == j or not (0 <= i < d and 0 <= j < d):
        raise ValueError("split positions must be distinct rotation indices")
    w = t.n
    a, b = r[i], r[j]
    keep = [r[(i + s) % d] for s in range((j - i) % d + 1)]
    give = [r[(j + s) % d] for s in range((i - j) % d + 1)]
    rot[v] = keep + [w]
    rot.append(give + [v])
    for x in give[1:-1]:
        rx = rot[x]
        rx[rx.index(v)] = w
    # w sits on the side of a's predecessor and b's successor around v
    for shared, side in ((a, r[(i - 1) % d]), (b, r[(j + 1) % d])):
        rs = rot[shared]
        k = rs.index(v)
        if rs[k - 1] == side:
            rs.insert(k, w)
        else:
            rs.insert(k + 1, w)
    return Triangulation(rot)


def expansions(t: Triangulation) -> Iterator[Triangulation]:
    """Every vertex split of ``t``; each yields a triangulation on ``n+1`` vertices."""
    for v, r in enumerate(t.rotation):
        d = len(r)
        for i in range(d):
            for j in range(i + 1, d):
                yield split_vertex(t, v, i, j)


@dataclass
class GenFrontier:
    """Generation state: the distinct codes seen and the count emitted per size."""

    n: int = 4
    seen: dict[int, set[bytes]] = field(default_factory=dict)
    emitted: Counter = field(default_factory=Counter)
    level: list[Triangulation] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.level:
            base = k4()
            self.level = [base]
            self.seen[4] = {canonical_code(base)}
            self.emitted[4] = 1

    def advance(self) -> list[Triangulation]:
        """Build the next level from the current one."""
        nxt: list[Triangulation] = []
        codes: set[bytes] = set()
        for t in self.level:
            for child in expansions(t):
                code = canonical_code(child)
                if code not in codes:
                    codes.add(code)
                    nxt.append(child)
        self.n += 1
        self.seen[self.n] = codes
        self.emitted[self.n] = len(nxt)
        self.level = nxt
        return nxt


def _check_cap(n: int, override: bool) -> None:
    if n < 4:
        raise ValueError("triangulations need at least 4 vertices")
    if n > soft_cap() and not override:
        raise SoftCapExceeded(
            f"n={n} exceeds the soft cap {soft_cap()}; set TREECOLOR_SOFT_CAP or pass override"
        )


def generate_levels(n_max: int, n_min: int = 4, override: bool = False) -> Iterator[tuple[int, list[Triangulation]]]:
    """Yield ``(n, graphs)`` for ``n_min <= n <= n_max``, graphs sorted by canonical code."""
    _check_cap(n_max, override)
    frontier = GenFrontier()
    while True:
        if frontier.n >= n_min:
            yield frontier.n, sorted(frontier.level, key=canonical_code)
        if frontier.n >= n_max:
            return
        frontier.advance()
        log.debug("generated %d triangulations on %d vertices", frontier.emitted[frontier.n], frontier.n)


def generate(n: int, override: bool = False) -> list[Triangulation]:
    """All triangulations on ``n`` vertices up to isomorphism, in canonical-code order."""
    for size, graphs in generate_levels(n, n_min=n, override=override):
        if size == n:
            return graphs
    return []


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------

ROW_FIELDS = (
    "n",
    "index",
    "code",
    "min_degree",
    "is_4connected",
    "o_count",
    "tree_colorable",
    "in_mpg4",
    "odd_shape",
    "solve_nodes",
)


@dataclass
class ScanRow:
    n: int
    index: int
    code: str
    min_degree: int
    is_4connected: bool
    o_count: int
    tree_colorable: bool
    in_mpg4: bool
    odd_shape: str
    solve_nodes: int
    elapsed: float = 0.0


@dataclass
class Falsification:
    n: int
    code: str
    claim: str
    detail: str


@dataclass
class LevelTally:
    triangulations: int = 0
    min_degree_ge4: int = 0
    tree_colorable: int = 0
    mpg4: int = 0
    shapes: Counter = field(default_factory=Counter)


@dataclass
class ScanReport:
    tallies: dict[int, LevelTally] = field(default_factory=dict)
    rows: list[ScanRow] = field(default_factory=list)
    falsifications: list[Falsification] = field(default_factory=list)
    errors: list[tuple[int, str]] = field(default_factory=list)

    def mpg4_counts(self) -> dict[int, int]:
        return {n: t.mpg4 for n, t in sorted(self.tallies.items())}

    def add(self, row: ScanRow, found: list[Falsification]) -> None:
        tally = self.tallies.setdefault(row.n, LevelTally())
        tally.triangulations += 1
        tally.min_degree_ge4 += row.min_degree >= 4
        tally.tree_colorable += row.tree_colorable
        if row.in_mpg4:
            tally.mpg4 += 1
            tally.shapes[row.odd_shape] += 1
        self.rows.append(row)
        self.falsifications.extend(found)

    def to_csv(self, timing: bool = False) -> str:
        fields = ROW_FIELDS + (("elapsed",) if timing else ())
        lines = [",".join(fields)]
        for row in self.rows:
            values = []
            for name in fields:
                value = getattr(row, name)
                if isinstance(value, bool):
                    value = int(value)
                elif isinstance(value, float):
                    value = f"{value:.6f}"
                values.append(str(value))
            lines.append(",".join(values))
        return "\n".join(lines) + "\n"

    def summary(self) -> dict:
        return {
            "levels": [
                {
                    "n": n,
                    "triangulations": t.triangulations,
                    "min_degree_ge4": t.min_degree_ge4,
                    "tree_colorable": t.tree_colorable,
                    "mpg4": t.mpg4,
                    "mpg4_shapes": dict(sorted(t.shapes.items())),
                }
                for n, t in sorted(self.tallies.items())
            ],
            "falsifications": [vars(f) for f in self.falsifications],
            "errors": [{"index": i, "message": msg} for i, msg in self.errors],
        }

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2) + "\n"


def check_graph(t: Triangulation, index: int = 0) -> tuple[ScanRow, list[Falsification]]:
    """Classify one triangulation and list every theorem it would falsify."""
    from .structure import OddShape, classify

    code = code_digest(canonical_code(t))
    found: list[Falsification] = []

    def flag(claim: str, detail: str) -> None:
        found.append(Falsification(t.n, code, claim, detail))

    rep = classify(t)
    if rep.forest_disconnected:
        flag("bichromatic-forests-are-trees", "an acyclic 4-coloring has a disconnected bichromatic forest")
    if rep.euler_deficit != -12:
        flag("euler-deficit", f"sum of (d-6) is {rep.euler_deficit}")
    if rep.is_tree_colorable and rep.min_degree >= 4 and rep.o_count < 4:
        flag("at-least-four-odd-vertices", f"tree-colorable with min degree {rep.min_degree} and {rep.o_count} odd vertices")
    if rep.in_mpg4 and rep.odd_shape == OddShape.HAS_TRIANGLE:
        flag("odd-subgraph-triangle-free", "MPG4 graph whose odd vertices span a triangle")
    if rep.in_mpg4 and rep.odd_shape == OddShape.CLAW:
        flag("odd-subgraph-not-claw", "MPG4 graph whose odd vertices induce a claw")
    if rep.in_mpg4 and rep.odd_shape == OddShape.OTHER:
        flag("odd-shape-classified", "odd subgraph matched no template")
    row = ScanRow(
        n=t.n,
        index=index,
        code=code,
        min_degree=rep.min_degree,
        is_4connected=rep.is_4connected,
        o_count=rep.o_count,
        tree_colorable=rep.is_tree_colorable,
        in_mpg4=rep.in_mpg4,
        odd_shape=str(rep.odd_shape) if rep.odd_shape is not None else "",
        solve_nodes=rep.stats.nodes,
        elapsed=rep.stats.elapsed,
    )
    return row, found


def _check_rotation(args: tuple[tuple[tuple[int, ...], ...], int]) -> tuple[ScanRow, list[Falsification]]:
    rotation, index = args
    return check_graph(Triangulation(rotation), index)


def _check_many(graphs: list[tuple[Triangulation, int]], jobs: int) -> list[tuple[ScanRow, list[Falsification]]]:
    if jobs <= 1 or len(graphs) < 2:
        return [check_graph(t, i) for t, i in graphs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_check_rotation, [(t.rotation, i) for t, i in graphs], chunksize=64))


def scan(n_max: int, n_min: int = 4, jobs: int = 1, override: bool = False) -> ScanReport:
    """Generate and classify every triangulation with ``n_min <= n <= n_max``."""
    report = ScanReport()
    for n, graphs in generate_levels(n_max, n_min=n_min, override=override):
        start = time.perf_counter()
        for row, found in _check_many([(t, i) for i, t in enumerate(graphs)], jobs):
            report.add(row, found)
        tally = report.tallies.get(n, LevelTally())
        log.info(
            "n=%d: %d triangulations, %d tree-colorable, %d in MPG4 (%.1fs)",
            n, tally.triangulations, tally.tree_colorable, tally.mpg4, time.perf_counter() - start,
        )
    return report


def ingest_and_scan(source: bytes | str | os.PathLike, jobs: int = 1) -> ScanReport:
    """Classify the graphs of a planar_code file; bad records are reported by index."""
    if isinstance(source, bytes):
        data = source
    else:
        with open(source, "rb") as fh:
            data = fh.read()
    report = ScanReport()
    if not data:
        return report
    graphs: list[tuple[Triangulation, int]] = []
    for index, item in iter_planar_code(data):
        if isinstance(item, PlanarCodeError):
            report.errors.append((index, str(item)))
            log.warning("%s", item)
        else:
            graphs.append((item, index))
    for row, found in _check_many(graphs, jobs):
        report.add(row, found)
    return report


def write_levels(graphs: Iterable[Triangulation]) -> bytes:
    from .planar import write_planar_code

    return write_planar_code(graphs)
