"""Command-line entry point.

Data goes to standard output (or ``--output``); diagnostics go to standard
error.  Exit status: 0 success, 1 domain error, 2 usage error, 3 a theorem
was falsified.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from . import colorer, enumerator, planar, structure, wheel
from .dual import dual as build_dual, has_double_cover_triple, triple_from_coloring

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_FALSIFIED = 0, 1, 2, 3

log = logging.getLogger("treecolor")


class DomainError(Exception):
    pass


# ---------------------------------------------------------------------------
# I/O helpers
# ---------------------------------------------------------------------------


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def load_graphs(path: str, fmt: str | None = None) -> list[planar.Triangulation]:
    data = _read_bytes(path)
    if fmt is None:
        fmt = "planar_code" if data.startswith(planar.PLANAR_CODE_HEADER) else "edge-list"
    try:
        if fmt == "planar_code":
            return planar.parse_planar_code(data)
        return [planar.parse_edge_list(data.decode("ascii"))]
    except (planar.PlanarCodeError, planar.InvalidTriangulation, UnicodeDecodeError, ValueError) as exc:
        raise DomainError(f"{path}: {exc}") from None


class Output:
    """Collects text or bytes for standard output or a file."""

    def __init__(self, path: str | None):
        self.path = path
        self.parts: list[bytes] = []

    def text(self, s: str) -> None:
        self.parts.append(s.encode())

    def raw(self, b: bytes) -> None:
        self.parts.append(b)

    def flush(self) -> None:
        data = b"".join(self.parts)
        if self.path and self.path != "-":
            with open(self.path, "wb") as fh:
                fh.write(data)
        else:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()


def _diag(msg: str) -> None:
    print(msg, file=sys.stderr)


def _header(out: Output, graphs: list, i: int) -> None:
    if len(graphs) > 1:
        out.text(f"# graph {i}\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_validate(args, out: Output) -> int:
    data = _read_bytes(args.input)
    status = EXIT_OK
    if args.format == "edge-list" or not data.startswith(planar.PLANAR_CODE_HEADER):
        try:
            t = planar.parse_edge_list(data.decode("ascii"))
        except (planar.InvalidTriangulation, ValueError) as exc:
            out.text(f"0 invalid {exc}\n")
            return EXIT_DOMAIN
        out.text(f"0 valid n={t.n} m={t.m} faces={len(t.faces)}\n")
        return status
    try:
        for index, item in planar.iter_planar_code(data):
            if isinstance(item, planar.PlanarCodeError):
                out.text(f"{index} invalid {item.reason if hasattr(item, 'reason') else item}\n")
                status = EXIT_DOMAIN
            else:
                out.text(f"{index} valid n={item.n} m={item.m} faces={len(item.faces)}\n")
    except planar.BadHeader as exc:
        raise DomainError(str(exc)) from None
    return status


def cmd_solve(args, out: Output) -> int:
    graphs = load_graphs(args.input, args.format)
    status = EXIT_OK
    for i, t in enumerate(graphs):
        f, stats = colorer.solve(t)
        _header(out, graphs, i)
        if f is None:
            _diag(f"graph {i}: no tree-coloring ({stats.nodes} search nodes)")
            if args.require:
                status = EXIT_DOMAIN
            continue
        out.text(colorer.format_coloring(f))
        if args.witness:
            _diag(f"graph {i}: found after {stats.nodes} search nodes")
    return status


def cmd_verify(args, out: Output) -> int:
    graphs = load_graphs(args.input, args.format)
    if len(graphs) != 1:
        raise DomainError("verify expects exactly one graph")
    t = graphs[0]
    try:
        f = colorer.parse_coloring(_read_bytes(args.coloring).decode("ascii"))
        verdict = colorer.verify(t, f)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    out.text(f"{verdict}\n")
    return EXIT_OK if isinstance(verdict, colorer.Valid) else EXIT_DOMAIN


def cmd_count(args, out: Output) -> int:
    graphs = load_graphs(args.input, args.format)
    for i, t in enumerate(graphs):
        count = colorer.count_colorings(t, up_to_color_permutation=args.partitions)
        out.text(f"{count}\n" if len(graphs) == 1 else f"{i} {count}\n")
    return EXIT_OK


def cmd_contract(args, out: Output) -> int:
    graphs = load_graphs(args.input, args.format)
    if len(graphs) != 1:
        raise DomainError("contract expects exactly one graph")
    t = graphs[0]
    u, w = args.pair
    try:
        c = wheel.contract(t, args.center, u, w)
    except (wheel.ContractionError, ValueError) as exc:
        raise DomainError(f"{type(exc).__name__}: {exc}") from None
    if args.out_format == "planar_code":
        out.raw(planar.write_planar_code([c.result]))
    else:
        out.text(planar.format_edge_list(c.result))
    if args.witness:
        x, y = c.flank
        _diag(
            f"center {c.center} merged {u},{w} -> {c.merged_vertex} flank {x},{y} "
            f"degrees {t.degrees[u]}+{t.degrees[w]}-4={c.result.degrees[c.merged_vertex]}"
        )
        _diag("mapping " + " ".join(f"{a}->{b}" for a, b in sorted(c.mapping.items())))
    if args.coloring:
        f = colorer.parse_coloring(_read_bytes(args.coloring).decode("ascii"))
        try:
            g = wheel.inherited_coloring(f, c)
        except wheel.MergedPairColorsDiffer as exc:
            raise DomainError(str(exc)) from None
        verdict = colorer.verify(c.result, g)
        _diag(f"inherited coloring: {verdict}")
        _diag(colorer.format_coloring(g).rstrip())
        if not isinstance(verdict, colorer.Valid):
            return EXIT_FALSIFIED
    return EXIT_OK


def cmd_dual(args, out: Output) -> int:
    graphs = load_graphs(args.input, args.format)
    for i, t in enumerate(graphs):
        d = build_dual(t)
        _header(out, graphs, i)
        out.text(f"{d.n} {d.m}\n")
        out.text("".join(f"{a} {b}\n" for a, b in d.edges))
        if args.witness:
            for k, face in enumerate(d.face_map):
                _diag(f"dual vertex {k} = face {face[0]} {face[1]} {face[2]}")
    return EXIT_OK


def cmd_equiv(args, out: Output) -> int:
    graphs = load_graphs(args.input, args.format)
    status = EXIT_OK
    out.text("index,n,tree_colorable,double_cover,agree\n")
    for i, t in enumerate(graphs):
        f, _ = colorer.solve(t)
        d = build_dual(t)
        ok, triple = has_double_cover_triple(d)
        agree = (f is not None) == ok
        if f is not None:
            try:
                triple_from_coloring(t, f).check(d)
            except AssertionError as exc:
                _diag(f"graph {i}: coloring does not give a Hamilton triple: {exc}")
                agree = False
        out.text(f"{i},{t.n},{int(f is not None)},{int(ok)},{int(agree)}\n")
        if not agree:
            status = EXIT_FALSIFIED
        if args.witness and triple is not None:
            for k, cyc in enumerate(triple.cycles):
                _diag(f"graph {i} cycle {k}: " + " ".join(f"{a}-{b}" for a, b in sorted(cyc)))
    return status


def cmd_classify(args, out: Output) -> int:
    graphs = load_graphs(args.input, args.format)
    out.text("index,n,is_4connected,o_count,tree_colorable,in_mpg4,odd_shape,special\n")
    status = EXIT_OK
    for i, t in enumerate(graphs):
        rep = structure.classify(t)
        tags = ";".join(sorted(structure.recognize_special(t)))
        shape = "" if rep.odd_shape is None else str(rep.odd_shape)
        out.text(
            f"{i},{t.n},{int(rep.is_4connected)},{rep.o_count},{int(rep.is_tree_colorable)},"
            f"{int(rep.in_mpg4)},{shape},{tags}\n"
        )
        _, found = enumerator.check_graph(t, i)
        for fals in found:
            _diag(f"graph {i}: FALSIFIED {fals.claim}: {fals.detail}")
            status = EXIT_FALSIFIED
        if args.witness and rep.coloring is not None:
            _diag(f"graph {i} coloring: " + " ".join(f"{v}:{c}" for v, c in sorted(rep.coloring.items())))
    return status


def cmd_enumerate(args, out: Output) -> int:
    graphs = enumerator.generate(args.n, override=args.override)
    _diag(f"{len(graphs)} triangulations on {args.n} vertices")
    out.raw(planar.write_planar_code(graphs))
    return EXIT_OK


def _finish_report(args, report: enumerator.ScanReport, out: Output) -> int:
    out.text(report.to_csv(timing=args.timing))
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(report.to_json())
    for n, tally in sorted(report.tallies.items()):
        _diag(
            f"n={n}: {tally.triangulations} triangulations, {tally.min_degree_ge4} with min degree >= 4, "
            f"{tally.tree_colorable} tree-colorable, {tally.mpg4} in MPG4"
        )
    for index, msg in report.errors:
        _diag(f"record {index}: {msg}")
    for fals in report.falsifications:
        _diag(f"FALSIFIED {fals.claim} (n={fals.n}, code {fals.code}): {fals.detail}")
    if report.falsifications:
        return EXIT_FALSIFIED
    if report.errors:
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_scan(args, out: Output) -> int:
    report = enumerator.scan(args.max, n_min=args.min, jobs=args.jobs, override=args.override)
    return _finish_report(args, report, out)


def cmd_ingest(args, out: Output) -> int:
    try:
        report = enumerator.ingest_and_scan(_read_bytes(args.input), jobs=args.jobs)
    except planar.BadHeader as exc:
        raise DomainError(str(exc)) from None
    return _finish_report(args, report, out)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treecolor", description="Tree-colorings of maximal planar graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to standard error")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("input", help="graph file, or - for standard input")
        sp.add_argument("--format", choices=("planar_code", "edge-list"), help="input format (default: by header)")
        sp.add_argument("--output", "-o", help="write data here instead of standard output")
        sp.add_argument("--witness", action="store_true", help="print witnesses to standard error")
        return sp

    graph_cmd("validate", "check that every input graph is a triangulation").set_defaults(func=cmd_validate)
    sp = graph_cmd("solve", "find a tree-coloring")
    sp.add_argument("--require", action="store_true", help="exit 1 when some graph has no tree-coloring")
    sp.set_defaults(func=cmd_solve)
    sp = graph_cmd("verify", "check a coloring")
    sp.add_argument("--coloring", "-c", required=True, help="coloring file: lines 'vertex color'")
    sp.set_defaults(func=cmd_verify)
    sp = graph_cmd("count", "count tree-colorings")
    sp.add_argument("--partitions", action="store_true", help="count up to permutation of colors")
    sp.set_defaults(func=cmd_count)
    sp = graph_cmd("contract", "contract a 4-wheel")
    sp.add_argument("--center", type=int, required=True)
    sp.add_argument("--pair", type=int, nargs=2, required=True, metavar=("U", "W"))
    sp.add_argument("--coloring", "-c", help="also emit the inherited coloring of this coloring")
    sp.add_argument("--out-format", choices=("planar_code", "edge-list"), default="edge-list")
    sp.set_defaults(func=cmd_contract)
    graph_cmd("dual", "print the dual graph as an edge list").set_defaults(func=cmd_dual)
    graph_cmd("equiv-check", "compare tree-colorability with Hamilton double covers of the dual").set_defaults(
        func=cmd_equiv
    )
    graph_cmd("classify", "report MPG4 membership and odd-vertex shape").set_defaults(func=cmd_classify)

    sp = sub.add_parser("enumerate", help="write all triangulations on n vertices as planar_code")
    sp.add_argument("n", type=int)
    sp.add_argument("--output", "-o")
    sp.add_argument("--override", action="store_true", help="ignore the generation soft cap")
    sp.set_defaults(func=cmd_enumerate)

    for name, func, help in (
        ("scan", cmd_scan, "generate and classify all triangulations up to --max vertices"),
        ("ingest", cmd_ingest, "classify the graphs of a planar_code file"),
    ):
        sp = sub.add_parser(name, help=help)
        if name == "scan":
            sp.add_argument("--max", type=int, required=True)
            sp.add_argument("--min", type=int, default=4)
            sp.add_argument("--override", action="store_true", help="ignore the generation soft cap")
        else:
            sp.add_argument("input")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--output", "-o", help="CSV rows (default: standard output)")
        sp.add_argument("--json", help="also write the summary report as JSON")
        sp.add_argument("--timing", action="store_true", help="add a solver time column (not reproducible)")
        sp.set_defaults(func=func)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    out = Output(getattr(args, "output", None))
    try:
        status = args.func(args, out)
    except DomainError as exc:
        _diag(f"error: {exc}")
        status = EXIT_DOMAIN
    except enumerator.SoftCapExceeded as exc:
        _diag(f"error: {exc}")
        return EXIT_USAGE
    except OSError as exc:
        _diag(f"error: {exc}")
        return EXIT_DOMAIN
    out.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
