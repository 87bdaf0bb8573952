"""Tree-colorings of maximal planar graphs."""

from .colorer import all_colorings, count_colorings, solve, verify
from .dual import dual, has_double_cover_triple, ham_cycles, triple_from_coloring
from .enumerator import generate, ingest_and_scan, scan
from .planar import (
    Triangulation,
    canonical_code,
    faces,
    parse_edge_list,
    parse_planar_code,
    write_planar_code,
)
from .structure import classify, is_4connected, odd_profile, recognize_special, separating_triangles, split
from .wheel import contract, contractible_vertices, inherited_coloring, wheel_at

__all__ = [
    "Triangulation",
    "all_colorings",
    "canonical_code",
    "classify",
    "contract",
    "contractible_vertices",
    "count_colorings",
    "dual",
    "faces",
    "generate",
    "ham_cycles",
    "has_double_cover_triple",
    "ingest_and_scan",
    "inherited_coloring",
    "is_4connected",
    "odd_profile",
    "parse_edge_list",
    "parse_planar_code",
    "recognize_special",
    "scan",
    "separating_triangles",
    "solve",
    "split",
    "triple_from_coloring",
    "verify",
    "wheel_at",
    "write_planar_code",
]
