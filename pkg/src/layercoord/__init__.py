"""Horizontal coordinate assignment for layered drawings, with corrected class compaction."""

from .alignment import BlockStructure, Orientation, mirror, unmirror, vertical_align
from .balancing import ALL_ORIENTATIONS, assign_coordinates, layout_orientation
from .compaction import (
    INF,
    CompactionState,
    CompactionStrategy,
    CoordinateAssignment,
    Neighboring,
    class_offsets_contour,
    class_offsets_neighborlist,
    compact,
    compact_legacy_buggy,
    place_block,
    place_blocks,
    run_compaction,
)
from .graph import (
    GraphError,
    GraphInputError,
    InvalidGraphError,
    LayeredGraph,
    UnknownVertexError,
    ValidationReport,
    layer_of,
    normalize,
    pos,
    pred,
    validate,
)
from .oracle import oracle_compact

__all__ = [
    "ALL_ORIENTATIONS",
    "INF",
    "BlockStructure",
    "CompactionState",
    "CompactionStrategy",
    "CoordinateAssignment",
    "GraphError",
    "GraphInputError",
    "InvalidGraphError",
    "LayeredGraph",
    "Neighboring",
    "Orientation",
    "UnknownVertexError",
    "ValidationReport",
    "assign_coordinates",
    "class_offsets_contour",
    "class_offsets_neighborlist",
    "compact",
    "compact_legacy_buggy",
    "layer_of",
    "layout_orientation",
    "mirror",
    "normalize",
    "oracle_compact",
    "place_block",
    "place_blocks",
    "pos",
    "pred",
    "run_compaction",
    "unmirror",
    "validate",
    "vertical_align",
]

__version__ = "0.1.0"
