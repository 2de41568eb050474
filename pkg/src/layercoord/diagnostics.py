"""Differential comparison of the legacy compaction against the corrected one."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .alignment import Orientation, mirror, unmirror, vertical_align
from .balancing import ALL_ORIENTATIONS
from .checks import Problem, block_problems, sink_order_problems, separation_problems
from .compaction import CompactionStrategy, compact_legacy_single_fix, run_compaction
from .graph import LayeredGraph

__all__ = ["DOUBLE_SHIFT", "MISSING_ACCUMULATION", "NONE", "DiffReport", "diff_orientation", "diff_graph"]

NONE = "none"
DOUBLE_SHIFT = "double_shift"
MISSING_ACCUMULATION = "missing_accumulation"
_SEVERITY = {NONE: 0, DOUBLE_SHIFT: 1, MISSING_ACCUMULATION: 2}


@dataclass
class DiffReport:
    """Legacy minus corrected coordinates for one orientation.

    ``excess`` holds, for double shifting, how much each affected vertex
    was moved on top of its correct class shift.
    """

    orientation: str
    classification: str
    deltas: dict[str, float] = field(default_factory=dict)
    excess: dict[str, float] = field(default_factory=dict)
    violations: dict[str, list[Problem]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "orientation": self.orientation,
            "classification": self.classification,
            "deltas": self.deltas,
            "excess": self.excess,
            "violations": {
                side: [{"kind": p.kind, "ids": list(p.ids), "detail": p.detail} for p in problems]
                for side, problems in self.violations.items()
            },
        }


def diff_orientation(
    graph: LayeredGraph,
    orientation: Orientation = Orientation.UL,
    corrected: CompactionStrategy | str = CompactionStrategy.CONTOUR,
) -> DiffReport:
    blocks = vertical_align(graph, orientation)
    canonical = mirror(graph, orientation)
    good, good_state = run_compaction(canonical, blocks, corrected)
    bad, bad_state = run_compaction(canonical, blocks, CompactionStrategy.LEGACY_BUGGY)
    single_fix = compact_legacy_single_fix(canonical, blocks)

    idx = good_state.index
    good_sinks = {idx.ids[v]: idx.layer[good_state.sink[v]] for v in range(len(idx))}
    # the legacy pass only records sinks at roots
    bad_sinks = {idx.ids[v]: idx.layer[bad_state.sink[bad_state.root[v]]] for v in range(len(idx))}

    violations = {}
    for side, x, sinks in (("legacy_buggy", bad.x, bad_sinks), (good.strategy.value, good.x, good_sinks)):
        violations[side] = (
            separation_problems(canonical, x) + block_problems(blocks, x) + sink_order_problems(canonical, sinks)
        )

    deltas = {v: bad.x[v] - good.x[v] for v in good.x if bad.x[v] != good.x[v]}
    excess: dict[str, float] = {}
    if not deltas:
        kind = NONE
    elif single_fix == good.x:
        kind = DOUBLE_SHIFT
        excess = {v: bad.x[v] - single_fix[v] for v in deltas}
    else:
        kind = MISSING_ACCUMULATION
        excess = {v: bad.x[v] - single_fix[v] for v in bad.x if bad.x[v] != single_fix[v]}

    if orientation.flips_order:
        deltas = unmirror(deltas, orientation)
        excess = unmirror(excess, orientation)
    return DiffReport(orientation.value, kind, deltas, excess, violations)


def diff_graph(
    graph: LayeredGraph,
    orientations: Iterable[Orientation] = ALL_ORIENTATIONS,
    corrected: CompactionStrategy | str = CompactionStrategy.CONTOUR,
) -> tuple[str, list[DiffReport]]:
    """Per-orientation reports and the most severe classification among them."""
    reports = [diff_orientation(graph, o, corrected) for o in orientations]
    worst = max((r.classification for r in reports), key=_SEVERITY.__getitem__, default=NONE)
    return worst, reports
