"""Run all orientations and combine them into one drawing."""

from __future__ import annotations

from collections.abc import Iterable

from .alignment import Orientation, _align_canonical, mirror, unmirror, vertical_align
from .compaction import CompactionStrategy, CoordinateAssignment, compact, compact_arrays
from .graph import GraphIndex, LayeredGraph

__all__ = ["ALL_ORIENTATIONS", "layout_orientation", "align_candidates", "combine_medians", "assign_coordinates"]

ALL_ORIENTATIONS = (Orientation.UL, Orientation.UR, Orientation.LL, Orientation.LR)


def layout_orientation(
    graph: LayeredGraph,
    orientation: Orientation,
    strategy: CompactionStrategy | str = CompactionStrategy.CONTOUR,
) -> CoordinateAssignment:
    """Alignment and compaction for one orientation, in the graph's own frame."""
    strategy = CompactionStrategy.parse(strategy)
    blocks = vertical_align(graph, orientation)
    result = compact(mirror(graph, orientation), blocks, strategy)
    result.x = unmirror(result.x, orientation)
    return result


def _align_columns(columns: list[list[float]], left_biased: list[bool]) -> list[list[float]]:
    if not columns or not columns[0]:
        return [list(c) for c in columns]
    bounds = [(min(c), max(c)) for c in columns]
    lo, hi = min(bounds, key=lambda b: b[1] - b[0])
    aligned = []
    for c, (c_lo, c_hi), left in zip(columns, bounds, left_biased):
        offset = lo - c_lo if left else hi - c_hi
        aligned.append([v + offset for v in c])
    return aligned


def align_candidates(layouts: dict[Orientation, dict[str, float]]) -> dict[Orientation, dict[str, float]]:
    """Translate layouts onto the narrowest one.

    Left-biased layouts share its minimum, right-biased ones its maximum.
    """
    if not layouts:
        return {}
    keys = list(next(iter(layouts.values())))
    columns = [list(map(x.__getitem__, keys)) for x in layouts.values()]
    aligned = _align_columns(columns, [o.left_biased for o in layouts])
    return {o: dict(zip(keys, c)) for o, c in zip(layouts, aligned)}


def _median(values: list[float]) -> float:
    values = sorted(values)
    m = len(values)
    if m % 2:
        return values[m // 2]
    return (values[m // 2 - 1] + values[m // 2]) / 2


def _median4(a: float, b: float, c: float, d: float) -> float:
    s = sorted((a, b, c, d))
    return (s[1] + s[2]) / 2


def _median_columns(columns: list[list[float]]) -> list[float]:
    median = _median4 if len(columns) == 4 else lambda *values: _median(list(values))
    return list(map(median, *columns))


def combine_medians(candidates: dict[Orientation, dict[str, float]]) -> dict[str, float]:
    """Per vertex, the median of its candidate values (mean of the middle two if even)."""
    layouts = list(candidates.values())
    keys = list(layouts[0])
    return dict(zip(keys, _median_columns([list(map(x.__getitem__, keys)) for x in layouts])))


def _layout_array(index: GraphIndex, orientation: Orientation, strategy: CompactionStrategy) -> list[float]:
    """One corrected orientation layout, numbered like ``index``."""
    if orientation is Orientation.UL:
        canonical = index
    else:
        canonical = index.mirrored(orientation.flips_layers, orientation.flips_order)
    align, root, _ = _align_canonical(canonical)
    xs = compact_arrays(canonical, align, root, strategy)
    if canonical.origin is None:
        return xs
    out = [0.0] * len(xs)
    if orientation.flips_order:
        # + 0.0 turns -0.0 into 0.0
        for c, o in zip(xs, canonical.origin):
            out[o] = -c + 0.0
    else:
        for c, o in zip(xs, canonical.origin):
            out[o] = c
    return out


def assign_coordinates(
    graph: LayeredGraph,
    strategy: CompactionStrategy | str = CompactionStrategy.CONTOUR,
    balance: bool = True,
    orientations: Iterable[Orientation | str] = ALL_ORIENTATIONS,
) -> CoordinateAssignment:
    """Final horizontal coordinates.

    With ``balance`` and several orientations, the orientation layouts are
    aligned, combined by medians and translated so the minimum is 0; the
    aligned (and translated) layouts are kept in ``result.candidates``.
    Otherwise the first requested orientation is returned as computed.
    """
    strategy = CompactionStrategy.parse(strategy)
    orientations = tuple(dict.fromkeys(Orientation(o) for o in orientations))
    if not orientations:
        raise ValueError("at least one orientation is required")
    graph.report.raise_for_violations()

    if not balance or len(orientations) == 1:
        return layout_orientation(graph, orientations[0], strategy)

    if strategy.conforming:
        # integer fast path, same result as the per-orientation id maps
        index = graph.index
        columns = [_layout_array(index, o, strategy) for o in orientations]
        ids = index.ids
    else:
        layouts = [layout_orientation(graph, o, strategy).x for o in orientations]
        ids = graph.vertices()
        columns = [list(map(x.__getitem__, ids)) for x in layouts]
    aligned = _align_columns(columns, [o.left_biased for o in orientations])
    x = _median_columns(aligned)
    if x:
        low = min(x)
        aligned = [[c - low for c in column] for column in aligned]
        x = _median_columns(aligned)
    return CoordinateAssignment(
        dict(zip(ids, x)),
        strategy,
        orientations=tuple(o.value for o in orientations),
        balanced=True,
        delta=graph.delta,
        candidates={o: dict(zip(ids, c)) for o, c in zip(orientations, aligned)},
    )
