"""Horizontal compaction: block placement, class offsets, absolute coordinates.

Three strategies share the same input (a graph in canonical orientation and
its blocks):

``contour``
    blocks placed relative to their class sink, then class shifts found by
    tracing the lower contour of each class, top to bottom.
``neighborlist``
    same placement, class shifts from an explicit list of neighbouring
    vertex pairs bucketed by the layer of the right-hand class sink.
``legacy_buggy``
    the original, flawed procedure. Shifts are written during placement
    without accumulation and the absolute pass may add a shift twice.
    Kept only for regression demonstrations; its output is flagged as
    non-conforming.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

from .alignment import BlockStructure
from .graph import GraphIndex, LayeredGraph

__all__ = [
    "INF",
    "CompactionStrategy",
    "CoordinateAssignment",
    "CompactionState",
    "Neighboring",
    "place_block",
    "place_blocks",
    "find_neighborings",
    "class_offsets_contour",
    "class_offsets_neighborlist",
    "absolute_coordinates",
    "compact_arrays",
    "run_compaction",
    "compact",
    "compact_legacy_buggy",
]


class _Unconstrained:
    """The +infinity shift sentinel. Deliberately supports no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return (_Unconstrained, ())


INF = _Unconstrained()


class CompactionStrategy(enum.Enum):
    CONTOUR = "contour"
    NEIGHBORLIST = "neighborlist"
    LEGACY_BUGGY = "legacy_buggy"

    @classmethod
    def parse(cls, value: str | CompactionStrategy) -> CompactionStrategy:
        if isinstance(value, cls):
            return value
        return cls(value.replace("-", "_"))

    @property
    def conforming(self) -> bool:
        return self is not CompactionStrategy.LEGACY_BUGGY


@dataclass
class CoordinateAssignment:
    """Horizontal coordinate per vertex id, plus how it was obtained."""

    x: dict[str, float]
    strategy: CompactionStrategy | None = CompactionStrategy.CONTOUR
    orientations: tuple[str, ...] = ("ul",)
    balanced: bool = False
    delta: float = 1.0
    candidates: dict | None = field(default=None, repr=False)

    @property
    def conforming(self) -> bool:
        # strategy None: produced by the reference solver
        return self.strategy is None or self.strategy.conforming

    def __getitem__(self, v: str) -> float:
        return self.x[v]


class Neighboring(NamedTuple):
    """Horizontally adjacent vertices whose classes differ."""

    left: str
    right: str


class CompactionState:
    """The per-vertex ``sink``, ``shift`` and ``x`` arrays of one run.

    Arrays are indexed by vertex number of ``graph.index``; the ``*_of``
    accessors take ids.
    """

    def __init__(self, graph: LayeredGraph | None, blocks: BlockStructure | None, *, arrays=None):
        self.graph = graph
        if arrays is None:
            index = graph.index
            align, root = blocks.arrays(index)
        else:
            index, align, root = arrays
        self.index, self.align, self.root = index, align, root
        n = len(index)
        self.sink: list[int] = list(range(n))
        self.shift: list = [INF] * n
        self.x: list[float | None] = [None] * n
        # (sink, old, new) for every shift write, when not None
        self.trace: list[tuple[int, object, float]] | None = None

    def _id(self, v: str) -> int:
        return self.index.number[v]

    def sink_of(self, v: str) -> str:
        return self.index.ids[self.sink[self._id(v)]]

    def shift_of(self, v: str):
        return self.shift[self._id(v)]

    def x_of(self, v: str) -> float | None:
        return self.x[self._id(v)]

    def sink_layers(self) -> list[list[int]]:
        """0-based layer of the sink of every vertex, layer by layer."""
        layer, sink = self.index.layer, self.sink
        return [[layer[sink[v]] for v in row] for row in self.index.layers]

    def _lower_shift(self, su: int, value: float) -> None:
        old = self.shift[su]
        if old is INF or value < old:
            self.shift[su] = value
            if self.trace is not None:
                self.trace.append((su, old, value))


def _place(state: CompactionState, starts) -> None:
    # explicit stack instead of recursion: block chains can be as deep as the graph
    x, sink, root, align, pos = state.x, state.sink, state.root, state.align, state.index.pos
    delta = state.index.delta
    for v0 in starts:
        if x[v0] is not None:
            continue
        x[v0] = 0.0
        roots = [v0]
        cursor = [v0]
        while roots:
            v = roots[-1]
            w = cursor[-1]
            if pos[w] > 0:
                u = root[w - 1]
                if x[u] is None:
                    x[u] = 0.0
                    roots.append(u)
                    cursor.append(u)
                    continue
                if sink[v] == v:
                    sink[v] = sink[u]
                if sink[v] == sink[u]:
                    t = x[u] + delta
                    if t > x[v]:
                        x[v] = t
            w = align[w]
            if w != v:
                cursor[-1] = w
                continue
            xv, sv = x[v], sink[v]
            w = align[v]
            while w != v:
                x[w] = xv
                sink[w] = sv
                w = align[w]
            roots.pop()
            cursor.pop()


def place_block(state: CompactionState, v: str) -> None:
    """Place the block rooted at ``v`` (and, first, every block left of it)."""
    n = state._id(v)
    if state.root[n] != n:
        raise ValueError(f"{v!r} is not the root of its block")
    _place(state, (n,))


def place_blocks(state: CompactionState) -> None:
    """Coordinates of every vertex relative to the sink of its class."""
    root = state.root
    _place(state, [v for v in range(len(root)) if root[v] == v])


def _accumulated_update(state: CompactionState, u: int, v: int) -> None:
    sink, x, shift = state.sink, state.x, state.shift
    sv = shift[sink[v]]
    assert sv is not INF, "shift of the right-hand class must be final"
    state._lower_shift(sink[u], sv + x[v] - (x[u] + state.index.delta))


def class_offsets_contour(state: CompactionState) -> None:
    """Class shifts by tracing the lower contour of each class, top to bottom."""
    layers, pos = state.index.layers, state.index.pos
    sink, shift, align, root = state.sink, state.shift, state.align, state.root
    for i, layer in enumerate(layers):
        if not layer:
            continue
        s = layer[0]
        if sink[s] != s:
            continue
        if shift[s] is INF:
            shift[s] = 0.0
        j, k = i, 0
        while True:
            v = layers[j][k]
            while align[v] != root[v]:
                v = align[v]
                j += 1
                if pos[v] > 0:
                    _accumulated_update(state, v - 1, v)
            k = pos[v] + 1
            if k >= len(layers[j]) or sink[v] != sink[layers[j][k]]:
                break


def _neighboring_buckets(state: CompactionState) -> list[list[tuple[int, int]]]:
    index, sink = state.index, state.sink
    layer = index.layer
    buckets: list[list[tuple[int, int]]] = [[] for _ in index.layers]
    for row in index.layers:
        for j in range(len(row) - 1, 0, -1):
            u, v = row[j - 1], row[j]
            if sink[u] != sink[v]:
                buckets[layer[sink[v]]].append((u, v))
    return buckets


def find_neighborings(state: CompactionState) -> list[list[Neighboring]]:
    """Neighbouring pairs, bucketed by the 0-based layer of the right vertex's sink."""
    ids = state.index.ids
    return [[Neighboring(ids[u], ids[v]) for u, v in bucket] for bucket in _neighboring_buckets(state)]


def class_offsets_neighborlist(state: CompactionState) -> None:
    """Class shifts from the recorded neighbourings, higher classes first."""
    # all pairs are recorded before any shift is propagated
    buckets = _neighboring_buckets(state)
    sink, shift = state.sink, state.shift
    for layer, bucket in zip(state.index.layers, buckets):
        if not layer:
            continue
        s = sink[layer[0]]
        if shift[s] is INF:
            shift[s] = 0.0
        for u, v in bucket:
            _accumulated_update(state, u, v)


def _absolute_array(state: CompactionState) -> list[float]:
    shift = state.shift
    offsets = [shift[s] for s in state.sink]
    assert INF not in offsets, "a class never received a shift"
    return list(map(float.__add__, state.x, offsets))


def absolute_coordinates(state: CompactionState) -> dict[str, float]:
    return dict(zip(state.index.ids, _absolute_array(state)))


def compact_arrays(index: GraphIndex, align: list[int], root: list[int], strategy: CompactionStrategy) -> list[float]:
    """Corrected compaction on vertex numbers; coordinates in index order."""
    state = CompactionState(None, None, arrays=(index, align, root))
    place_blocks(state)
    if strategy is CompactionStrategy.CONTOUR:
        class_offsets_contour(state)
    elif strategy is CompactionStrategy.NEIGHBORLIST:
        class_offsets_neighborlist(state)
    else:
        raise ValueError(f"{strategy.value} has no array form")
    return _absolute_array(state)


def _legacy_place(state: CompactionState, v0: int) -> None:
    x, sink, root, align, pos = state.x, state.sink, state.root, state.align, state.index.pos
    shift, delta = state.shift, state.index.delta
    if x[v0] is not None:
        return
    x[v0] = 0.0
    roots = [v0]
    cursor = [v0]
    while roots:
        v = roots[-1]
        w = cursor[-1]
        if pos[w] > 0:
            u = root[w - 1]
            if x[u] is None:
                x[u] = 0.0
                roots.append(u)
                cursor.append(u)
                continue
            if sink[v] == v:
                sink[v] = sink[u]
            if sink[v] != sink[u]:
                # (A): v's own class shift is ignored, x[v] may still grow
                value = x[v] - x[u] - delta
                old = shift[sink[u]]
                if old is INF or value < old:
                    shift[sink[u]] = value
            else:
                x[v] = max(x[v], x[u] + delta)
        w = align[w]
        if w != v:
            cursor[-1] = w
        else:
            roots.pop()
            cursor.pop()


def _legacy_absolute(state: CompactionState, double_shift: bool = True) -> dict[str, float]:
    x, sink, root, shift = state.x, state.sink, state.root, state.shift
    if not double_shift:
        relative = list(x)
    for v in range(len(x)):
        r = root[v]
        # (S): with double_shift, x[r] may already include its class shift
        x[v] = x[r] if double_shift else relative[r]
        s = shift[sink[r]]
        if s is not INF:
            x[v] = x[v] + s
    ids = state.index.ids
    return {ids[v]: x[v] for v in range(len(x))}


def run_compaction(
    graph: LayeredGraph,
    blocks: BlockStructure,
    strategy: CompactionStrategy | str = CompactionStrategy.CONTOUR,
    *,
    trace: bool = False,
) -> tuple[CoordinateAssignment, CompactionState]:
    """Like :func:`compact` but also returns the final state for inspection."""
    strategy = CompactionStrategy.parse(strategy)
    state = CompactionState(graph, blocks)
    if trace:
        state.trace = []
    if strategy is CompactionStrategy.LEGACY_BUGGY:
        for v in range(len(state.root)):
            if state.root[v] == v:
                _legacy_place(state, v)
        x = _legacy_absolute(state)
    else:
        place_blocks(state)
        if strategy is CompactionStrategy.CONTOUR:
            class_offsets_contour(state)
        else:
            class_offsets_neighborlist(state)
        x = absolute_coordinates(state)
    result = CoordinateAssignment(
        x, strategy, orientations=(blocks.orientation.value,), balanced=False, delta=graph.delta
    )
    return result, state


def compact(
    graph: LayeredGraph,
    blocks: BlockStructure,
    strategy: CompactionStrategy | str = CompactionStrategy.CONTOUR,
) -> CoordinateAssignment:
    """Coordinates for ``graph`` (canonical frame) given its blocks."""
    return run_compaction(graph, blocks, strategy)[0]


def compact_legacy_buggy(graph: LayeredGraph, blocks: BlockStructure) -> CoordinateAssignment:
    """The original flawed compaction. Output is marked non-conforming."""
    return compact(graph, blocks, CompactionStrategy.LEGACY_BUGGY)


def compact_legacy_single_fix(graph: LayeredGraph, blocks: BlockStructure) -> dict[str, float]:
    """Legacy placement with only the double-shift flaw repaired.

    Used to tell the two flaws apart: if this agrees with the corrected
    output, the only discrepancy was double shifting.
    """
    state = CompactionState(graph, blocks)
    for v in range(len(state.root)):
        if state.root[v] == v:
            _legacy_place(state, v)
    return _legacy_absolute(state, double_shift=False)
