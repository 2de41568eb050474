"""Vertical alignment of vertices into blocks.

All algorithms run in the canonical top-to-bottom, left-to-right frame.
The other three orientations are handled by mirroring the graph first
(:func:`mirror`) and mirroring coordinates back afterwards
(:func:`unmirror`).
"""

from __future__ import annotations

import enum
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field

from .graph import GraphIndex, LayeredGraph, ValidationReport

__all__ = [
    "Orientation",
    "BlockStructure",
    "mirror",
    "unmirror",
    "vertical_align",
    "mark_type1_conflicts",
]


class Orientation(enum.Enum):
    """Vertical x horizontal bias. ``u``/``l`` = align to upper/lower neighbours."""

    UL = "ul"
    UR = "ur"
    LL = "ll"
    LR = "lr"

    @property
    def vertical(self) -> str:
        return "top-to-bottom" if self.value[0] == "u" else "bottom-to-top"

    @property
    def horizontal(self) -> str:
        return "left-to-right" if self.value[1] == "l" else "right-to-left"

    @property
    def flips_layers(self) -> bool:
        return self.value[0] == "l"

    @property
    def flips_order(self) -> bool:
        return self.value[1] == "r"

    @property
    def left_biased(self) -> bool:
        return not self.flips_order


@dataclass(frozen=True)
class BlockStructure:
    """Blocks as ``align``/``root`` maps, relative to the mirrored graph.

    ``align[v]`` is the next vertex down the block; the lowest vertex points
    back at the root. ``warnings`` lists crossing inner segments found in
    the input (the earlier scanned one was kept).
    """

    align: dict[str, str]
    root: dict[str, str]
    orientation: Orientation = Orientation.UL
    warnings: tuple[str, ...] = ()
    _arrays: tuple | None = field(default=None, repr=False, compare=False)

    @classmethod
    def from_maps(
        cls, align: Mapping[str, str], root: Mapping[str, str], orientation: Orientation = Orientation.UL
    ) -> BlockStructure:
        return cls(dict(align), dict(root), orientation)

    def arrays(self, index: GraphIndex) -> tuple[list[int], list[int]]:
        """``(align, root)`` as vertex-number lists for ``index``."""
        if self._arrays is not None and self._arrays[0] is index:
            return self._arrays[1], self._arrays[2]
        number = index.number
        align = [number[self.align[v]] for v in index.ids]
        root = [number[self.root[v]] for v in index.ids]
        return align, root

    def blocks(self) -> Iterator[list[str]]:
        """Each block as its members from the root downwards."""
        for v, r in self.root.items():
            if v != r:
                continue
            members = [v]
            w = self.align[v]
            while w != v:
                members.append(w)
                w = self.align[w]
            yield members


def mirror(graph: LayeredGraph, orientation: Orientation) -> LayeredGraph:
    """Reorder ``graph`` so that ``orientation`` becomes the canonical one."""
    if orientation is Orientation.UL:
        return graph
    # graphs are immutable, so mirrors are cached on the instance
    cache = graph.__dict__.setdefault("_mirrors", {})
    if orientation not in cache:
        layers = graph.layers
        if orientation.flips_layers:
            layers = layers[::-1]
        if orientation.flips_order:
            layers = tuple(layer[::-1] for layer in layers)
        mirrored = LayeredGraph(layers, graph.edges, graph.dummies, graph.delta)
        if "report" in graph.__dict__:
            # reordering keeps every validation outcome
            mirrored.__dict__["report"] = graph.report
        if "index" in graph.__dict__ or mirrored.__dict__.get("report", ValidationReport(("?",))).ok:
            mirrored.__dict__["index"] = graph.index.mirrored(orientation.flips_layers, orientation.flips_order)
        cache[orientation] = mirrored
    return cache[orientation]


def unmirror(x: Mapping[str, float], orientation: Orientation) -> dict[str, float]:
    """Map coordinates computed on ``mirror(graph, orientation)`` back."""
    if orientation.flips_order:
        # + 0.0 turns -0.0 into 0.0
        return {v: -c + 0.0 for v, c in x.items()}
    return dict(x)


def mark_type1_conflicts(
    index: GraphIndex, inner_upper: list[int | None] | None = None
) -> tuple[set[tuple[int, int]], list[tuple[int, int]]]:
    """Mark segments that cross an inner (dummy-dummy) segment.

    Returns the marked ``(upper, lower)`` pairs and, separately, the marked
    pairs that are themselves inner segments (crossing inner segments).
    """
    marks, crossing_inner = _type1_marks(index, inner_upper)
    marked = {(u, w) for w, ups in enumerate(marks) for u in ups}
    return marked, crossing_inner


def _type1_marks(
    index: GraphIndex, inner_upper: list[int | None] | None = None
) -> tuple[list[tuple[int, ...]], list[tuple[int, int]]]:
    # marks[w]: upper neighbours u whose segment (u, w) is marked
    if inner_upper is None:
        inner_upper = _inner_uppers(index)
    marks: list[tuple[int, ...]] = [()] * len(index)
    crossing_inner: list[tuple[int, int]] = []
    layers, upper, pos, dummy = index.layers, index.upper, index.pos, index.dummy
    for i in range(1, len(layers)):
        lower_layer = layers[i]
        if not lower_layer or not layers[i - 1]:
            continue
        last_upper = len(layers[i - 1]) - 1
        k0 = 0
        scan = 0
        for l1, v in enumerate(lower_layer):
            inner = inner_upper[v]
            if l1 != len(lower_layer) - 1 and inner is None:
                continue
            k1 = pos[inner] if inner is not None else last_upper
            while scan <= l1:
                w = lower_layer[scan]
                ups = upper[w]
                scan += 1
                # ups is sorted by position, so its ends decide
                if not ups or (pos[ups[0]] >= k0 and pos[ups[-1]] <= k1):
                    continue
                out = [u for u in ups if pos[u] < k0 or pos[u] > k1]
                if out:
                    marks[w] = tuple(out)
                    if dummy[w]:
                        crossing_inner.extend((u, w) for u in out if dummy[u])
            k0 = k1
    return marks, crossing_inner


def _inner_uppers(index: GraphIndex) -> list[int | None]:
    """Per vertex, its upper neighbour along an inner segment, if any."""
    dummy = index.dummy
    out: list[int | None] = [None] * len(dummy)
    for v, ups in enumerate(index.upper):
        if dummy[v]:
            for u in ups:
                if dummy[u]:
                    out[v] = u
                    break
    return out


def _align_canonical(index: GraphIndex) -> tuple[list[int], list[int], list[tuple[int, int]]]:
    n = len(index)
    align = list(range(n))
    root = list(range(n))
    inner_upper = _inner_uppers(index)
    marks, crossing_inner = _type1_marks(index, inner_upper)
    upper, pos = index.upper, index.pos
    for layer in index.layers[1:]:
        r = -1
        for v in layer:
            ups = upper[v]
            if not ups:
                continue
            inner = inner_upper[v]
            marked = marks[v]
            if inner is not None and inner not in marked:
                candidates = (inner,)
            else:
                d = len(ups)
                lo, hi = (d - 1) // 2, d // 2
                candidates = (ups[lo],) if lo == hi else (ups[lo], ups[hi])
            for u in candidates:
                if align[v] != v:
                    break
                if r < pos[u] and u not in marked:
                    align[u] = v
                    root[v] = root[u]
                    align[v] = root[v]
                    r = pos[u]
    return align, root, crossing_inner


def vertical_align(graph: LayeredGraph, orientation: Orientation = Orientation.UL) -> BlockStructure:
    """Group vertices into blocks for ``orientation``.

    The result refers to ``mirror(graph, orientation)``, which is what
    compaction must be run on.
    """
    canonical = mirror(graph, orientation)
    index = canonical.index
    align, root, crossing_inner = _align_canonical(index)
    ids = index.ids
    warnings = tuple(
        f"inner segment ({ids[u]!r}, {ids[w]!r}) crosses an earlier inner segment and was not aligned"
        for u, w in crossing_inner
    )
    return BlockStructure(
        align=dict(zip(ids, map(ids.__getitem__, align))),
        root=dict(zip(ids, map(ids.__getitem__, root))),
        orientation=orientation,
        warnings=warnings,
        _arrays=(index, align, root),
    )
