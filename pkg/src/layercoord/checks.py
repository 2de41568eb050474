"""Invariant checks on finished coordinate assignments."""

from __future__ import annotations

from collections.abc import Mapping
from typing import NamedTuple

from .alignment import BlockStructure
from .graph import LayeredGraph

__all__ = [
    "Problem",
    "separation_problems",
    "block_problems",
    "sink_order_problems",
    "check_assignment",
]


class Problem(NamedTuple):
    kind: str  # separation | block | sink_order | missing
    ids: tuple[str, ...]
    detail: str


def separation_problems(graph: LayeredGraph, x: Mapping[str, float]) -> list[Problem]:
    """Consecutive vertices closer than delta; swapped ones included."""
    delta = graph.delta
    problems = []
    for layer in graph.layers:
        for u, v in zip(layer, layer[1:]):
            gap = x[v] - x[u]
            if gap < delta:
                what = "order inverted, " if gap <= 0 else ""
                problems.append(Problem("separation", (u, v), f"{what}x[{v}]-x[{u}]={gap} < delta={delta}"))
    return problems


def block_problems(blocks: BlockStructure, x: Mapping[str, float]) -> list[Problem]:
    return [
        Problem("block", (v, r), f"x[{v}]={x[v]} differs from its root x[{r}]={x[r]}")
        for v, r in blocks.root.items()
        if x[v] != x[r]
    ]


def sink_order_problems(graph: LayeredGraph, sink_layer: Mapping[str, int]) -> list[Problem]:
    """Within a layer, sinks must get higher (smaller layer) from left to right."""
    problems = []
    for layer in graph.layers:
        for u, v in zip(layer, layer[1:]):
            if sink_layer[v] > sink_layer[u]:
                problems.append(
                    Problem("sink_order", (u, v), f"sink of {v} (layer {sink_layer[v] + 1}) is below "
                            f"sink of {u} (layer {sink_layer[u] + 1})")
                )
    return problems


def check_assignment(
    graph: LayeredGraph, x: Mapping[str, float], blocks: BlockStructure | None = None
) -> list[Problem]:
    """All separation/order problems, plus block problems if ``blocks`` given."""
    missing = [v for v in graph.vertices() if v not in x]
    if missing:
        return [Problem("missing", tuple(missing), "vertices without a coordinate")]
    problems = separation_problems(graph, x)
    if blocks is not None:
        problems.extend(block_problems(blocks, x))
    return problems
