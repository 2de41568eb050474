"""Reference solver for compaction, used only to check the fast strategies.

It shares no code path with :mod:`layercoord.compaction`: classes come from
explicit reachability in the block graph, coordinates inside a class from
fixed-point relaxation, and class shifts from a longest-path pass over an
explicit DAG of classes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter

import networkx as nx

from .alignment import BlockStructure
from .compaction import CoordinateAssignment
from .graph import LayeredGraph

__all__ = ["OracleError", "ClassDag", "build_class_dag", "oracle_compact"]


class OracleError(RuntimeError):
    """The class DAG is cyclic or not stacked diagonally."""


@dataclass
class ClassDag:
    """Classes keyed by sink id, with every neighbouring pair kept."""

    block_of: dict[str, str]
    class_of: dict[str, str]
    sink_layer: dict[str, int]
    members: dict[str, list[str]] = field(default_factory=dict)
    # (left class, right class) -> [(u, v), ...] where u is left of v
    pairs: dict[tuple[str, str], list[tuple[str, str]]] = field(default_factory=dict)

    def topological_order(self) -> list[str]:
        """Classes so that every right-hand class precedes its left neighbours."""
        sorter = TopologicalSorter({c: set() for c in self.members})
        for left, right in self.pairs:
            sorter.add(left, right)
        try:
            return list(sorter.static_order())
        except CycleError as exc:
            raise OracleError(f"class graph has a cycle: {exc.args[1]}") from exc

    def height_order_is_topological(self) -> bool:
        return all(self.sink_layer[right] < self.sink_layer[left] for left, right in self.pairs)


def build_class_dag(graph: LayeredGraph, blocks: BlockStructure) -> ClassDag:
    layer_of = {v: i for i, layer in enumerate(graph.layers) for v in layer}
    block_of = dict(blocks.root)

    # block graph: edge from a block to the block of each member's left neighbour
    g = nx.DiGraph()
    g.add_nodes_from(set(block_of.values()))
    for layer in graph.layers:
        for left, right in zip(layer, layer[1:]):
            g.add_edge(block_of[right], block_of[left])
    sinks = [b for b in g.nodes if g.out_degree(b) == 0]
    for s in sinks:
        layer = graph.layers[layer_of[s]]
        if layer[0] != s:
            raise OracleError(f"sink block {s!r} is not leftmost in its layer")

    sink_layer = {s: layer_of[s] for s in sinks}
    class_of_block = {}
    for b in g.nodes:
        reach = nx.descendants(g, b) | {b}
        class_of_block[b] = min((s for s in sinks if s in reach), key=sink_layer.__getitem__)

    dag = ClassDag(block_of=block_of, class_of={}, sink_layer=sink_layer)
    dag.members = {s: [] for s in sinks}
    for v in graph.vertices():
        c = class_of_block[block_of[v]]
        dag.class_of[v] = c
        dag.members[c].append(v)
    for layer in graph.layers:
        for u, v in zip(layer, layer[1:]):
            cu, cv = dag.class_of[u], dag.class_of[v]
            if cu != cv:
                dag.pairs.setdefault((cu, cv), []).append((u, v))
    return dag


def _relative_coordinates(graph: LayeredGraph, dag: ClassDag, rng: random.Random | None) -> dict[str, float]:
    delta = graph.delta
    constraints = [
        (dag.block_of[u], dag.block_of[v])
        for layer in graph.layers
        for u, v in zip(layer, layer[1:])
        if dag.class_of[u] == dag.class_of[v]
    ]
    if rng is not None:
        rng.shuffle(constraints)
    xb = {b: 0.0 for b in set(dag.block_of.values())}
    for _ in range(len(xb) + 1):
        changed = False
        for a, b in constraints:
            if xb[a] + delta > xb[b]:
                xb[b] = xb[a] + delta
                changed = True
        if not changed:
            return xb
    raise OracleError("block constraints do not converge (cyclic block graph)")


def oracle_compact(
    graph: LayeredGraph, blocks: BlockStructure, *, rng: random.Random | None = None
) -> CoordinateAssignment:
    """Compaction by explicit longest paths. ``rng`` permutes iteration order."""
    graph.report.raise_for_violations()
    dag = build_class_dag(graph, blocks)
    if not dag.height_order_is_topological():
        raise OracleError("a class has a neighbour to its right with a lower sink")
    order = dag.topological_order()
    xb = _relative_coordinates(graph, dag, rng)

    incoming: dict[str, list[tuple[str, str]]] = {}
    for (left, _right), pairs in dag.pairs.items():
        incoming.setdefault(left, []).extend(pairs)
    shift: dict[str, float] = {}
    delta = graph.delta
    for c in order:
        pairs = incoming.get(c)
        if not pairs:
            shift[c] = 0.0
            continue
        shift[c] = min(
            shift[dag.class_of[v]] + xb[dag.block_of[v]] - (xb[dag.block_of[u]] + delta) for u, v in pairs
        )
    x = {v: xb[dag.block_of[v]] + shift[dag.class_of[v]] for v in graph.vertices()}
    return CoordinateAssignment(
        x, None, orientations=(blocks.orientation.value,), delta=graph.delta
    )
