"""Random and hand-crafted layered graphs for tests, benchmarks and demos."""

from __future__ import annotations

import random

from .graph import LayeredGraph, normalize

__all__ = [
    "random_proper_graph",
    "random_normalized_graph",
    "random_graph",
    "double_shift_instance",
    "staircase_instance",
    "single_class_instance",
]


def random_proper_graph(
    rng: random.Random,
    n: int,
    h: int,
    delta: float = 1.0,
    max_degree: int = 3,
    dummy_rate: float = 0.3,
) -> LayeredGraph:
    """``n`` vertices spread over ``h`` layers with random proper edges.

    Each vertex picks up to ``max_degree`` upper neighbours; a random subset
    of vertices is marked as dummies. Layers may come out empty.
    """
    layer_of = [rng.randrange(h) for _ in range(n)]
    layers: list[list[str]] = [[] for _ in range(h)]
    for k, i in enumerate(layer_of):
        layers[i].append(f"v{k}")
    edges = []
    for i in range(1, h):
        above = layers[i - 1]
        if not above:
            continue
        for v in layers[i]:
            d = rng.randint(0, min(max_degree, len(above)))
            for u in rng.sample(above, d):
                edges.append((u, v))
    dummies = frozenset(v for row in layers for v in row if rng.random() < dummy_rate)
    return LayeredGraph(tuple(map(tuple, layers)), tuple(edges), dummies, delta)


def random_normalized_graph(
    rng: random.Random, n: int, h: int, delta: float = 1.0, edge_factor: float = 1.3
) -> LayeredGraph:
    """A random layered DAG with long edges subdivided into dummy chains.

    ``n`` counts original vertices only. Vertices are then ordered by one
    downward barycenter sweep so that long edges are mostly uncrossed.
    """
    h = max(h, 1)
    layer = {f"n{k}": rng.randint(1, h) for k in range(n)}
    names = list(layer)
    edges = []
    if n > 1:
        for _ in range(int(edge_factor * n)):
            a, b = rng.sample(names, 2)
            if layer[a] != layer[b]:
                edges.append((a, b))
    g = normalize(layer, edges, delta)
    return _barycenter_sweep(g)


def _barycenter_sweep(graph: LayeredGraph) -> LayeredGraph:
    position: dict[str, float] = {}
    upper: dict[str, list[str]] = {}
    layer_no = {v: i for i, row in enumerate(graph.layers) for v in row}
    for a, b in graph.edges:
        if layer_no[a] > layer_no[b]:
            a, b = b, a
        upper.setdefault(b, []).append(a)
    layers = []
    for row in graph.layers:
        keyed = []
        for k, v in enumerate(row):
            ups = upper.get(v)
            key = sum(position[u] for u in ups) / len(ups) if ups else float(k)
            keyed.append((key, k, v))
        keyed.sort()
        ordered = tuple(v for _, _, v in keyed)
        position.update((v, float(k)) for k, v in enumerate(ordered))
        layers.append(ordered)
    return LayeredGraph(tuple(layers), graph.edges, graph.dummies, graph.delta)


def random_graph(rng: random.Random, max_vertices: int = 200, max_layers: int = 12, delta: float | None = None) -> LayeredGraph:
    """Either generator, with random size bounded by ``max_vertices``."""
    if delta is None:
        delta = rng.choice((0.5, 1.0, 2.0))
    h = rng.randint(1, max_layers)
    if rng.random() < 0.5:
        n = rng.randint(0, max_vertices)
        return random_proper_graph(rng, n, h, delta, max_degree=rng.randint(1, 4))
    # long edges add dummies, keep the total under max_vertices
    for attempt in range(20):
        n = rng.randint(1, max(1, max_vertices // 3))
        g = random_normalized_graph(rng, n, h, delta)
        if len(g) <= max_vertices:
            return g
    return random_proper_graph(rng, rng.randint(0, max_vertices), h, delta)


def double_shift_instance(delta: float = 1.0) -> LayeredGraph:
    """Two classes; the left one is shifted and has a two-vertex block.

    The original absolute-coordinate pass adds the shift of class ``c``
    twice to ``c2`` because the root ``c`` is shifted in place first.
    """
    layers = (("a", "a2", "b"), ("c", "d"), ("c2", "e"))
    edges = (("b", "d"), ("d", "e"), ("c", "c2"))
    return LayeredGraph(layers, edges, frozenset(), delta)


def staircase_instance(delta: float = 1.0) -> LayeredGraph:
    """Three classes stacked diagonally with sinks c1 (top), b1, a1.

    Class b1 is pushed left by class c1; class a1 only touches class b1,
    so its shift must include b1's. Correct shifts: c1 0, b1 -2, a1 -3.
    """
    layers = (("c1", "c2"), ("b1", "b2", "b3", "c4"), ("a1", "a2", "bx"))
    edges = (("c2", "c4"), ("b2", "bx"))
    return LayeredGraph(layers, edges, frozenset(), delta)


def single_class_instance(delta: float = 1.0) -> LayeredGraph:
    layers = (("a", "b", "c"), ("d", "e"), ("f",))
    edges = (("a", "d"), ("b", "e"), ("c", "e"), ("e", "f"))
    return LayeredGraph(layers, edges, frozenset(), delta)
