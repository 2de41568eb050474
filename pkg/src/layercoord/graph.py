"""Layered graph model: input structure, validation and index-based access.

A :class:`LayeredGraph` is immutable. Algorithms never touch the id-level
structure in their inner loops; they use the integer :class:`GraphIndex`
built once per graph (vertices numbered layer by layer, left to right).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, NamedTuple

__all__ = [
    "GraphError",
    "GraphInputError",
    "InvalidGraphError",
    "UnknownVertexError",
    "Violation",
    "ValidationReport",
    "LayeredGraph",
    "GraphIndex",
    "validate",
    "normalize",
    "pred",
    "pos",
    "layer_of",
]

DUMMY_PREFIX = "__dummy_"


class GraphError(Exception):
    """Base class for graph errors."""


class GraphInputError(GraphError, ValueError):
    """Structurally malformed input (wrong types, flat edges, ...)."""


class UnknownVertexError(GraphError, KeyError):
    """Lookup of an id that is not part of the graph."""


class InvalidGraphError(GraphError):
    """An operation needing a valid graph got one that fails validation."""

    def __init__(self, report: ValidationReport):
        self.report = report
        lines = [f"{v.code}: {v.message}" for v in report.violations[:5]]
        more = len(report.violations) - len(lines)
        if more > 0:
            lines.append(f"... and {more} more")
        super().__init__("invalid layered graph: " + "; ".join(lines))


class Violation(NamedTuple):
    code: str
    message: str
    ids: tuple[str, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def raise_for_violations(self) -> None:
        if self.violations:
            raise InvalidGraphError(self)


def _as_tuple(value: Any, what: str) -> tuple:
    if isinstance(value, (str, bytes)) or not isinstance(value, Iterable):
        raise GraphInputError(f"{what} must be a sequence, got {type(value).__name__}")
    return tuple(value)


@dataclass(frozen=True)
class LayeredGraph:
    """Ordered layers of vertex ids, proper edges, dummy marks and separation.

    Construction only normalizes container types; semantic checks live in
    :func:`validate` so that invalid graphs can still be inspected.
    """

    layers: tuple[tuple[str, ...], ...]
    edges: tuple[tuple[str, str], ...] = ()
    dummies: frozenset[str] = field(default_factory=frozenset)
    delta: float = 1.0

    def __post_init__(self) -> None:
        if self._well_formed():
            object.__setattr__(self, "delta", float(self.delta))
            return
        layers = tuple(_as_tuple(layer, "layer") for layer in _as_tuple(self.layers, "layers"))
        edges = []
        for edge in _as_tuple(self.edges, "edges"):
            edge = _as_tuple(edge, "edge")
            if len(edge) != 2:
                raise GraphInputError(f"edge must have two endpoints, got {edge!r}")
            edges.append(edge)
        try:
            dummies = frozenset(_as_tuple(self.dummies, "dummies"))
        except TypeError as exc:
            raise GraphInputError(f"dummy ids must be hashable: {exc}") from None
        if isinstance(self.delta, bool) or not isinstance(self.delta, (int, float)):
            raise GraphInputError(f"delta must be a number, got {self.delta!r}")
        object.__setattr__(self, "layers", layers)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "dummies", dummies)
        object.__setattr__(self, "delta", float(self.delta))

    def _well_formed(self) -> bool:
        return (
            type(self.layers) is tuple
            and all(type(row) is tuple for row in self.layers)
            and type(self.edges) is tuple
            and all(type(e) is tuple and len(e) == 2 for e in self.edges)
            and type(self.dummies) is frozenset
            and type(self.delta) in (int, float)
        )

    @property
    def height(self) -> int:
        return len(self.layers)

    def vertices(self) -> list[str]:
        """All ids, layer by layer, left to right."""
        return [v for layer in self.layers for v in layer]

    def __len__(self) -> int:
        return sum(len(layer) for layer in self.layers)

    @cached_property
    def report(self) -> ValidationReport:
        report, number, pairs = _validate(self)
        if report.ok:
            # handed on to the index, which would build the same data
            self.__dict__["_numbered"] = (number, pairs)
        return report

    @cached_property
    def index(self) -> GraphIndex:
        """Integer view of the graph; raises InvalidGraphError if invalid."""
        self.report.raise_for_violations()
        return GraphIndex.from_graph(self)

    def with_delta(self, delta: float) -> LayeredGraph:
        return LayeredGraph(self.layers, self.edges, self.dummies, delta)


class GraphIndex:
    """Vertex arrays for a valid graph. All positions here are 0-based.

    ``ids`` and ``lower`` may be passed as None; they are then derived on
    first use (mirrored indices rarely need them).
    """

    def __init__(self, ids, layers, upper, lower, dummy, delta):
        if ids is not None:
            self.ids: list[str] = ids
        if lower is not None:
            self.lower: list[list[int]] = lower
        self.layers: list[list[int]] = layers
        self.upper: list[list[int]] = upper
        self.dummy: list[bool] = dummy
        self.delta: float = delta
        # for a mirrored index: vertex number in the unmirrored index
        self.origin: list[int] | None = None
        self.layer: list[int] = []
        self.pos: list[int] = []
        for i, row in enumerate(layers):
            self.layer.extend([i] * len(row))
            self.pos.extend(range(len(row)))

    @staticmethod
    def _ranges(sizes: Iterable[int]) -> list[list[int]]:
        layers, n = [], 0
        for size in sizes:
            layers.append(list(range(n, n + size)))
            n += size
        return layers

    @classmethod
    def from_graph(cls, graph: LayeredGraph) -> GraphIndex:
        ids = graph.vertices()
        numbered = graph.__dict__.pop("_numbered", None)
        if numbered is None:
            number = dict(zip(ids, range(len(ids))))
            pairs = [(number[a], number[b]) for a, b in graph.edges]
        else:
            number, pairs = numbered
        layer_no = [i for i, row in enumerate(graph.layers) for _ in row]
        upper: list[list[int]] = [[] for _ in ids]
        lower: list[list[int]] = [[] for _ in ids]
        for a, b in pairs:
            if layer_no[a] > layer_no[b]:
                a, b = b, a
            lower[a].append(b)
            upper[b].append(a)
        # vertex numbers increase with position inside a layer
        for adj in upper:
            adj.sort()
        for adj in lower:
            adj.sort()
        dummy = [False] * len(ids)
        for d in graph.dummies:
            dummy[number[d]] = True
        index = cls(ids, cls._ranges(map(len, graph.layers)), upper, lower, dummy, graph.delta)
        index.__dict__["number"] = number
        return index

    def mirrored(self, flip_layers: bool, flip_order: bool) -> GraphIndex:
        """Index of the same graph with layers and/or in-layer order reversed."""
        rows = self.layers[::-1] if flip_layers else self.layers
        if flip_order:
            rows = [row[::-1] for row in rows]
        old_of_new = [v for row in rows for v in row]
        new_of_old = [0] * len(old_of_new)
        for new, old in enumerate(old_of_new):
            new_of_old[old] = new
        up_src = self.lower if flip_layers else self.upper
        remap = new_of_old.__getitem__
        upper = [list(map(remap, up_src[o])) for o in old_of_new]
        if flip_order:
            for adj in upper:
                adj.reverse()
        index = GraphIndex(
            None,
            self._ranges(map(len, rows)),
            upper,
            None,
            list(map(self.dummy.__getitem__, old_of_new)),
            self.delta,
        )
        index._parent_ids = (self, old_of_new)
        index.origin = old_of_new if self.origin is None else list(map(self.origin.__getitem__, old_of_new))
        return index

    @cached_property
    def ids(self) -> list[str]:
        parent, old_of_new = self.__dict__.pop("_parent_ids")
        return list(map(parent.ids.__getitem__, old_of_new))

    @cached_property
    def lower(self) -> list[list[int]]:
        lower: list[list[int]] = [[] for _ in self.pos]
        for v, ups in enumerate(self.upper):
            for u in ups:
                lower[u].append(v)
        return lower

    @cached_property
    def number(self) -> dict[str, int]:
        return dict(zip(self.ids, range(len(self.ids))))

    def __len__(self) -> int:
        return len(self.pos)


def _edge_ids(a: Any, b: Any) -> tuple[str, str]:
    return str(a), str(b)


def validate(graph: LayeredGraph) -> ValidationReport:
    """Check properness, uniqueness and separation; never raises on bad data."""
    return _validate(graph)[0]


def _validate(graph: LayeredGraph) -> tuple[ValidationReport, dict[Any, int], list[tuple[int, int]]]:
    violations: list[Violation] = []
    # id -> vertex number, numbering the accepted vertices layer by layer
    number: dict[Any, int] = {}
    layer_no: list[int] = []
    for i, layer in enumerate(graph.layers):
        for v in layer:
            if not isinstance(v, str):
                violations.append(Violation("bad_id", f"vertex id {v!r} is not a string", (repr(v),)))
                continue
            if v in number:
                violations.append(Violation("duplicate_vertex", f"vertex {v!r} listed more than once", (v,)))
                continue
            number[v] = len(layer_no)
            layer_no.append(i)

    n = len(layer_no)
    seen: set[int] = set()
    pairs: list[tuple[int, int]] = []
    for a, b in graph.edges:
        try:
            na, nb = number.get(a), number.get(b)
        except TypeError:
            violations.append(Violation("bad_id", f"edge {_edge_ids(a, b)} has unhashable endpoints", _edge_ids(a, b)))
            continue
        if na is None or nb is None:
            ids = _edge_ids(a, b)
            violations.append(Violation("unknown_vertex", f"edge {ids} references unknown vertices", ids))
            continue
        la, lb = layer_no[na], layer_no[nb]
        if a == b:
            violations.append(Violation("self_loop", f"self-loop at {a!r}", _edge_ids(a, b)))
            continue
        if abs(la - lb) != 1:
            ids = _edge_ids(a, b)
            violations.append(
                Violation("non_neighboring_edge", f"edge {ids} spans non-neighboring layers {la + 1} and {lb + 1}", ids)
            )
        key = na * n + nb if na < nb else nb * n + na
        if key in seen:
            violations.append(Violation("duplicate_edge", f"duplicate edge {_edge_ids(a, b)}", _edge_ids(a, b)))
        seen.add(key)
        pairs.append((na, nb))

    unknown = []
    for d in graph.dummies:
        try:
            known = d in number
        except TypeError:
            known = False
        if not known:
            unknown.append(d)
    for d in sorted(unknown, key=repr):
        violations.append(Violation("unknown_dummy", f"dummy {d!r} is not a vertex of any layer", (str(d),)))

    delta = graph.delta
    if not (delta > 0) or delta == float("inf"):
        violations.append(Violation("bad_delta", f"delta must be a positive finite number, got {delta!r}"))
    return ValidationReport(tuple(violations)), number, pairs


def normalize(
    layer_assignment: Mapping[str, int],
    edges: Iterable[tuple[str, str]],
    delta: float = 1.0,
    dummies: Iterable[str] = (),
) -> LayeredGraph:
    """Build a proper layered graph, subdividing long edges with fresh dummies.

    Layer indices are 1-based. Vertices keep the iteration order of
    ``layer_assignment`` inside their layer; fresh dummies are appended at
    the right end of their layer, numbered in edge input order.
    Duplicate edges are dropped.
    """
    h = 0
    for v, i in layer_assignment.items():
        if isinstance(i, bool) or not isinstance(i, int) or i < 1:
            raise GraphInputError(f"layer index of {v!r} must be an integer >= 1, got {i!r}")
        h = max(h, i)
    layers: list[list[str]] = [[] for _ in range(h)]
    for v, i in layer_assignment.items():
        layers[i - 1].append(v)

    taken = set(layer_assignment)
    counter = 0

    def fresh() -> str:
        nonlocal counter
        while f"{DUMMY_PREFIX}{counter}" in taken:
            counter += 1
        name = f"{DUMMY_PREFIX}{counter}"
        counter += 1
        taken.add(name)
        return name

    out_edges: list[tuple[str, str]] = []
    new_dummies = set(dummies)
    seen: set[frozenset] = set()
    for a, b in edges:
        if a not in layer_assignment or b not in layer_assignment:
            raise UnknownVertexError(f"edge ({a!r}, {b!r}) references a vertex without a layer")
        if a == b:
            raise GraphInputError(f"self-loop at {a!r}")
        key = frozenset((a, b))
        if key in seen:
            continue
        seen.add(key)
        la, lb = layer_assignment[a], layer_assignment[b]
        if la == lb:
            raise GraphInputError(f"flat edge ({a!r}, {b!r}) inside layer {la}")
        if la > lb:
            a, b, la, lb = b, a, lb, la
        prev = a
        for i in range(la + 1, lb):
            d = fresh()
            layers[i - 1].append(d)
            new_dummies.add(d)
            out_edges.append((prev, d))
            prev = d
        out_edges.append((prev, b))
    return LayeredGraph(tuple(map(tuple, layers)), tuple(out_edges), frozenset(new_dummies), delta)


def _lookup(graph: LayeredGraph, v: str) -> int:
    try:
        return graph.index.number[v]
    except KeyError:
        raise UnknownVertexError(v) from None


def pred(graph: LayeredGraph, v: str) -> str | None:
    """Left neighbour of ``v`` in its layer, or None if ``v`` is leftmost."""
    idx = graph.index
    n = _lookup(graph, v)
    return idx.ids[n - 1] if idx.pos[n] > 0 else None


def pos(graph: LayeredGraph, v: str) -> int:
    """1-based rank of ``v`` in its layer."""
    return graph.index.pos[_lookup(graph, v)] + 1


def layer_of(graph: LayeredGraph, v: str) -> int:
    """1-based layer number of ``v``."""
    return graph.index.layer[_lookup(graph, v)] + 1
