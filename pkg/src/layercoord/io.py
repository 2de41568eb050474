"""JSON formats for graphs and coordinate documents.

Graph::

    {"delta": 1.0, "layers": [["a", "b"], ["c"]], "dummies": ["b"],
     "edges": [["a", "c"], ["b", "c"]]}

Coordinates::

    {"coordinates": {"a": 0.0, ...},
     "metadata": {"balanced": true, "conforming": true, "delta": 1.0,
                  "orientations": ["ul", "ur", "ll", "lr"], "strategy": "contour"}}

Output is deterministic: keys sorted, floats in shortest round-trip form.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .compaction import CompactionStrategy, CoordinateAssignment
from .graph import GraphInputError, LayeredGraph

__all__ = [
    "CoordinateDocument",
    "graph_from_dict",
    "graph_to_dict",
    "loads_graph",
    "dumps_graph",
    "read_graph",
    "read_coordinates",
]


# "oracle" marks output of the reference solver
_STRATEGY_NAMES = {s.value for s in CompactionStrategy} | {"oracle"}


def _dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _parse(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphInputError(f"{what} is not valid JSON: {exc}") from exc


def graph_from_dict(data: Any) -> LayeredGraph:
    if not isinstance(data, dict):
        raise GraphInputError("graph document must be a JSON object")
    if "layers" not in data:
        raise GraphInputError("graph document has no 'layers'")
    unknown = set(data) - {"layers", "edges", "dummies", "delta"}
    if unknown:
        raise GraphInputError(f"unknown graph fields: {sorted(unknown)}")
    return LayeredGraph(
        data["layers"],
        data.get("edges", ()),
        data.get("dummies", ()),
        data.get("delta", 1.0),
    )


def graph_to_dict(graph: LayeredGraph) -> dict:
    return {
        "delta": graph.delta,
        "layers": [list(layer) for layer in graph.layers],
        "dummies": sorted(graph.dummies),
        "edges": [list(e) for e in graph.edges],
    }


def loads_graph(text: str) -> LayeredGraph:
    return graph_from_dict(_parse(text, "graph"))


def dumps_graph(graph: LayeredGraph) -> str:
    return _dumps(graph_to_dict(graph))


def read_graph(path: str | Path) -> LayeredGraph:
    return loads_graph(Path(path).read_text())


@dataclass
class CoordinateDocument:
    coordinates: dict[str, float]
    strategy: str = "contour"
    orientations: list[str] = field(default_factory=lambda: ["ul", "ur", "ll", "lr"])
    balanced: bool = True
    delta: float = 1.0

    @property
    def conforming(self) -> bool:
        return self.strategy != CompactionStrategy.LEGACY_BUGGY.value

    @classmethod
    def from_assignment(cls, result: CoordinateAssignment) -> CoordinateDocument:
        return cls(
            coordinates=dict(result.x),
            strategy=result.strategy.value if result.strategy else "oracle",
            orientations=list(result.orientations),
            balanced=result.balanced,
            delta=result.delta,
        )

    def to_dict(self) -> dict:
        return {
            "coordinates": {v: c + 0.0 for v, c in self.coordinates.items()},
            "metadata": {
                "balanced": self.balanced,
                "conforming": self.conforming,
                "delta": self.delta,
                "orientations": list(self.orientations),
                "strategy": self.strategy,
            },
        }

    def dumps(self) -> str:
        return _dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Any) -> CoordinateDocument:
        if not isinstance(data, dict) or not isinstance(data.get("coordinates"), dict):
            raise GraphInputError("coordinate document needs a 'coordinates' object")
        coords = {}
        for v, c in data["coordinates"].items():
            if isinstance(c, bool) or not isinstance(c, (int, float)) or not math.isfinite(c):
                raise GraphInputError(f"coordinate of {v!r} is not a finite number: {c!r}")
            coords[v] = float(c)
        meta = data.get("metadata", {})
        if not isinstance(meta, dict):
            raise GraphInputError("'metadata' must be an object")
        strategy = meta.get("strategy", "contour")
        if strategy not in _STRATEGY_NAMES:
            raise GraphInputError(f"unknown strategy {strategy!r}")
        orientations = meta.get("orientations", ["ul", "ur", "ll", "lr"])
        if not isinstance(orientations, list) or not orientations or not set(orientations) <= {"ul", "ur", "ll", "lr"}:
            raise GraphInputError(f"bad orientations {orientations!r}")
        doc = cls(
            coords,
            strategy=strategy,
            orientations=list(orientations),
            balanced=bool(meta.get("balanced", True)),
            delta=float(meta.get("delta", 1.0)),
        )
        if "conforming" in meta and meta["conforming"] != doc.conforming:
            raise GraphInputError("metadata.conforming contradicts metadata.strategy")
        return doc

    @classmethod
    def loads(cls, text: str) -> CoordinateDocument:
        return cls.from_dict(_parse(text, "coordinate document"))


def read_coordinates(path: str | Path) -> CoordinateDocument:
    return CoordinateDocument.loads(Path(path).read_text())
