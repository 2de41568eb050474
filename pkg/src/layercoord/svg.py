"""SVG preview of a layered drawing, optionally with block and class overlays."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from collections.abc import Mapping

from shapely.geometry import MultiPoint

from .alignment import Orientation, mirror, vertical_align
from .compaction import CompactionStrategy, run_compaction
from .graph import LayeredGraph

__all__ = ["render_svg", "class_members"]

UNIT = 40.0
MARGIN = 30.0
RADIUS = 8.0
CLASS_COLORS = ("#7fc97f", "#beaed4", "#fdc086", "#ffff99", "#386cb0", "#f0027f", "#bf5b17")


def class_members(graph: LayeredGraph, orientation: Orientation = Orientation.UL) -> tuple[list[list[str]], list[list[str]]]:
    """Blocks and classes (grouped by sink) for one orientation."""
    blocks = vertical_align(graph, orientation)
    _, state = run_compaction(mirror(graph, orientation), blocks, CompactionStrategy.CONTOUR)
    classes: dict[str, list[str]] = {}
    for v in graph.vertices():
        classes.setdefault(state.sink_of(v), []).append(v)
    return list(blocks.blocks()), list(classes.values())


def _fmt(value: float) -> str:
    return f"{value:.2f}".rstrip("0").rstrip(".")


def render_svg(
    graph: LayeredGraph,
    x: Mapping[str, float],
    *,
    overlays: bool = False,
    orientation: Orientation = Orientation.UL,
    unit: float = UNIT,
) -> str:
    """Vertex centres at ``(x * unit, layer * unit)`` plus a margin."""
    layer_of = {v: i for i, layer in enumerate(graph.layers) for v in layer}
    xs = [x[v] for v in layer_of]
    x0 = min(xs, default=0.0)
    width = (max(xs, default=0.0) - x0) * unit + 2 * MARGIN
    height = max(len(graph.layers) - 1, 0) * unit + 2 * MARGIN

    def point(v: str) -> tuple[float, float]:
        return (x[v] - x0) * unit + MARGIN, layer_of[v] * unit + MARGIN

    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        version="1.1",
        width=_fmt(width),
        height=_fmt(height),
        viewBox=f"0 0 {_fmt(width)} {_fmt(height)}",
    )
    if overlays and layer_of:
        blocks, classes = class_members(graph, orientation)
        hulls = ET.SubElement(svg, "g", {"class": "classes"})
        for k, members in enumerate(classes):
            shape = MultiPoint([point(v) for v in members]).convex_hull.buffer(RADIUS * 1.8, quad_segs=4)
            coords = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in shape.exterior.coords[:-1])
            ET.SubElement(
                hulls,
                "polygon",
                {"class": "class-hull", "points": coords, "fill": CLASS_COLORS[k % len(CLASS_COLORS)],
                 "fill-opacity": "0.35", "stroke": "#2b7a2b"},
            )
        rects = ET.SubElement(svg, "g", {"class": "blocks"})
        for members in blocks:
            pts = [point(v) for v in members]
            left = min(p[0] for p in pts) - RADIUS * 1.3
            top = min(p[1] for p in pts) - RADIUS * 1.3
            right = max(p[0] for p in pts) + RADIUS * 1.3
            bottom = max(p[1] for p in pts) + RADIUS * 1.3
            ET.SubElement(
                rects,
                "rect",
                {"class": "block", "x": _fmt(left), "y": _fmt(top), "width": _fmt(right - left),
                 "height": _fmt(bottom - top), "rx": _fmt(RADIUS), "fill": "#add8e6", "fill-opacity": "0.5"},
            )

    lines = ET.SubElement(svg, "g", {"class": "edges", "stroke": "#333"})
    for a, b in graph.edges:
        (ax, ay), (bx, by) = point(a), point(b)
        ET.SubElement(lines, "line", x1=_fmt(ax), y1=_fmt(ay), x2=_fmt(bx), y2=_fmt(by))

    nodes = ET.SubElement(svg, "g", {"class": "vertices"})
    for v in layer_of:
        cx, cy = point(v)
        dummy = v in graph.dummies
        circle = ET.SubElement(
            nodes,
            "circle",
            {"class": "dummy" if dummy else "vertex", "cx": _fmt(cx), "cy": _fmt(cy),
             "r": _fmt(RADIUS / 4 if dummy else RADIUS), "fill": "#333" if dummy else "#fff", "stroke": "#333"},
        )
        ET.SubElement(circle, "title").text = v
    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode", xml_declaration=True) + "\n"
