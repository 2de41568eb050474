from __future__ import annotations

import random

import pytest
from hypothesis import given

from layercoord.alignment import (
    BlockStructure,
    Orientation,
    mark_type1_conflicts,
    mirror,
    unmirror,
    vertical_align,
)
from layercoord.generators import random_normalized_graph, random_proper_graph
from layercoord.graph import LayeredGraph

from conftest import seeds


def aligned_pairs(blocks: BlockStructure):
    """(upper, lower) pairs linked inside blocks."""
    return [(u, w) for u, w in blocks.align.items() if blocks.root[w] != w]


def crosses(index, a, b):
    (u1, w1), (u2, w2) = a, b
    pu, pw = index.pos, index.pos
    return (pu[u1] - pu[u2]) * (pw[w1] - pw[w2]) < 0


def check_block_invariants(graph: LayeredGraph, blocks: BlockStructure):
    canonical = mirror(graph, blocks.orientation)
    index = canonical.index
    num = index.number
    assert set(blocks.align) == set(blocks.root) == set(canonical.vertices())
    assert sorted(blocks.align.values()) == sorted(blocks.align)
    edges = {frozenset(e) for e in canonical.edges}
    seen = set()
    for members in blocks.blocks():
        r = members[0]
        assert blocks.root[r] == r
        assert all(blocks.root[m] == r for m in members)
        layers = [index.layer[num[m]] for m in members]
        assert layers == list(range(layers[0], layers[0] + len(members)))
        for a, b in zip(members, members[1:]):
            assert frozenset((a, b)) in edges
        seen.update(members)
    assert seen == set(canonical.vertices())
    for v in canonical.vertices():
        if not index.upper[num[v]]:
            assert blocks.root[v] == v


def test_long_edge_becomes_one_block():
    g = LayeredGraph((("a",), ("d1",), ("d2",), ("b",)), (("a", "d1"), ("d1", "d2"), ("d2", "b")), frozenset({"d1", "d2"}))
    blocks = vertical_align(g)
    assert list(blocks.blocks()) == [["a", "d1", "d2", "b"]]
    assert all(r == "a" for r in blocks.root.values())


def test_two_upper_neighbours_take_lower_median():
    g = LayeredGraph((("a", "b"), ("c",)), (("a", "c"), ("b", "c")))
    blocks = vertical_align(g, Orientation.UL)
    assert blocks.root["c"] == "a"
    assert blocks.align["a"] == "c"
    assert blocks.root["b"] == "b"


def test_right_bias_takes_the_other_median():
    g = LayeredGraph((("a", "b"), ("c",)), (("a", "c"), ("b", "c")))
    assert vertical_align(g, Orientation.UR).root["c"] == "b"


def test_bottom_up_aligns_to_lower_neighbours():
    g = LayeredGraph((("a",), ("b", "c")), (("a", "b"), ("a", "c")))
    blocks = vertical_align(g, Orientation.LL)
    assert blocks.root["a"] == "b"


def test_upper_median_tried_when_lower_is_taken():
    # c claims a; d's lower median a is gone, so d falls back to b
    g = LayeredGraph((("a", "b"), ("c", "d")), (("a", "c"), ("a", "d"), ("b", "d")))
    blocks = vertical_align(g)
    assert blocks.root["c"] == "a"
    assert blocks.root["d"] == "b"


def test_graph_without_edges_is_all_singletons():
    g = LayeredGraph((("a", "b"), ("c",), ("d", "e")))
    blocks = vertical_align(g)
    assert blocks.align == {v: v for v in g.vertices()}
    assert blocks.root == {v: v for v in g.vertices()}


def test_inner_segment_wins_over_crossing_original_segment():
    # b-c would cross the inner segment d1-d2
    g = LayeredGraph(
        (("d1", "b"), ("c", "d2")),
        (("d1", "d2"), ("b", "c")),
        frozenset({"d1", "d2"}),
    )
    blocks = vertical_align(g)
    assert blocks.root["d2"] == "d1"
    assert blocks.root["c"] == "c"
    marked, crossing = mark_type1_conflicts(g.index)
    num = g.index.number
    assert marked == {(num["b"], num["c"])}
    assert crossing == []


def test_crossing_inner_segments_keep_the_earlier_one_and_warn():
    dummies = frozenset({"p1", "q1", "p2", "q2"})
    g = LayeredGraph((("p1", "q1"), ("q2", "p2")), (("p1", "p2"), ("q1", "q2")), dummies)
    blocks = vertical_align(g)
    assert len(blocks.warnings) == 1
    assert "crosses an earlier inner segment" in blocks.warnings[0]
    aligned = aligned_pairs(blocks)
    assert len(aligned) == 1


def test_mirror_examples():
    g = LayeredGraph((("a", "b", "c"), ("d",)), (("a", "d"),))
    assert mirror(g, Orientation.UL) is g
    assert mirror(g, Orientation.UR).layers == (("c", "b", "a"), ("d",))
    assert mirror(g, Orientation.LL).layers == (("d",), ("a", "b", "c"))
    assert mirror(g, Orientation.LR).layers == (("d",), ("c", "b", "a"))


@pytest.mark.parametrize("orientation", list(Orientation))
def test_mirror_is_an_involution(orientation):
    g = random_normalized_graph(random.Random(3), 20, 5)
    twice = mirror(mirror(g, orientation), orientation)
    assert twice.layers == g.layers
    assert twice.edges == g.edges and twice.dummies == g.dummies


def test_unmirror_negates_for_right_to_left_only():
    x = {"a": 0.0, "b": 2.0}
    assert unmirror(x, Orientation.LL) == x
    out = unmirror(x, Orientation.UR)
    assert out == {"a": 0.0, "b": -2.0}
    assert str(out["a"]) == "0.0"


def test_orientation_properties():
    assert len(Orientation) == 4
    assert Orientation.UL.vertical == "top-to-bottom"
    assert Orientation.LR.horizontal == "right-to-left"
    assert Orientation.LL.flips_layers and not Orientation.LL.flips_order
    assert Orientation.UL.left_biased and not Orientation.UR.left_biased


def test_arrays_match_maps_on_another_index():
    g = random_normalized_graph(random.Random(9), 15, 4)
    blocks = vertical_align(g)
    index = LayeredGraph(g.layers, g.edges, g.dummies, g.delta).index
    align, root = blocks.arrays(index)
    assert [index.ids[a] for a in align] == [blocks.align[v] for v in index.ids]
    assert [index.ids[r] for r in root] == [blocks.root[v] for v in index.ids]


def test_from_maps():
    b = BlockStructure.from_maps({"a": "a"}, {"a": "a"})
    assert b.orientation is Orientation.UL and b.warnings == ()


@given(seeds)
def test_block_invariants_hold_in_every_orientation(seed):
    rng = random.Random(seed)
    if rng.random() < 0.5:
        g = random_proper_graph(rng, rng.randint(0, 50), rng.randint(1, 8))
    else:
        g = random_normalized_graph(rng, rng.randint(1, 25), rng.randint(1, 8))
    for o in Orientation:
        check_block_invariants(g, vertical_align(g, o))


@given(seeds)
def test_alignments_never_cross(seed):
    rng = random.Random(seed)
    g = random_proper_graph(rng, rng.randint(0, 60), rng.randint(1, 8), max_degree=4)
    for o in Orientation:
        blocks = vertical_align(g, o)
        index = mirror(g, o).index
        num = index.number
        pairs = [(num[u], num[w]) for u, w in aligned_pairs(blocks)]
        by_layer = {}
        for p in pairs:
            by_layer.setdefault(index.layer[p[0]], []).append(p)
        for group in by_layer.values():
            for i, a in enumerate(group):
                for b in group[i + 1:]:
                    assert not crosses(index, a, b)


@given(seeds)
def test_no_original_alignment_crosses_an_inner_segment(seed):
    rng = random.Random(seed)
    g = random_normalized_graph(rng, rng.randint(1, 30), rng.randint(2, 8))
    for o in Orientation:
        blocks = vertical_align(g, o)
        index = mirror(g, o).index
        num = index.number
        dummy = index.dummy
        inner = []
        for a, b in g.edges:
            a, b = num[a], num[b]
            if index.layer[a] > index.layer[b]:
                a, b = b, a
            if dummy[a] and dummy[b]:
                inner.append((a, b))
        for u, w in aligned_pairs(blocks):
            p = (num[u], num[w])
            if dummy[p[0]] and dummy[p[1]]:
                continue
            for s in inner:
                if index.layer[s[0]] == index.layer[p[0]]:
                    assert not crosses(index, p, s)
