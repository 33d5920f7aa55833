"""Shared quiver builders and random generators for the test suite."""

from __future__ import annotations

import random

from leavittk import OrderedQuiver, Quiver, order_sinks_first
from leavittk.ktheory import rose_quiver


def jacobson_quiver(n: int) -> OrderedQuiver:
    """Two vertices; n+1 loops at 1 and n+1 arrows from 1 to the sink 2."""
    arrows = [(f"a{i}", "1", "1") for i in range(1, n + 2)]
    arrows += [(f"b{i}", "1", "2") for i in range(1, n + 2)]
    return order_sinks_first(Quiver.build(("1", "2"), arrows))


def toeplitz_quiver() -> OrderedQuiver:
    return jacobson_quiver(0)


def rose(petals: int) -> OrderedQuiver:
    return rose_quiver(petals)


ENGINE_QUIVERS = {
    "toeplitz": toeplitz_quiver(),
    "jacobson1": jacobson_quiver(1),
    "jacobson2": jacobson_quiver(2),
    "rose1": rose(1),
    "rose2": rose(2),
    "rose3": rose(3),
    "rose4": rose(4),
}


def random_no_source_quiver(rng: random.Random, max_vertices: int = 3,
                            max_arrows: int = 5,
                            also_sink_free: bool = False) -> OrderedQuiver:
    """Random quiver where every vertex has an incoming arrow (and an
    outgoing one too when also_sink_free is set).  The mandatory arrows
    are added first, so max_arrows only caps the optional extras."""
    v = rng.randint(1, max_vertices)
    vertices = [f"v{i}" for i in range(v)]
    arrows = []

    def add(src, tgt):
        arrows.append((f"e{len(arrows)}", src, tgt))

    for tgt in vertices:
        add(rng.choice(vertices), tgt)
    if also_sink_free:
        for src in vertices:
            if all(a[1] != src for a in arrows):
                add(src, rng.choice(vertices))
    while len(arrows) < max_arrows and rng.random() < 0.6:
        add(rng.choice(vertices), rng.choice(vertices))
    return order_sinks_first(Quiver.build(vertices, arrows))
