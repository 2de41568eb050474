from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from layercoord.generators import random_graph

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def make_corpus(seed: int, count: int, max_vertices: int = 200, max_layers: int = 12):
    rng = random.Random(seed)
    return [random_graph(rng, max_vertices=max_vertices, max_layers=max_layers) for _ in range(count)]


@pytest.fixture(scope="session")
def small_corpus():
    return make_corpus(2024, 200, max_vertices=60)
