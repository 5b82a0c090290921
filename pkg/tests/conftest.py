import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the oracles helper module

import netmoment as nm

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def p3():
    """Path on 3 nodes: 0-1-2."""
    return nm.Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def k3():
    return nm.Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def k4():
    return nm.Graph(~np.eye(4, dtype=bool))


@pytest.fixture
def k13():
    """Star with center 0 and leaves 1..3."""
    return nm.Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def c4():
    """4-cycle 0-1-2-3-0."""
    return nm.Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def empty5():
    return nm.Graph(np.zeros((5, 5), dtype=bool))


def random_graph(m: int, p: float, rng: np.random.Generator) -> nm.Graph:
    adj = np.zeros((m, m), dtype=bool)
    iu, ju = np.triu_indices(m, 1)
    edges = rng.random(len(iu)) < p
    adj[iu, ju] = edges
    adj[ju, iu] = edges
    return nm.Graph(adj)
