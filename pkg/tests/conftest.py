import random

import networkx as nx
import pytest

from nbu.graph import Multigraph, as_circle, random_multigraph


def to_networkx(g: Multigraph) -> nx.MultiGraph:
    G = nx.MultiGraph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def isomorphic(g: Multigraph, h: Multigraph) -> bool:
    return nx.is_isomorphic(to_networkx(g), to_networkx(h))


def core_fuzz(seed: int, count: int, max_nodes: int = 10, max_edges: int = 16):
    """Random 2-core multigraphs with at least two cycles."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_multigraph(rng, max_nodes, max_edges, pendants=False)
        if g.m and g.min_degree() >= 2 and as_circle(g) is None:
            out.append(g)
    return out


def connected_fuzz(seed: int, count: int, max_nodes: int = 10, max_edges: int = 16):
    rng = random.Random(seed)
    return [random_multigraph(rng, max_nodes, max_edges) for _ in range(count)]


@pytest.fixture(scope="session")
def core_graphs():
    return core_fuzz(11, 120)


@pytest.fixture(scope="session")
def any_graphs():
    return connected_fuzz(12, 120)
