import random

import networkx as nx

from src.models.graph_model import Graph


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(
        n, [(u, v) for v in range(1, n) for u in range(v) if rng.random() < p]
    )


def random_triangle_free(n: int, rng: random.Random) -> Graph:
    pairs = [(u, v) for v in range(1, n) for u in range(v)]
    rng.shuffle(pairs)
    rows = [0] * n
    for u, v in pairs:
        if rng.random() < 0.7 and not rows[u] & rows[v]:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def all_graphs(n: int):
    pairs = [(u, v) for v in range(1, n) for u in range(v)]
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
