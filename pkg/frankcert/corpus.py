"""Named small graphs, with the sorted edge order of `from_networkx`"""

import networkx as nx

from .graphio import Graph, from_networkx


def complete_graph(n: int) -> Graph:
    return from_networkx(nx.complete_graph(n))


def complete_bipartite(a: int, b: int) -> Graph:
    return from_networkx(nx.complete_bipartite_graph(a, b))


def cycle(n: int) -> Graph:
    return from_networkx(nx.cycle_graph(n))


def prism() -> Graph:
    """Triangular prism, C3 x K2"""
    return from_networkx(nx.circular_ladder_graph(3))


def petersen() -> Graph:
    return from_networkx(nx.petersen_graph())


def bowtie() -> Graph:
    """Two triangles sharing vertex 0"""
    return Graph(vertex_count=5, edges=((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)))


NAMED: dict[str, Graph] = {
    "K4": complete_graph(4),
    "K5": complete_graph(5),
    "K3,3": complete_bipartite(3, 3),
    "prism": prism(),
    "petersen": petersen(),
}
