import itertools
import unittest

import networkx as nx

from frankcert.corpus import complete_bipartite, complete_graph, cycle, petersen, prism
from frankcert.errors import (
    BoundExceededError,
    ConnectivityError,
    GenerationError,
    UncoverableError,
)
from frankcert.graphio import Graph, edge_connectivity, parse_graph6
from frankcert.oracle import (
    deletable_profile,
    enumerate_strong_orientations,
    exact_frank,
    frank_number,
    maximal_masks,
    min_cover,
    random_cubic_3ec,
)

from . import FULL_CORPUS


def _brute_force_strong_count(g: Graph) -> int:
    count = 0
    for direction in itertools.product((False, True), repeat=g.m):
        D = nx.DiGraph()
        D.add_nodes_from(range(g.vertex_count))
        D.add_edges_from((u, v) if d else (v, u) for (u, v), d in zip(g.edges, direction))
        count += nx.is_strongly_connected(D)
    return count


def _relabel(g: Graph, perm: list[int]) -> Graph:
    edges = sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in g.edges)
    return Graph(vertex_count=g.vertex_count, edges=tuple(edges))


class TestEnumeration(unittest.TestCase):
    def test_triangle(self):
        self.assertEqual(len(enumerate_strong_orientations(parse_graph6("Bw"))), 2)

    def test_c4(self):
        self.assertEqual(len(enumerate_strong_orientations(cycle(4))), 2)

    def test_k4_brute_force(self):
        g = parse_graph6("C~")
        self.assertEqual(
            len(enumerate_strong_orientations(g)), _brute_force_strong_count(g)
        )

    def test_half_enumeration_count(self):
        for g in (parse_graph6("C~"), complete_bipartite(3, 3), cycle(5)):
            self.assertEqual(
                deletable_profile(g).sc_orientations,
                len(enumerate_strong_orientations(g)),
            )

    def test_bound(self):
        with self.assertRaises(BoundExceededError):
            enumerate_strong_orientations(petersen(), max_edges=10)


class TestCover(unittest.TestCase):
    def test_maximal_masks(self):
        self.assertEqual(maximal_masks({0b011, 0b001, 0b110, 0b100}), {0b011, 0b110})

    def test_min_cover(self):
        self.assertEqual(min_cover(frozenset({0b0011, 0b1100, 0b0110}), 4), 2)
        self.assertEqual(min_cover(frozenset({0b1111}), 4), 1)

    def test_min_cover_exceeds_k_max(self):
        masks = frozenset({0b0001, 0b0010, 0b0100, 0b1000})
        with self.assertRaises(UncoverableError):
            min_cover(masks, 4, k_max=3)
        self.assertEqual(min_cover(masks, 4, k_max=4), 4)


class TestFrankNumber(unittest.TestCase):
    def test_k5(self):
        self.assertEqual(frank_number(complete_graph(5)), 1)

    def test_k4(self):
        result = exact_frank(parse_graph6("C~"))
        self.assertEqual(result.frank_number, 2)
        self.assertEqual(result.sc_orientations, _brute_force_strong_count(parse_graph6("C~")))

    def test_three_edge_colorable(self):
        self.assertEqual(frank_number(complete_bipartite(3, 3)), 2)
        self.assertEqual(frank_number(prism()), 2)

    def test_pruning_does_not_change_the_answer(self):
        for g in (parse_graph6("C~"), complete_bipartite(3, 3), complete_graph(5)):
            self.assertEqual(frank_number(g, prune=False), frank_number(g))

    def test_relabel_invariance(self):
        g = prism()
        self.assertEqual(frank_number(_relabel(g, [5, 3, 1, 0, 2, 4])), frank_number(g))

    def test_connectivity_precondition(self):
        with self.assertRaises(ConnectivityError):
            exact_frank(cycle(4))

    @unittest.skipUnless(FULL_CORPUS, "set FRANKCERT_FULL_CORPUS=1")
    def test_petersen(self):
        self.assertEqual(frank_number(petersen()), 3)


class TestRandomCubic(unittest.TestCase):
    def test_n4_is_k4(self):
        for seed in range(3):
            g = random_cubic_3ec(4, seed)
            self.assertEqual(set(g.edges), set(complete_graph(4).edges))

    def test_n10(self):
        g = random_cubic_3ec(10, 7)
        self.assertEqual(g, random_cubic_3ec(10, 7))
        self.assertTrue(all(len(xs) == 3 for xs in g.incidence))
        self.assertEqual(edge_connectivity(g), 3)

    def test_bad_order(self):
        with self.assertRaises(GenerationError):
            random_cubic_3ec(5, 0)
        with self.assertRaises(GenerationError):
            random_cubic_3ec(2, 0)
