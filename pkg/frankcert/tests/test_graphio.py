import itertools
import unittest

import networkx as nx

from frankcert.corpus import NAMED, bowtie, complete_graph, cycle, petersen
from frankcert.errors import GraphFormatError, TooFewVerticesError
from frankcert.graphio import (
    Graph,
    double,
    edge_connectivity,
    from_networkx,
    minimum_edge_cut,
    parse_edge_list,
    parse_graph,
    parse_graph6,
    to_graph6,
    to_networkx,
)

K4_EDGES = ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3))


def _brute_force_lambda(g: Graph) -> int:
    G = to_networkx(g)
    for k in range(g.m + 1):
        for removed in itertools.combinations(g.edges, k):
            H = G.copy()
            H.remove_edges_from(removed)
            if not nx.is_connected(H):
                return k
    return g.m


class TestGraph6(unittest.TestCase):
    def test_k4(self):
        g = parse_graph6("C~")
        self.assertEqual(g.vertex_count, 4)
        self.assertEqual(g.edges, K4_EDGES)

    def test_header_is_optional(self):
        self.assertEqual(parse_graph6(">>graph6<<C~"), parse_graph6("C~"))

    def test_empty_graph(self):
        g = parse_graph6("?")
        self.assertEqual((g.vertex_count, g.m), (0, 0))

    def test_triangle(self):
        g = parse_graph6("Bw")
        self.assertEqual(g.edges, ((0, 1), (0, 2), (1, 2)))

    def test_trailing_garbage(self):
        with self.assertRaises(GraphFormatError) as cm:
            parse_graph6("C~x")
        self.assertEqual(cm.exception.offset, 2)
        self.assertEqual(cm.exception.exit_code, 1)

    def test_truncated(self):
        with self.assertRaises(GraphFormatError) as cm:
            parse_graph6("C")
        self.assertEqual(cm.exception.offset, 1)

    def test_bad_byte(self):
        with self.assertRaises(GraphFormatError) as cm:
            parse_graph6("C!")
        self.assertEqual(cm.exception.offset, 1)

    def test_nonzero_padding(self):
        with self.assertRaises(GraphFormatError):
            parse_graph6("Bx")

    def test_matches_networkx_decoder(self):
        for name, g in NAMED.items():
            with self.subTest(name=name):
                line = to_graph6(g)
                ours = parse_graph6(line)
                ref = nx.from_graph6_bytes(line.encode("ascii"))
                self.assertEqual(ours.vertex_count, ref.number_of_nodes())
                self.assertEqual(
                    set(ours.edges), {(min(a, b), max(a, b)) for a, b in ref.edges()}
                )

    def test_first_non_blank_line(self):
        self.assertEqual(parse_graph("\n\nC~\nBw\n"), parse_graph6("C~"))


class TestEdgeList(unittest.TestCase):
    def test_triangle(self):
        g = parse_edge_list("3 3\n0 1\n1 2\n0 2")
        self.assertEqual(g.edges, ((0, 1), (1, 2), (0, 2)))

    def test_k4_with_comments(self):
        text = "# K4\n4 6\n0 1\n0 2\n0 3\n\n1 2\n1 3\n2 3\n"
        g = parse_graph(text, "edgelist")
        self.assertEqual(set(g.edges), set(K4_EDGES))
        self.assertEqual(g.edges[2], (0, 3))

    def test_missing_edges(self):
        with self.assertRaises(GraphFormatError) as cm:
            parse_edge_list("3 2\n0 1\n")
        self.assertEqual(cm.exception.line, 1)

    def test_duplicate_edge(self):
        with self.assertRaises(GraphFormatError) as cm:
            parse_edge_list("3 2\n0 1\n1 0\n")
        self.assertEqual(cm.exception.line, 3)

    def test_loop_and_range(self):
        with self.assertRaises(GraphFormatError):
            parse_edge_list("3 1\n1 1\n")
        with self.assertRaises(GraphFormatError):
            parse_edge_list("3 1\n0 3\n")

    def test_not_integers(self):
        with self.assertRaises(GraphFormatError):
            parse_edge_list("3 1\n0 x\n")


class TestConnectivity(unittest.TestCase):
    def test_known_values(self):
        self.assertEqual(edge_connectivity(complete_graph(4)), 3)
        self.assertEqual(edge_connectivity(complete_graph(5)), 4)
        self.assertEqual(edge_connectivity(petersen()), 3)
        self.assertEqual(edge_connectivity(cycle(5)), 2)
        self.assertEqual(edge_connectivity(bowtie()), 2)

    def test_disconnected(self):
        g = Graph(vertex_count=4, edges=((0, 1), (2, 3)))
        cut = minimum_edge_cut(g)
        self.assertEqual(cut.value, 0)
        self.assertEqual(cut.edges, ())

    def test_cut_witness_disconnects(self):
        for name, g in list(NAMED.items()) + [("bowtie", bowtie())]:
            with self.subTest(name=name):
                cut = minimum_edge_cut(g)
                self.assertEqual(len(cut.edges), cut.value)
                H = to_networkx(g)
                H.remove_edges_from(g.edges[e] for e in cut.edges)
                self.assertFalse(nx.is_connected(H))

    def test_against_brute_force(self):
        for name, g in NAMED.items():
            if g.m > 12:
                continue
            with self.subTest(name=name):
                self.assertEqual(edge_connectivity(g), _brute_force_lambda(g))

    def test_against_networkx(self):
        for name, g in NAMED.items():
            with self.subTest(name=name):
                self.assertEqual(
                    edge_connectivity(g), nx.edge_connectivity(to_networkx(g))
                )

    def test_too_few_vertices(self):
        for n in (0, 1):
            with self.subTest(n=n):
                with self.assertRaises(TooFewVerticesError) as cm:
                    minimum_edge_cut(Graph(vertex_count=n))
                self.assertEqual(cm.exception.exit_code, 2)
                self.assertEqual(cm.exception.vertex_count, n)


class TestModel(unittest.TestCase):
    def test_rejects_unsorted_and_duplicates(self):
        with self.assertRaises(ValueError):
            Graph(vertex_count=3, edges=((1, 0),))
        with self.assertRaises(ValueError):
            Graph(vertex_count=3, edges=((0, 1), (0, 1)))
        with self.assertRaises(ValueError):
            Graph(vertex_count=2, edges=((0, 2),))

    def test_from_networkx_sorted(self):
        g = from_networkx(nx.cycle_graph(4))
        self.assertEqual(g.edges, ((0, 1), (0, 3), (1, 2), (2, 3)))

    def test_incidence(self):
        g = complete_graph(4)
        self.assertEqual(g.incidence[0], (0, 1, 2))
        self.assertEqual(g.other(0, 0), 1)


class TestDouble(unittest.TestCase):
    def test_triangle(self):
        dg = double(parse_graph6("Bw"))
        self.assertEqual(dg.m, 6)
        self.assertEqual(dg.parent, (0, 0, 1, 1, 2, 2))
        self.assertEqual(dg.edges[0], dg.edges[1])

    def test_k4_lambda(self):
        self.assertEqual(edge_connectivity(double(complete_graph(4))), 6)


class TestProperties(unittest.TestCase):
    def test_reencode_identity(self):
        for line in ("C~", "Bw", "D~{", to_graph6(petersen())):
            with self.subTest(line=line):
                self.assertEqual(to_graph6(parse_graph6(line)), line)

    def test_double_doubles_lambda(self):
        for name, g in list(NAMED.items()) + [("bowtie", bowtie())]:
            with self.subTest(name=name):
                self.assertEqual(edge_connectivity(double(g)), 2 * edge_connectivity(g))
