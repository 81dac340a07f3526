import unittest

from frankcert.circuits import (
    Circuit,
    build_reference_orientations,
    coordinate_subgraph,
    decompose_circuits,
)
from frankcert.corpus import NAMED, bowtie, cycle, petersen
from frankcert.errors import InvariantViolation, OddDegreeError
from frankcert.graphio import Graph, parse_graph6
from frankcert.nzflow import GroupFlow, jaeger_flow


class TestDecompose(unittest.TestCase):
    def _assert_simple_closed(self, g: Graph, c: Circuit):
        tails = [step.tail(g) for step in c]
        self.assertEqual(len(set(tails)), len(tails))
        for a, b in zip(c, c[1:] + c[:1]):
            self.assertEqual(a.head(g), b.tail(g))

    def test_bowtie(self):
        g = bowtie()
        circuits = decompose_circuits(g, range(g.m))
        self.assertEqual([len(c) for c in circuits], [3, 3])
        for c in circuits:
            self._assert_simple_closed(g, c)
        used = sorted(step.edge for c in circuits for step in c)
        self.assertEqual(used, list(range(g.m)))

    def test_odd_degree(self):
        with self.assertRaises(OddDegreeError) as cm:
            decompose_circuits(parse_graph6("C~"), range(6))
        self.assertEqual(cm.exception.vertex, 0)
        self.assertEqual(cm.exception.degree, 3)

    def test_empty(self):
        self.assertEqual(decompose_circuits(petersen(), []), [])

    def test_flow_supports(self):
        for name, g in NAMED.items():
            f = jaeger_flow(g)
            for i in (1, 2, 3):
                with self.subTest(name=name, coordinate=i):
                    edges = coordinate_subgraph(g, f, i)
                    circuits = decompose_circuits(g, edges)
                    for c in circuits:
                        self._assert_simple_closed(g, c)
                    used = [step.edge for c in circuits for step in c]
                    self.assertEqual(len(used), len(edges))
                    self.assertEqual(frozenset(used), edges)


class TestReferenceOrientations(unittest.TestCase):
    def test_c4(self):
        g = cycle(4)
        f = GroupFlow(values=((1, 0, 0),) * 4)
        co = build_reference_orientations(g, f)
        self.assertEqual(len(co.coordinate(1).circuits), 1)
        self.assertEqual(co.coordinate(2).arc_dir, {})
        self.assertEqual(co.coordinate(3).arc_dir, {})
        # a directed 4-cycle: every vertex has one arc in and one out
        outs = [0] * 4
        for e, forward in co.coordinate(1).arc_dir.items():
            u, v = g.edges[e]
            outs[u if forward else v] += 1
        self.assertEqual(outs, [1, 1, 1, 1])

    def test_arc_dir_covers_support(self):
        for name, g in NAMED.items():
            with self.subTest(name=name):
                f = jaeger_flow(g)
                co = build_reference_orientations(g, f)
                for i in (1, 2, 3):
                    self.assertEqual(co.coordinate(i).edges, f.support(i))

    def test_balanced(self):
        g = petersen()
        co = build_reference_orientations(g, jaeger_flow(g))
        for i in (1, 2, 3):
            balance = [0] * g.vertex_count
            for e, forward in co.coordinate(i).arc_dir.items():
                u, v = g.edges[e]
                tail, head = (u, v) if forward else (v, u)
                balance[tail] -= 1
                balance[head] += 1
            self.assertEqual(balance, [0] * g.vertex_count)

    def test_reversal_is_an_involution(self):
        g = petersen()
        co = build_reference_orientations(g, jaeger_flow(g))
        for i in (1, 2, 3):
            flipped = co.reversed_coordinate(i)
            self.assertNotEqual(flipped, co)
            self.assertEqual(flipped.reversed_coordinate(i), co)
            for e, d in co.coordinate(i).arc_dir.items():
                self.assertEqual(flipped.coordinate(i).arc_dir[e], not d)

    def test_vertex_sequences(self):
        g = cycle(4)
        co = build_reference_orientations(g, GroupFlow(values=((1, 0, 0),) * 4))
        seqs = co.vertex_sequences(g)
        self.assertEqual(len(seqs), 3)
        self.assertEqual(sorted(seqs[0][0]), [0, 1, 2, 3])
        self.assertEqual(seqs[1:], [[], []])

    def test_rejects_invalid_flow(self):
        g = parse_graph6("C~")
        with self.assertRaises(InvariantViolation):
            build_reference_orientations(g, GroupFlow(values=((1, 1, 1),) * 6))
