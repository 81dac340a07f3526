"""End-to-end checks over named graphs and seeded random cubic graphs"""

import unittest

from frankcert.certify import (
    build_certificate,
    lemma4_counterexamples,
    run_pipeline,
    validate_certificate,
)
from frankcert.corpus import NAMED
from frankcert.graphio import Graph
from frankcert.nzflow import (
    cover_search_flow,
    cycle_space_basis,
    jaeger_flow,
    verify_group_flow,
)
from frankcert.oracle import frank_number, random_cubic_3ec
from frankcert.superpose import TABLE2_WITNESS, edge_agreement, edge_bits, table1_row

from . import FULL_CORPUS

BOUNDS = (7, 9, 9, 7, 7)


def _corpus() -> list[tuple[str, Graph]]:
    orders = range(4, 17, 2)
    per_order = 29 if FULL_CORPUS else 2
    graphs = [(name, g) for name, g in NAMED.items() if name != "K5"]
    for n in orders:
        for seed in range(per_order):
            graphs.append((f"cubic-{n}-{seed}", random_cubic_3ec(n, seed)))
    return graphs


CORPUS = _corpus()


class TestCorpus(unittest.TestCase):
    def test_certificates(self):
        for name, g in CORPUS:
            with self.subTest(name=name):
                cert = build_certificate(g)
                self.assertLessEqual(len(cert.orientations), 5)
                self.assertTrue(validate_certificate(g, cert).passed)

    def test_value_one_coverage_and_witness_rows(self):
        for name, g in CORPUS:
            with self.subTest(name=name):
                p = run_pipeline(g)
                covered = frozenset().union(*(f.value_one_edges() for f in p.flows))
                self.assertEqual(covered, frozenset(range(g.m)))

                cert = build_certificate(g, shrink_pass=False)
                for e in range(g.m):
                    row = table1_row(edge_bits(p.circuits, e), edge_agreement(p.circuits, e))
                    self.assertEqual(cert.witness[e], TABLE2_WITNESS[row])

    def test_flow_bounds_and_lemma4(self):
        for name, g in CORPUS:
            with self.subTest(name=name):
                p = run_pipeline(g)
                for bound, f in zip(BOUNDS, p.flows):
                    self.assertGreaterEqual(min(f.value), 1)
                    self.assertLessEqual(max(f.value), bound)
                    self.assertEqual(lemma4_counterexamples(g, f), frozenset())

    def test_flow_constructions_agree(self):
        for name, g in CORPUS:
            with self.subTest(name=name):
                self.assertTrue(verify_group_flow(g, jaeger_flow(g)))
                if len(cycle_space_basis(g)) <= 8:
                    self.assertTrue(verify_group_flow(g, cover_search_flow(g)))

    def test_sandwich(self):
        max_edges = 15 if FULL_CORPUS else 12
        for name, g in CORPUS:
            if g.m > max_edges:
                continue
            with self.subTest(name=name):
                k = frank_number(g)
                self.assertGreaterEqual(k, 2)
                self.assertLessEqual(k, len(build_certificate(g).orientations))
