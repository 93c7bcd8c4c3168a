import unittest

import networkx as nx

from algebra.scalar import Scalar
from counting.matchgate import WeightedPlaneGraph
from counting.oracle import csp_brute, eulerian_stats, gadget_signature, holant_brute, matching_signature, tutte
from errors import CapExceeded, ValidationError
from planar import generators
from planar.gadget import binary_chain_gadget, chain_gadget
from planar.instance import uniform_instance
from planar.rotation_map import RotationMap
from signatures.signature import NEQ2, BinarySignature, SixVertexSignature, compose_N, to_six_vertex

ICE = SixVertexSignature(1, 1, 1, 1, 1, 1)
TUTTE_WEIGHTS = SixVertexSignature(1, 1, 2, 1, 1, 2)


class TestHolantBrute(unittest.TestCase):
    def test_doubled_triangle_ice(self):
        instance = uniform_instance(generators.cycle_medial(3), ICE)
        self.assertEqual(holant_brute(instance), Scalar(10))

    def test_tutte_weights_give_twice_tutte(self):
        for n in (1, 2, 3, 4):
            graph = generators.cycle_graph(n)
            instance = uniform_instance(generators.cycle_medial(n), TUTTE_WEIGHTS)
            self.assertEqual(holant_brute(instance), 2 * tutte(graph, 3, 3))
        self.assertEqual(holant_brute(uniform_instance(generators.cycle_medial(3), TUTTE_WEIGHTS)),
                         Scalar(30))

    def test_tutte_weights_on_random_multigraphs(self):
        # Jembatan, loop dan sisi paralel
        graphs = [generators.random_plane_multigraph(int(2 + seed % 7), seed) for seed in range(20)]
        graphs += [generators.random_plane_graph(int(3 + seed % 3), seed) for seed in range(6)]
        for graph in graphs:
            if graph.num_edges > 8:
                continue
            instance = uniform_instance(generators.medial(graph), TUTTE_WEIGHTS)
            self.assertEqual(holant_brute(instance), 2 * tutte(graph, 3, 3))

    def test_parallel_split_agrees(self):
        instance = uniform_instance(generators.grid_patch(2, 2), SixVertexSignature(1, 2, 3, 1, -1, "i"))
        self.assertEqual(holant_brute(instance, jobs=2), holant_brute(instance, jobs=1))

    def test_cap(self):
        instance = uniform_instance(generators.cycle_medial(3), ICE)
        with self.assertRaises(CapExceeded):
            holant_brute(instance, cap=5)


class TestEulerianStats(unittest.TestCase):
    def test_doubled_triangle(self):
        stats = eulerian_stats(generators.cycle_medial(3))
        self.assertEqual(stats.count, 10)
        self.assertEqual(stats.saddle_sum(), 30)

    def test_two_loops_match_ice_holant(self):
        rotation = RotationMap([(0, 1, 2, 3)], [1, 0, 3, 2])
        stats = eulerian_stats(rotation)
        self.assertEqual(Scalar(stats.count), holant_brute(uniform_instance(rotation, ICE)))

    def test_empty_map(self):
        stats = eulerian_stats(RotationMap([], []))
        self.assertEqual(stats.count, 1)
        self.assertEqual(stats.histogram, {0: 1})

    def test_needs_four_regular(self):
        with self.assertRaises(ValidationError):
            eulerian_stats(generators.cycle_graph(3))


class TestTutte(unittest.TestCase):
    def test_triangle(self):
        self.assertEqual(tutte(generators.cycle_graph(3), 3, 3), Scalar(15))

    def test_networkx_input(self):
        # K4: T(1,1) = 16 spanning trees
        self.assertEqual(tutte(nx.MultiGraph(nx.complete_graph(4)), 1, 1), Scalar(16))

    def test_loop_and_bridge(self):
        self.assertEqual(tutte(generators.cycle_graph(1), 3, 5), Scalar(5))
        graph = nx.MultiGraph([(0, 1)])
        self.assertEqual(tutte(graph, 3, 5), Scalar(3))


class TestCspBrute(unittest.TestCase):
    def test_disequality(self):
        self.assertEqual(csp_brute(2, [((0, 1), NEQ2)]), Scalar(2))

    def test_repeated_scope(self):
        self.assertEqual(csp_brute(1, [((0, 0), NEQ2)]), Scalar(0))
        g = BinarySignature.of(2, 0, 0, 3)
        self.assertEqual(csp_brute(1, [((0, 0), g)]), Scalar(5))

    def test_scope_errors(self):
        with self.assertRaises(ValidationError):
            csp_brute(1, [((0, 1), NEQ2)])
        with self.assertRaises(ValidationError):
            csp_brute(2, [((0,), NEQ2)])


class TestGadgetsAndMatchings(unittest.TestCase):
    def test_single_edge_matching_signature(self):
        graph = WeightedPlaneGraph(2, [(0, 1, 7)], (0, 1))
        self.assertEqual(matching_signature(graph, graph.externals).entries,
                         (Scalar(7), Scalar(0), Scalar(0), Scalar(1)))

    def test_matching_signature_needs_externals(self):
        graph = WeightedPlaneGraph(2, [(0, 1, 7)], (0, 1))
        with self.assertRaises(ValidationError):
            matching_signature(graph, ())

    def test_chain_gadget_matches_matrix_product(self):
        f = SixVertexSignature(1, 2, 3, 5, 7, 11)
        self.assertEqual(to_six_vertex(gadget_signature(chain_gadget(f, 2))), to_six_vertex(compose_N(f, f)))

    def test_binary_chain(self):
        g = BinarySignature.of(0, 1, 3, 0)
        # g N g: [[0,1],[3,0]] [[0,1],[1,0]] [[0,1],[3,0]] = [[0,1],[9,0]]
        self.assertEqual(gadget_signature(binary_chain_gadget(g, 2)).entries,
                         (Scalar(0), Scalar(1), Scalar(9), Scalar(0)))


if __name__ == "__main__":
    unittest.main()
