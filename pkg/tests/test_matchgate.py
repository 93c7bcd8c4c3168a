import unittest

import networkx as nx
import numpy as np

from algebra import linalg
from algebra.scalar import I, ONE, Scalar
from counting import matchgate
from counting.oracle import holant_brute, matching_signature
from errors import NotInClass, ValidationError
from planar import generators
from planar.instance import PlanarInstance, uniform_instance
from planar.rotation_map import RotationMap
from signatures.membership import is_matchgate, is_matchgate_hat
from signatures.signature import SixVertexSignature

TWO_LOOPS = RotationMap([(0, 1, 2, 3)], [1, 0, 3, 2])
IN_M = SixVertexSignature(1, 1, 2, 1, 1, 1)
VALUES = (0, 1, -1, 2, -2, 3, I, -I, ONE + I)


def unit_graph(graph):
    return matchgate.WeightedPlaneGraph(graph.number_of_nodes(), [(u, v, 1) for u, v in graph.edges()])


def pick(rng, nonzero=False):
    while True:
        value = Scalar.coerce(VALUES[int(rng.integers(0, len(VALUES)))])
        if value or not nonzero:
            return value


def random_matchgate(rng):
    """Random f with ax = cz - by, solved for x."""
    a = pick(rng, nonzero=True)
    b, c, y, z = (pick(rng) for _ in range(4))
    return SixVertexSignature(a, b, c, (c * z - b * y) / a, y, z)


def random_matchgate_hat(rng):
    b, c = pick(rng), pick(rng)
    eps = 1 if rng.random() < 0.5 else -1
    return SixVertexSignature(0, b, c, 0, eps * b, eps * c)


def small_rotations():
    rotations = [TWO_LOOPS, generators.grid_patch(2, 2)]
    rotations += [generators.cycle_medial(n) for n in (1, 2, 3, 4)]
    rotations += [generators.medial_of_random_plane_graph(4, s) for s in range(3)]
    rotations += [generators.medial(generators.random_plane_multigraph(k, s)) for k, s in ((5, 1), (7, 2), (9, 3))]
    return [r for r in rotations if r.num_edges <= 18]


class TestPerfectMatchings(unittest.TestCase):
    def test_four_cycle(self):
        self.assertEqual(matchgate.perfect_matching_sum(unit_graph(nx.cycle_graph(4))), Scalar(2))

    def test_single_edge(self):
        self.assertEqual(matchgate.perfect_matching_sum(unit_graph(nx.path_graph(2))), ONE)

    def test_two_by_three_grid(self):
        grid = nx.convert_node_labels_to_integers(nx.grid_2d_graph(2, 3))
        self.assertEqual(matchgate.perfect_matching_sum(unit_graph(grid)), Scalar(3))

    def test_odd_component(self):
        self.assertEqual(matchgate.perfect_matching_sum(unit_graph(nx.path_graph(3))), Scalar(0))

    def test_weighted_against_enumeration(self):
        grid = nx.convert_node_labels_to_integers(nx.grid_2d_graph(3, 4))
        edges = [(u, v, Scalar(k % 3 + 1) + (Scalar.zeta(2) if k % 2 else 0))
                 for k, (u, v) in enumerate(grid.edges())]
        graph = matchgate.WeightedPlaneGraph(grid.number_of_nodes(), edges)
        expected = matching_signature(graph, (0,)).entries[0]
        self.assertEqual(matchgate.perfect_matching_sum(graph), expected)

    def test_outer_face_choice_does_not_matter(self):
        graph = unit_graph(nx.convert_node_labels_to_integers(nx.grid_2d_graph(3, 4)))
        self.assertEqual(matchgate.perfect_matching_sum(graph, outer_choice=1),
                         matchgate.perfect_matching_sum(graph, outer_choice=0))


class TestSynthesis(unittest.TestCase):
    def test_wheel_reproduces_signature(self):
        gadget, scalar = matchgate.synthesize(IN_M)
        self.assertEqual(scalar, ONE)
        self.assertEqual(matching_signature(gadget, gadget.externals).entries, IN_M.entries)

    def test_template_and_rotated_wheel(self):
        for f in (SixVertexSignature(1, 2, 0, -2, 1, 0), SixVertexSignature(1, 1, 0, -1, 1, 2)):
            gadget, _ = matchgate.synthesize(f)
            gadget.check()
            self.assertEqual(matching_signature(gadget, gadget.externals).entries, f.entries)

    def test_random_matchgates_reproduced(self):
        rng = np.random.default_rng(23)
        for _ in range(500):
            f = random_matchgate(rng)
            self.assertTrue(is_matchgate(f))
            gadget, scalar = matchgate.synthesize(f)
            self.assertEqual(scalar, ONE)
            self.assertEqual(matching_signature(gadget, gadget.externals).entries, f.entries, msg=str(f))

    def test_not_a_matchgate(self):
        with self.assertRaises(NotInClass):
            matchgate.synthesize(SixVertexSignature(1, 1, 1, 1, 1, 1))


class TestFktEval(unittest.TestCase):
    def test_doubled_triangle(self):
        instance = uniform_instance(generators.cycle_medial(3), IN_M)
        self.assertEqual(matchgate.fkt_eval(instance), holant_brute(instance))

    def test_random_instances(self):
        rotations = [generators.grid_patch(2, 2)]
        rotations += [generators.medial_of_random_plane_graph(4, s) for s in range(3)]
        for rotation in rotations:
            if rotation.num_edges > 16:
                continue
            instance = uniform_instance(rotation, SixVertexSignature(2, 1, 3, 1, 1, 1))
            self.assertEqual(matchgate.fkt_eval(instance), holant_brute(instance))

    def test_random_matchgates(self):
        rng = np.random.default_rng(31)
        rotations = small_rotations()
        for k in range(100):
            instance = uniform_instance(rotations[k % len(rotations)], random_matchgate(rng))
            self.assertEqual(matchgate.fkt_eval(instance), holant_brute(instance))

    def test_random_hadamard_family(self):
        rng = np.random.default_rng(37)
        rotations = small_rotations()
        for k in range(50):
            f = random_matchgate_hat(rng)
            self.assertTrue(is_matchgate_hat(f))
            instance = uniform_instance(rotations[k % len(rotations)], f)
            self.assertEqual(matchgate.fkt_eval_hat(instance), holant_brute(instance), msg=str(f))

    def test_large_grid_two_orientations(self):
        # 100 simpul, 200 sisi: di luar jangkauan brute force
        instance = uniform_instance(generators.grid_patch(10, 10), IN_M)
        self.assertEqual(instance.num_edges, 200)
        self.assertEqual(matchgate.fkt_eval(instance, outer_choice=1), matchgate.fkt_eval(instance, outer_choice=0))

    def test_empty_instance(self):
        self.assertEqual(matchgate.fkt_eval(PlanarInstance(RotationMap([], []), [], {})), ONE)

    def test_hadamard_family(self):
        for f in (SixVertexSignature(0, 1, 2, 0, 1, 2), SixVertexSignature(0, 1, -2, 0, -1, 2)):
            for rotation in (TWO_LOOPS, generators.cycle_medial(2)):
                instance = uniform_instance(rotation, f)
                self.assertEqual(matchgate.fkt_eval_hat(instance), holant_brute(instance))


class TestPfaffian(unittest.TestCase):
    def test_small_matrices(self):
        self.assertEqual(matchgate.pfaffian([[0, 3], [-3, 0]]), Scalar(3))
        upper = {(0, 1): 1, (0, 2): 2, (0, 3): 3, (1, 2): 4, (1, 3): 5, (2, 3): 6}
        matrix = [[0] * 4 for _ in range(4)]
        for (i, j), value in upper.items():
            matrix[i][j], matrix[j][i] = value, -value
        # a01 a23 - a02 a13 + a03 a12
        self.assertEqual(matchgate.pfaffian(matrix), Scalar(8))
        self.assertEqual(matchgate.pfaffian(matrix) ** 2, linalg.det(linalg.as_matrix(matrix)))

    def test_odd_and_empty(self):
        self.assertEqual(matchgate.pfaffian([[0, 1, 2], [-1, 0, 3], [-2, -3, 0]]), Scalar(0))
        self.assertEqual(matchgate.pfaffian(np.zeros((0, 0), dtype=object)), ONE)

    def test_not_skew(self):
        with self.assertRaises(ValidationError):
            matchgate.pfaffian([[0, 1], [1, 0]])


class TestKasteleyn(unittest.TestCase):
    def test_grid_orientation(self):
        grid = nx.convert_node_labels_to_integers(nx.grid_2d_graph(3, 3))
        orientation = matchgate.kasteleyn_orient(grid)
        self.assertEqual(len(orientation.direction), grid.number_of_edges())
        self.assertEqual(len(orientation.outer_faces), 1)
        for u, v in grid.edges():
            self.assertEqual(orientation.sign(u, v), -orientation.sign(v, u))

    def test_one_outer_face_per_component(self):
        graph = nx.disjoint_union(nx.cycle_graph(4), nx.cycle_graph(6))
        orientation = matchgate.kasteleyn_orient(graph)
        self.assertEqual(len(orientation.outer_faces), 2)


if __name__ == "__main__":
    unittest.main()
