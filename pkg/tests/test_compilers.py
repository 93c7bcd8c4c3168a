import unittest

import numpy as np

from algebra.scalar import I, ONE, Scalar
from counting.oracle import csp_brute, holant_brute
from errors import NonPlanarError, NotInClass, ValidationError
from reductions import compilers
from signatures.signature import NEQ2, BinarySignature, SixVertexSignature

F = SixVertexSignature(1, 2, 0, -1, 2, 0)
SWEEP_SIGNATURES = (F, SixVertexSignature(2, 1, 0, 2, -1, 0), SixVertexSignature(1, ONE + I, 0, -1, ONE + I, 0))
SWEEP_EDGES = 20


def random_binary(rng):
    return BinarySignature(tuple(int(k) for k in rng.integers(-2, 4, size=4)))


class TestLift(unittest.TestCase):
    def test_tilde_of_lift(self):
        g = BinarySignature.of(2, 3, 5, 7)
        self.assertEqual(compilers.tilde_in(compilers.lift(g)), g)
        lifted = compilers.lift(g)
        self.assertEqual((lifted.a, lifted.x), (Scalar(0), Scalar(0)))


class TestCompilePlcsp(unittest.TestCase):
    def test_cycle_of_variables(self):
        rng = np.random.default_rng(3)
        for _ in range(3):
            constraints = [((0, 1), random_binary(rng)), ((1, 2), random_binary(rng)),
                           ((2, 0), random_binary(rng)), ((1, 1), random_binary(rng))]
            instance = compilers.compile_plcsp(4, constraints)
            self.assertEqual(holant_brute(instance), csp_brute(4, constraints))

    def test_six_vertex_constraint_read_as_tilde(self):
        f = SixVertexSignature(0, 1, 2, 0, 3, 1)
        constraints = [((0, 1), f), ((1, 0), NEQ2)]
        expected = csp_brute(2, [((0, 1), compilers.tilde_in(f)), ((1, 0), NEQ2)])
        self.assertEqual(holant_brute(compilers.compile_plcsp(2, constraints)), expected)

    def test_outer_pair_rejected(self):
        with self.assertRaises(NotInClass):
            compilers.compile_plcsp(2, [((0, 1), SixVertexSignature(1, 1, 1, 0, 1, 1))])

    def test_k5_constraint_graph(self):
        constraints = [((u, w), NEQ2) for u in range(5) for w in range(u + 1, 5)]
        with self.assertRaises(NonPlanarError):
            compilers.compile_plcsp(5, constraints)

    def test_scope_checks(self):
        with self.assertRaises(ValidationError):
            compilers.compile_plcsp(2, [((0, 1, 1), NEQ2)])
        with self.assertRaises(ValidationError):
            compilers.compile_plcsp(2, [((0, 2), NEQ2)])


class TestCompileCspInner(unittest.TestCase):
    def setUp(self):
        self.g1, self.g2 = compilers.g1_of(F), compilers.g2_of(F)

    def test_tables(self):
        self.assertEqual(self.g1, BinarySignature.of(1, 4, 4, 1))
        self.assertEqual(self.g2, BinarySignature.of(-1, 4, 4, -1))

    def test_single_pair(self):
        constraints = [((0, 1), self.g1)]
        instance = compilers.compile_csp_inner(2, constraints, F)
        self.assertEqual(instance.num_vertices, 2)
        self.assertEqual(holant_brute(instance), csp_brute(2, constraints))

    def test_mixed_tables_and_self_constraint(self):
        constraints = [((0, 1), self.g2), ((1, 2), self.g1), ((2, 2), self.g1)]
        instance = compilers.compile_csp_inner(4, constraints, F)
        self.assertEqual(holant_brute(instance), csp_brute(4, constraints))

    def test_padding_choice(self):
        constraints = [((0, 2), self.g1)]
        expected = csp_brute(3, constraints)
        for padding in compilers.PADDINGS:
            instance = compilers.compile_csp_inner(3, constraints, F, padding=padding)
            self.assertEqual(holant_brute(instance), expected)

    def test_unused_first_variable(self):
        constraints = [((1, 1), self.g1)]
        instance = compilers.compile_csp_inner(2, constraints, F)
        self.assertIn("neq", instance.labels)
        self.assertEqual(holant_brute(instance), csp_brute(2, constraints))

    def test_unused_last_variable(self):
        constraints = [((0, 0), self.g1)]
        for padding in compilers.PADDINGS:
            instance = compilers.compile_csp_inner(2, constraints, F, padding=padding)
            self.assertEqual(holant_brute(instance), csp_brute(2, constraints))

    def test_only_unused_variables(self):
        instance = compilers.compile_csp_inner(3, [], F)
        self.assertEqual(holant_brute(instance), csp_brute(3, []))

    def test_random_instances(self):
        rng = np.random.default_rng(41)
        for f in SWEEP_SIGNATURES:
            tables = [compilers.g1_of(f), compilers.g2_of(f), compilers.g2_of(f).transposed()]
            checked = 0
            while checked < 30:
                n = int(rng.integers(1, 5))
                constraints = []
                for _ in range(int(rng.integers(0, 4))):
                    u = int(rng.integers(0, n))
                    w = u if rng.random() < 0.25 else int(rng.integers(0, n))
                    constraints.append(((u, w), tables[int(rng.integers(0, 3))]))
                padding = "chi1" if rng.random() < 0.5 else "chi2"
                instance = compilers.compile_csp_inner(n, constraints, f, padding=padding)
                if instance.num_edges > SWEEP_EDGES:
                    continue
                self.assertEqual(holant_brute(instance), csp_brute(n, constraints),
                                 msg=f"{f} {padding} {n} {constraints}")
                checked += 1

    def test_empty(self):
        instance = compilers.compile_csp_inner(0, [], F)
        self.assertEqual(instance.num_vertices, 0)

    def test_preconditions(self):
        with self.assertRaises(NotInClass):
            compilers.check_inner_preconditions(SixVertexSignature(1, 2, 1, 1, 2, 0))
        with self.assertRaises(ValidationError):
            compilers.check_inner_preconditions(SixVertexSignature(1, 2, 0, 3, 2, 0))
        with self.assertRaises(ValidationError):
            compilers.check_inner_preconditions(SixVertexSignature(1, 1, 0, 1, 1, 0))
        with self.assertRaises(ValidationError):
            compilers.compile_csp_inner(2, [((0, 1), self.g1)], F, padding="chi3")
        with self.assertRaises(ValidationError):
            compilers.compile_csp_inner(2, [((0, 1), NEQ2)], F)


if __name__ == "__main__":
    unittest.main()
