import unittest
from fractions import Fraction

from algebra.scalar import I, Scalar
from errors import LatticeRankError, SingularMatrix, ValidationError
from reductions import harness, interpolation
from signatures.signature import SixVertexSignature, to_six_vertex

DISTINCT_F = SixVertexSignature(0, 1, 1, 0, 1, 2)


class TestChiInterpolation(unittest.TestCase):
    def test_chi1(self):
        run = harness.run_chi(SixVertexSignature(1, 2, 0, 1, 2, 0), m=1, which="chi1")
        self.assertEqual(run.occurrences, 1)
        self.assertEqual(len(run.queries), 2)
        self.assertTrue(run.matches)

    def test_chi2(self):
        run = harness.run_chi(SixVertexSignature(1, 2, 0, -1, 2, 0), m=1, which="chi2")
        self.assertTrue(run.matches)
        self.assertIn("match=yes", run.as_lines())

    def test_root_of_unity_ratio_rejected(self):
        with self.assertRaises(ValidationError):
            harness.run_chi(SixVertexSignature(1, I, 0, 1, I, 0), m=1)

    def test_wrong_shape_rejected(self):
        with self.assertRaises(ValidationError):
            harness.run_chi(SixVertexSignature(1, 2, 0, -1, 2, 0), m=1, which="chi1")


class TestBinaryInterpolation(unittest.TestCase):
    def test_recovers_target(self):
        g, target = harness.default_binary()
        for m in (1, 2):
            run = harness.run_binary(SixVertexSignature(1, 2, 0, 1, 2, 0), g, target, m=m)
            self.assertEqual(run.occurrences, m)
            self.assertTrue(run.matches)

    def test_unit_ratio_rejected(self):
        g, target = harness.default_binary(t=1)
        with self.assertRaises(ValidationError):
            harness.run_binary(SixVertexSignature(1, 2, 0, 1, 2, 0), g, target)


class TestJordan(unittest.TestCase):
    def test_case_tags(self):
        self.assertEqual(interpolation.jordan_case(DISTINCT_F), (interpolation.DISTINCT, None))
        self.assertEqual(interpolation.jordan_case(SixVertexSignature(0, 0, 1, 0, 1, 1)),
                         (interpolation.DEFECTIVE, None))
        self.assertEqual(interpolation.jordan_case(SixVertexSignature(0, -1, 0, 0, 1, 0)),
                         (interpolation.ROOT_OF_UNITY, 2))
        with self.assertRaises(SingularMatrix):
            interpolation.jordan_case(SixVertexSignature(0, 1, 1, 0, 1, 1))

    def test_chain_coefficients(self):
        # trace 3, det 1
        self.assertEqual(interpolation.chain_coefficients(DISTINCT_F, 1), (Scalar(0), Scalar(1)))
        self.assertEqual(interpolation.chain_coefficients(DISTINCT_F, 2), (Scalar(-1), Scalar(3)))
        self.assertEqual(interpolation.chain_coefficients(DISTINCT_F, 3), (Scalar(-3), Scalar(8)))

    def test_chain_is_combination_of_g_and_f(self):
        f = DISTINCT_F
        for copies in (2, 3, 4):
            alpha, beta = interpolation.chain_coefficients(f, copies)
            chained = to_six_vertex(interpolation.chain(f, copies))
            self.assertEqual(chained.b, beta * f.b)
            self.assertEqual(chained.y, beta * f.y)
            self.assertEqual(chained.c, alpha + beta * f.c)
            self.assertEqual(chained.z, alpha + beta * f.z)

    def test_distinct_run(self):
        run = harness.run_jordan(DISTINCT_F, m=1)
        self.assertEqual(run.case, interpolation.DISTINCT)
        self.assertTrue(run.matches)

    def test_root_of_unity_run(self):
        run = harness.run_jordan(SixVertexSignature(0, -1, 0, 0, 1, 0), m=1)
        self.assertEqual(len(run.queries), 1)
        self.assertTrue(run.matches)

    def test_outer_pair_rejected(self):
        with self.assertRaises(ValidationError):
            harness.run_jordan(SixVertexSignature(1, 1, 1, 0, 1, 2))


class TestLattice(unittest.TestCase):
    def test_trivial_lattice(self):
        spec = interpolation.find_lattice_basis(2, 3)
        self.assertIsNone(spec.basis)

    def test_rank_one(self):
        spec = interpolation.find_lattice_basis(2, Fraction(1, 2))
        self.assertEqual(spec.basis, (1, 1))
        self.assertEqual(interpolation.find_lattice_basis(I, 2).basis, (4, 0))

    def test_rank_two(self):
        with self.assertRaises(LatticeRankError):
            interpolation.find_lattice_basis(I, -1)

    def test_recovery(self):
        for alpha, beta, phi, psi in ((2, 3, None, None), (2, Fraction(1, 2), None, None),
                                      (2, Fraction(1, 2), 3, Fraction(1, 3))):
            recovered, direct, _ = harness.run_lattice(alpha, beta, 2, phi, psi, seed=4)
            self.assertEqual(recovered, direct)

    def test_phi_psi_must_respect_relation(self):
        with self.assertRaises(ValidationError):
            harness.run_lattice(2, Fraction(1, 2), 2, 3, 3)


if __name__ == "__main__":
    unittest.main()
