import unittest

from algebra import linalg
from algebra.scalar import I, ONE, Scalar
from errors import SingularMatrix


class TestLinalg(unittest.TestCase):
    def test_det_two_by_two(self):
        m = linalg.as_matrix([[1, 2], [3, 4]])
        self.assertEqual(linalg.det(m), Scalar(-2))

    def test_det_with_row_swap(self):
        m = linalg.as_matrix([[0, 1, 0], [1, 0, 0], [0, 0, "i"]])
        self.assertEqual(linalg.det(m), -I)

    def test_solve(self):
        m = linalg.as_matrix([[2, 1], [1, 3]])
        x = linalg.solve(m, [3, 5])
        self.assertEqual(list(x), [Scalar(4, 0) / 5, Scalar(7) / 5])

    def test_solve_singular(self):
        with self.assertRaises(SingularMatrix):
            linalg.solve(linalg.as_matrix([[1, 2], [2, 4]]), [1, 2])

    def test_vandermonde_recovers_polynomial(self):
        coeffs = [Scalar(3), I, Scalar(-2)]
        nodes = [Scalar(1), Scalar(2), I + 1]
        values = [sum((c * t ** j for j, c in enumerate(coeffs)), Scalar(0)) for t in nodes]
        self.assertEqual(list(linalg.vandermonde_solve(nodes, values)), coeffs)

    def test_vandermonde_repeated_nodes(self):
        with self.assertRaises(SingularMatrix):
            linalg.vandermonde_solve([1, 1], [0, 0])

    def test_matrix_power_and_scalar_check(self):
        rotation = linalg.as_matrix([[0, -1], [1, 0]])
        self.assertFalse(linalg.is_scalar_matrix(rotation))
        square = linalg.matrix_power(rotation, 2)
        self.assertTrue(linalg.is_scalar_matrix(square))
        self.assertEqual(square[0, 0], -ONE)


if __name__ == "__main__":
    unittest.main()
