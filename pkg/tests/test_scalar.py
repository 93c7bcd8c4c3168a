import unittest
from fractions import Fraction

import numpy as np

from algebra.scalar import I, ONE, W, ZERO, Scalar
from errors import ParseError, ValidationError


def random_scalar(rng, lo=-6, hi=7):
    return Scalar(*(Fraction(int(rng.integers(lo, hi)), int(rng.integers(1, 4))) for _ in range(4)))


class TestScalarArithmetic(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(8)

    def test_w_squared_is_i(self):
        self.assertEqual(W * W, I)
        self.assertEqual(W ** 8, ONE)
        self.assertEqual(W ** 4, Scalar(-1))

    def test_i_sqrt2_squared(self):
        s = W + W ** 3
        self.assertEqual(s * s, Scalar(-2))

    def test_inverse_of_one_plus_i(self):
        self.assertEqual((ONE + I).inv(), (ONE - I) / 2)
        self.assertEqual(1 / (ONE + I), (ONE - I) / 2)

    def test_negative_power(self):
        self.assertEqual(Scalar(2) ** -2, Scalar(Fraction(1, 4)))

    def test_zero_has_no_inverse(self):
        with self.assertRaises(ZeroDivisionError):
            ZERO.inv()

    def test_field_axioms_on_random_elements(self):
        for _ in range(200):
            s, t, u = (random_scalar(self.rng) for _ in range(3))
            self.assertEqual((s * t) * u, s * (t * u))
            self.assertEqual(s * (t + u), s * t + s * u)
            if s:
                self.assertEqual(s * s.inv(), ONE)

    def test_conjugate_is_automorphism(self):
        for _ in range(100):
            s, t = random_scalar(self.rng), random_scalar(self.rng)
            self.assertEqual((s * t).conjugate(), s.conjugate() * t.conjugate())
            self.assertEqual(s.conjugate().conjugate(), s)
            self.assertTrue(s.abs2().in_real_subfield())
            self.assertEqual((s * t).abs2(), s.abs2() * t.abs2())

    def test_conjugate_examples(self):
        self.assertEqual(I.conjugate(), -I)
        self.assertEqual(W.conjugate(), -(W ** 3))
        z = Scalar(Fraction(3, 5), 0, Fraction(4, 5))
        self.assertEqual(z.conjugate(), Scalar(Fraction(3, 5), 0, Fraction(-4, 5)))


class TestScalarStructure(unittest.TestCase):
    def test_root_of_unity_orders(self):
        self.assertEqual((W ** 3).is_root_of_unity(), 8)
        self.assertEqual(I.is_root_of_unity(), 4)
        self.assertEqual(Scalar(-1).is_root_of_unity(), 2)
        self.assertEqual(ONE.is_root_of_unity(), 1)
        self.assertIsNone(Scalar(2).is_root_of_unity())

    def test_unit_modulus_not_root_of_unity(self):
        z = Scalar(Fraction(3, 5), 0, Fraction(4, 5))
        self.assertEqual(z.abs2(), ONE)
        self.assertIsNone(z.is_root_of_unity())

    def test_order_is_minimal(self):
        for k in range(8):
            s = Scalar.zeta(k)
            n = s.is_root_of_unity()
            self.assertEqual(s ** n, ONE)
            for m in range(1, n):
                self.assertNotEqual(s ** m, ONE)

    def test_real_subfield_sign(self):
        self.assertEqual(Scalar.real_subfield(1, -1).real_subfield_sign(), -1)
        self.assertEqual(ZERO.real_subfield_sign(), 0)
        self.assertEqual(Scalar.real_subfield(3, -2).real_subfield_sign(), 1)
        self.assertEqual(Scalar.real_subfield(-3, 2).real_subfield_sign(), -1)

    def test_real_subfield_sign_rejects_non_real(self):
        with self.assertRaises(ValidationError):
            I.real_subfield_sign()


class TestScalarLiterals(unittest.TestCase):
    def test_parse_examples(self):
        self.assertEqual(Scalar.parse("1/2 + 3*w^1"), Scalar(Fraction(1, 2), 3))
        self.assertEqual(Scalar.parse("i"), I)
        self.assertEqual(Scalar.parse("-2"), Scalar(-2))
        self.assertEqual(Scalar.parse("sqrt2"), Scalar.sqrt2())

    def test_str_parses_back(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            s = random_scalar(rng)
            self.assertEqual(Scalar.parse(str(s)), s)

    def test_bad_literals(self):
        for text in ["", "1/0", "q", "2*"]:
            with self.assertRaises(ParseError):
                Scalar.parse(text)


if __name__ == "__main__":
    unittest.main()
