import unittest
from fractions import Fraction

import numpy as np

from algebra import mobius
from algebra.mobius import INFINITE_ORDER, INFINITY, MobiusTransform
from algebra.scalar import I, ONE, W, Scalar
from errors import SingularMatrix, ValidationError
from signatures.signature import SixVertexSignature

SHIFT = MobiusTransform(1, 1, 0, 1)
DOUBLE = MobiusTransform(2, 0, 0, 1)
ORDER_THREE = MobiusTransform(0, 1, -1, 1)
SMALL = [Scalar(0), ONE, -ONE, Scalar(2), I, -I, W]


class TestMobiusTransform(unittest.TestCase):
    def test_compose_applies_right_first(self):
        self.assertEqual(SHIFT.compose(DOUBLE).apply(3), Scalar(7))
        self.assertEqual(DOUBLE.compose(SHIFT).apply(3), Scalar(8))

    def test_inverse_and_power(self):
        phi = MobiusTransform(2, -1, 1, 1)
        self.assertTrue(phi.compose(phi.inverse()).is_identity())
        self.assertTrue(phi.power(3).proportional(phi.compose(phi).compose(phi)))
        self.assertTrue(phi.power(-1).proportional(phi.inverse()))

    def test_infinity(self):
        self.assertIs(SHIFT.apply(INFINITY), INFINITY)
        self.assertEqual(ORDER_THREE.apply(INFINITY), Scalar(0))
        self.assertIs(ORDER_THREE.apply(1), INFINITY)

    def test_singular(self):
        with self.assertRaises(SingularMatrix):
            MobiusTransform(1, 2, 2, 4)

    def test_from_signature(self):
        f = SixVertexSignature(1, 2, 3, 5, 7, 11)
        self.assertEqual(mobius.from_signature(f), MobiusTransform(7, 11, 3, 2))
        self.assertEqual(mobius.from_signature(f, "cross"), MobiusTransform(5, 3, 11, 1))
        with self.assertRaises(ValidationError):
            mobius.from_signature(f, "outer")


class TestOrder(unittest.TestCase):
    def test_finite_orders(self):
        cases = [
            (MobiusTransform.identity(), 1),
            (MobiusTransform(1, 0, 0, -1), 2),
            (ORDER_THREE, 3),
            (MobiusTransform(I, 0, 0, 1), 4),
            (MobiusTransform(2, -1, 1, 1), 6),
            (MobiusTransform(W, 0, 0, 1), 8),
        ]
        for phi, expected in cases:
            self.assertEqual(mobius.order(phi), expected, str(phi))
            self.assertTrue(phi.power(expected).is_identity())

    def test_infinite(self):
        self.assertEqual(mobius.order(SHIFT), INFINITE_ORDER)
        self.assertEqual(mobius.order(DOUBLE), INFINITE_ORDER)


class TestUnitCircle(unittest.TestCase):
    def test_rotation(self):
        form = mobius.unit_circle_form(MobiusTransform(I, 0, 0, 1))
        self.assertEqual((form.alpha, form.unit, form.inversion), (Scalar(0), I, False))

    def test_inversion(self):
        form = mobius.unit_circle_form(MobiusTransform(0, 1, 1, 0))
        self.assertTrue(form.inversion)
        self.assertEqual(form.unit, Scalar(1))

    def test_blaschke_factor(self):
        half = Fraction(1, 2)
        form = mobius.unit_circle_form(MobiusTransform(1, half, half, 1))
        self.assertEqual(form.alpha, Scalar(half))
        self.assertEqual(form.unit, Scalar(1))

    def test_not_circle_preserving(self):
        self.assertIsNone(mobius.unit_circle_form(DOUBLE))

    def test_form_agrees_with_circle_samples(self):
        rng = np.random.default_rng(53)
        samples = [ONE, -ONE, I, -I, W, W ** 3, Scalar(Fraction(3, 5)) + I * Fraction(4, 5)]
        units = [ONE, -ONE, I, -I, W, W ** 3]
        checked = 0
        while checked < 200:
            roll = rng.random()
            try:
                if roll < 0.4:
                    u = units[int(rng.integers(0, len(units)))]
                    p, q = (int(k) for k in rng.integers(-3, 4, size=2))
                    alpha = (Scalar(p) + I * q) / int(rng.integers(1, 5))
                    phi = MobiusTransform(u, u * alpha, alpha.conjugate(), 1)
                elif roll < 0.5:
                    phi = MobiusTransform(0, units[int(rng.integers(0, len(units)))], 1, 0)
                else:
                    phi = MobiusTransform(*(SMALL[int(k)] for k in rng.integers(0, len(SMALL), size=4)))
            except SingularMatrix:
                continue
            images = [phi.apply(p) for p in samples]
            on_circle = all(z is not INFINITY and z.abs2() == ONE for z in images)
            self.assertEqual(mobius.unit_circle_form(phi) is not None, on_circle, str(phi))
            checked += 1



class TestIteration(unittest.TestCase):
    def test_closed_orbit(self):
        result = mobius.iterate_distinct(ORDER_THREE, 2, 10)
        self.assertEqual(result.values, [Scalar(2), Scalar(-1), Scalar(Fraction(1, 2))])
        self.assertEqual(result.period, 3)
        self.assertIsNone(result.pole_at)

    def test_orbit_through_pole(self):
        with self.assertLogs("algebra.mobius", level="WARNING"):
            result = mobius.iterate_distinct(ORDER_THREE, 0, 10)
        self.assertEqual(result.pole_at, 2)
        self.assertEqual(result.period, 3)

    def test_open_orbit(self):
        result = mobius.iterate_distinct(SHIFT, 0, 5)
        self.assertEqual(result.distinct, 5)
        self.assertIsNone(result.period)

    def test_blaschke_orbit_from_i(self):
        half = Fraction(1, 2)
        phi = MobiusTransform(1, half, half, 1)
        self.assertEqual(mobius.order(phi), INFINITE_ORDER)
        result = mobius.iterate_distinct(phi, I, 50)
        self.assertEqual(result.distinct, 50)
        self.assertIsNone(result.period)
        self.assertIsNone(result.pole_at)

    def test_quarter_turn(self):
        self.assertEqual(mobius.order(MobiusTransform(I, 0, 0, 1)), 4)


    def test_fixed_points(self):
        self.assertIsNone(mobius.fixed_points_count(MobiusTransform.identity()))
        self.assertEqual(mobius.fixed_points_count(SHIFT), 1)
        self.assertEqual(mobius.fixed_points_count(DOUBLE), 2)
        self.assertEqual(mobius.fixed_points_count(ORDER_THREE), 2)
        self.assertEqual(mobius.fixed_points_count(MobiusTransform(0, 1, -1, 2)), 1)


if __name__ == "__main__":
    unittest.main()
