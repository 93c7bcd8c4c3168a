import unittest

from algebra import linalg
from algebra.scalar import Scalar
from errors import NotInClass, ParseError
from signatures.signature import (NEQ2, BinarySignature, GeneralSignature4, SixVertexSignature, attach_binary,
                                  flip_variable, from_matrix, hadamard_image, inner_outer_dets, parse_signature,
                                  rotate, scale_on, signature_matrix, to_six_vertex)

F = SixVertexSignature(1, 2, 3, 5, 7, 11)


class TestSixVertexSignature(unittest.TestCase):
    def test_matrix_layout(self):
        m = signature_matrix(F)
        expected = linalg.as_matrix([[0, 0, 0, 1], [0, 2, 3, 0], [0, 11, 7, 0], [5, 0, 0, 0]])
        self.assertTrue(linalg.equal(m, expected))

    def test_from_matrix_inverts_view(self):
        self.assertEqual(to_six_vertex(from_matrix(signature_matrix(F))), F)

    def test_entry_lookup_off_support_is_zero(self):
        self.assertEqual(F.value((0, 0, 0, 0)), Scalar(0))
        self.assertEqual(F.value((1, 1, 1, 1)), Scalar(0))
        self.assertEqual(F.value((0, 0, 1, 1)), Scalar(1))
        self.assertEqual(F.value((1, 0, 1, 0)), Scalar(11))

    def test_to_six_vertex_rejects_stray_support(self):
        entries = list(F.entries)
        entries[0] = Scalar(1)
        with self.assertRaises(NotInClass):
            to_six_vertex(GeneralSignature4(tuple(entries)))

    def test_dets(self):
        self.assertEqual(inner_outer_dets(F), (Scalar(2 * 7 - 3 * 11), Scalar(-5)))


class TestRotation(unittest.TestCase):
    def test_quarter_turn_permutes_weights(self):
        self.assertEqual(rotate(F, 1), SixVertexSignature(7, 1, 11, 2, 5, 3))

    def test_four_turns_identity(self):
        self.assertEqual(rotate(F, 4), F)
        self.assertEqual(rotate(rotate(F, 1), 3), F)

    def test_general_rotation_agrees(self):
        for q in range(4):
            self.assertEqual(to_six_vertex(rotate(F.general(), q)), rotate(F, q))


class TestGadgetAlgebra(unittest.TestCase):
    def test_attach_neq_on_column_pair(self):
        g = attach_binary(F, NEQ2, (4, 3))
        self.assertEqual(g, BinarySignature.of(0, 2 + 3, 11 + 7, 0))

    def test_scale_on_first_variable(self):
        scaled = scale_on(F, 1, 2)
        self.assertEqual(scaled, SixVertexSignature(1, 2, 3, 10, 14, 22))

    def test_flip_twice_is_identity(self):
        flipped = flip_variable(flip_variable(F.general(), 2), 2)
        self.assertEqual(flipped, F.general())

    def test_hadamard_twice_scales_by_sixteen(self):
        twice = hadamard_image(hadamard_image(F.general()))
        self.assertEqual(twice, F.general().scaled(16))

    def test_transposed(self):
        self.assertEqual(BinarySignature.of(1, 2, 3, 4).transposed(), BinarySignature.of(1, 3, 2, 4))


class TestLiterals(unittest.TestCase):
    def test_parse_by_length(self):
        self.assertIsInstance(parse_signature("1,2,3,4,5,6"), SixVertexSignature)
        self.assertIsInstance(parse_signature("0,1,1,0"), BinarySignature)
        self.assertIsInstance(parse_signature(",".join(["0"] * 16)), GeneralSignature4)

    def test_parse_bad_length(self):
        with self.assertRaises(ParseError):
            parse_signature("1,2,3")

    def test_literal_parses_back(self):
        f = SixVertexSignature.parse("1, i, 0, -1, 1/2 + w^1, 0")
        self.assertEqual(parse_signature(f.literal()), f)


if __name__ == "__main__":
    unittest.main()
