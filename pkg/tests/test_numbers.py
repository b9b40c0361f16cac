import unittest
import os, sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from fractions import Fraction

from Helpers import IndexRangeError, ParameterError
from Numbers import (CLASSICAL_TRIANGLES, bell_number, bernoulli2nd_number, bernoulli_number,
                     central_factorial_numbers, classical_checks, classical_triangle, euler_number,
                     gould_hopper, gould_hopper_sum, lah, lah_degenerate, lah_sum, scalar_sequences,
                     stirling1, stirling1_degenerate, stirling2, stirling2_degenerate, triangle_gf)

HALF = Fraction(1, 2)


class StirlingTestCase(unittest.TestCase):
    def test_known_values(self):
        self.assertEqual(stirling2(4, 2), 7)
        self.assertEqual([stirling2(5, k) for k in range(6)], [0, 1, 15, 25, 10, 1])
        self.assertEqual([stirling1(4, k) for k in range(5)], [0, -6, 11, -6, 1])
        self.assertEqual(stirling2(0, 0), 1)

    def test_index_range(self):
        with self.assertRaises(IndexRangeError):
            stirling2(2, 3)
        with self.assertRaises(IndexRangeError):
            stirling1(-1, 0)

    def test_degenerate(self):
        self.assertEqual(stirling2_degenerate(2, 1, HALF), HALF)
        self.assertEqual(stirling2_degenerate(2, 2, HALF), 1)
        for n in range(6):
            for k in range(n + 1):
                self.assertEqual(stirling2_degenerate(n, k, 0), stirling2(n, k))
                self.assertEqual(stirling1_degenerate(n, k, 0), stirling1(n, k))
                self.assertEqual(stirling2_degenerate(n, k, 1), 1 if n == k else 0)


class LahTestCase(unittest.TestCase):
    def test_values(self):
        self.assertEqual(lah(3, 2), 6)
        self.assertEqual(lah(4, 2), 36)
        self.assertEqual(lah(3, 0), 0)
        self.assertEqual(lah(0, 0), 1)

    def test_routes_agree(self):
        for n in range(7):
            for k in range(n + 1):
                self.assertEqual(lah(n, k), lah_sum(n, k))
                self.assertEqual(lah_degenerate(n, k, 1), lah(n, k))


class CentralFactorialTestCase(unittest.TestCase):
    def test_values(self):
        self.assertEqual(central_factorial_numbers(3, 1, 1), Fraction(-1, 4))
        self.assertEqual(central_factorial_numbers(3, 3, 1), 1)
        self.assertEqual(central_factorial_numbers(4, 2, 2), 1)

    def test_bad_arguments(self):
        with self.assertRaises(ParameterError):
            central_factorial_numbers(3, 1, 3)
        with self.assertRaises(ParameterError):
            central_factorial_numbers(3, 1, 1, None, "R")
        with self.assertRaises(ParameterError):
            central_factorial_numbers(3, 1, 1, HALF, "Q")

    def test_unit_lambda_reduces_to_classical(self):
        for n in range(6):
            for k in range(n + 1):
                self.assertEqual(central_factorial_numbers(n, k, 1, 1, "R"), central_factorial_numbers(n, k, 1))
                self.assertEqual(central_factorial_numbers(n, k, 2, 1, "R"), central_factorial_numbers(n, k, 2))


class GouldHopperTestCase(unittest.TestCase):
    def test_values(self):
        self.assertEqual(gould_hopper(1, 0, 2, 3), 3)
        self.assertEqual(gould_hopper(1, 1, 2, 3), 2)

    def test_triple_sum(self):
        for n in range(6):
            for k in range(n + 1):
                self.assertEqual(gould_hopper(n, k, 2, 3), gould_hopper_sum(n, k, 2, 3))
                self.assertEqual(gould_hopper(n, k, 1, 0), 1 if n == k else 0)

    def test_zero_r(self):
        with self.assertRaises(ParameterError):
            gould_hopper(2, 1, 0, 1)


class ScalarSequenceTestCase(unittest.TestCase):
    def test_bernoulli(self):
        self.assertEqual(bernoulli_number(0), 1)
        self.assertEqual(bernoulli_number(1), Fraction(-1, 2))
        self.assertEqual(bernoulli_number(2), Fraction(1, 6))
        self.assertEqual(bernoulli_number(3), 0)
        self.assertEqual(bernoulli_number(4), Fraction(-1, 30))

    def test_euler_and_second_kind(self):
        self.assertEqual(euler_number(0), 1)
        self.assertEqual(euler_number(1), Fraction(-1, 2))
        self.assertEqual(bernoulli2nd_number(1), Fraction(1, 2))
        self.assertEqual(bernoulli2nd_number(2), Fraction(-1, 6))

    def test_bell(self):
        self.assertEqual([bell_number(n) for n in range(6)], [1, 1, 2, 5, 15, 52])
        self.assertEqual(bell_number(2, 2), 6)

    def test_sequence_object(self):
        seq = scalar_sequences("bell", 4, 1)
        self.assertEqual(len(seq), 5)
        self.assertEqual(seq[3], 5)
        with self.assertRaises(ParameterError):
            scalar_sequences("catalan", 3)


class TriangleTestCase(unittest.TestCase):
    def test_named_triangle(self):
        triangle = classical_triangle("s2", 4)
        self.assertEqual(triangle.entry(4, 2), 7)
        self.assertEqual(triangle.get(2, 3), 0)
        with self.assertRaises(IndexRangeError):
            triangle.entry(5, 0)

    def test_parameters_required(self):
        with self.assertRaises(ParameterError):
            classical_triangle("s2_degenerate", 3)
        with self.assertRaises(ParameterError):
            classical_triangle("gould_hopper", 3, r=2)
        with self.assertRaises(ParameterError):
            classical_triangle("catalan", 3)

    def test_every_name_builds(self):
        for name in CLASSICAL_TRIANGLES:
            with self.subTest(name=name):
                triangle = classical_triangle(name, 4, lam=HALF, r=2, s=3)
                self.assertEqual(triangle.max_n, 4)

    def test_generating_functions(self):
        self.assertEqual(triangle_gf("s1", 1, 4).egf_coefficients(), [0, 1, -1, 2, -6])
        gf = triangle_gf("s2", 2, 5)
        self.assertEqual(gf.egf_coefficient(4), 7)
        with self.assertRaises(ParameterError):
            triangle_gf("r1", 1, 4)

    def test_classical_identities(self):
        checks = classical_checks(6, (HALF, Fraction(-1, 3), 2), ((2, 3), (1, -1)))
        self.assertTrue(checks)
        for check in checks:
            with self.subTest(identity=check.identity_id):
                self.assertNotEqual(check.status, "fail", check.first_failure)


if __name__ == "__main__":
    unittest.main()
