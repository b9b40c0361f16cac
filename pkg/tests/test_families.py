import unittest
import os, sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from fractions import Fraction

from Helpers import IndexRangeError, ParameterError
from Kernel import Polynomial, X, falling_factorial, rising_factorial
from Families import FAMILY_IDS, FAMILY_PARAMS, all_families, family, oracle_check, sample_params
from config import TestConfig

os.environ["UMBRAL_CONFIG"] = "Test"
HALF = Fraction(1, 2)


class LookupTestCase(unittest.TestCase):
    def test_registry(self):
        self.assertEqual(len(FAMILY_IDS), 21)
        self.assertEqual(FAMILY_PARAMS["gould_hopper"], ("r", "s"))

    def test_polynomials(self):
        self.assertEqual(family("monomial").p(3), X ** 3)
        self.assertEqual(family("bernoulli").p(1), X - HALF)
        self.assertEqual(family("bernoulli_product").p(2), X ** 2 * 3 - X * 3 + Fraction(7, 12))
        self.assertEqual(family("rising").p(4), rising_factorial(4))
        self.assertEqual(family("falling_deg", {"lambda": HALF}).p(3), falling_factorial(3, HALF))
        self.assertEqual(family("bell").p(2), X ** 2 + X)

    def test_every_family_starts_at_one(self):
        for P in all_families():
            with self.subTest(family=P.label):
                self.assertEqual(P.p(0), Polynomial.constant(1))
                self.assertEqual(P.p(5).degree, 5)

    def test_negative_index(self):
        with self.assertRaises(IndexRangeError):
            family("bell").p(-1)

    def test_bad_parameters(self):
        with self.assertRaises(ParameterError):
            family("catalan")
        with self.assertRaises(ParameterError):
            family("falling_deg")
        with self.assertRaises(ParameterError):
            family("gould_hopper", {"r": 0, "s": 1})
        with self.assertRaises(ParameterError):
            family("poisson_charlier", {"a": 0})
        with self.assertRaises(ParameterError):
            family("bell", {"lambda": HALF})

    def test_cached_instances(self):
        self.assertIs(family("rising_deg", {"lambda": HALF}), family("rising_deg", {"lambda": Fraction(2, 4)}))
        self.assertNotEqual(family("rising_deg", {"lambda": HALF}), family("rising_deg", {"lambda": 2}))
        self.assertEqual(family("gould_hopper", {"r": 2, "s": 3}).label, "gould_hopper[r=2,s=3]")

    def test_sample_params(self):
        self.assertEqual(sample_params("gould_hopper", TestConfig), [{"r": 2, "s": 3}, {"r": 1, "s": -1}])
        self.assertEqual(sample_params("bell", TestConfig), [{}])
        self.assertEqual(len(sample_params("central_deg", TestConfig)), 3)
        with self.assertRaises(ParameterError):
            sample_params("catalan", TestConfig)

    def test_sheffer_pairs(self):
        self.assertIsNone(family("bernoulli_product").sheffer)
        self.assertTrue(family("bell").sheffer.is_associated)
        self.assertFalse(family("euler").sheffer.is_associated)


class ClosedFormTestCase(unittest.TestCase):
    def test_every_sample(self):
        for P in all_families():
            report = oracle_check(P.id, dict(P.params), 6)
            with self.subTest(family=P.label):
                self.assertEqual(report.suite, "closedforms")
                self.assertTrue(report.passed, report.failures())

    def test_mittag_leffler(self):
        report = oracle_check("mittag_leffler", None, 8)
        ids = [check.identity_id for check in report.checks]
        self.assertIn("closedform.s2.scaled_lah", ids)
        self.assertIn("closedform.sheffer_generator", ids)
        self.assertTrue(report.passed, report.failures())

    def test_product_without_pair(self):
        report = oracle_check("bernoulli_product", None, 7)
        ids = [check.identity_id for check in report.checks]
        self.assertNotIn("closedform.sheffer_generator", ids)
        self.assertIn("closedform.product_identity", ids)
        self.assertTrue(report.passed, report.failures())

    def test_scalar_sequences(self):
        for family_id in ("bernoulli", "euler", "bernoulli2nd", "bell"):
            report = oracle_check(family_id, None, 6)
            with self.subTest(family=family_id):
                self.assertTrue(report.passed, report.failures())


if __name__ == "__main__":
    unittest.main()
