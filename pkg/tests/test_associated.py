import unittest
import os, sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from fractions import Fraction

from Helpers import IndexRangeError, NoShefferPairError, NotAssociatedError, ParameterError
from Kernel import Polynomial, X, binomial
from Models import AssociatedTriangle
from Associated import (ROW_CACHE_SIZE, _s1_row, _s2_row, associated_triangle, bar_transform,
                        check_bar_recurrences, check_gf_routes, check_log_exp_inverse, check_reconstruction,
                        check_s1_routes, check_s2_routes, check_sign_reflection, exp_associated, log_associated,
                        monomial_coefficient_roundtrip, s1_assoc, s1_assoc_gf, s1_assoc_sheffer,
                        s2_assoc, s2_assoc_explicit, s2_assoc_gf, s2_zero_outside, verify_orthogonality)
from Eulerian import _assoc_row
from Families import all_families, family
from Numbers import lah, stirling1, stirling2
from Series import FormalPowerSeries

os.environ["UMBRAL_CONFIG"] = "Test"
HALF = Fraction(1, 2)


class EntryTestCase(unittest.TestCase):
    def test_monomial_gives_classical_triangles(self):
        P = family("monomial")
        for n in range(6):
            for k in range(n + 1):
                self.assertEqual(s2_assoc(P, n, k), stirling2(n, k))
                self.assertEqual(s1_assoc(P, n, k), stirling1(n, k))

    def test_spot_values(self):
        self.assertEqual(s2_assoc(family("monomial"), 4, 2), 7)
        self.assertEqual(s1_assoc(family("rising"), 3, 2), -6)
        self.assertEqual(s2_assoc(family("mittag_leffler"), 1, 1), 2)
        self.assertEqual(s2_assoc(family("falling_deg", {"lambda": HALF}), 2, 1), HALF)
        self.assertEqual(s2_assoc(family("rising"), 3, 2), lah(3, 2))

    def test_routes(self):
        P = family("bernoulli")
        self.assertEqual(s2_assoc(P, 5, 2), s2_assoc_explicit(P, 5, 2))
        self.assertEqual(s1_assoc(P, 5, 2), s1_assoc_sheffer(P, 5, 2))

    def test_index_range(self):
        with self.assertRaises(IndexRangeError):
            s2_assoc(family("bell"), 2, 3)
        self.assertEqual(s2_zero_outside(family("bell"), 2, 3), 0)

    def test_triangle(self):
        triangle = associated_triangle(family("bell"), "second", 4)
        self.assertIsInstance(triangle, AssociatedTriangle)
        self.assertEqual(triangle.entry(3, 2), s2_assoc(family("bell"), 3, 2))
        self.assertEqual(triangle.kind, "second")

    def test_triangle_arguments(self):
        with self.assertRaises(IndexRangeError):
            associated_triangle(family("bell"), "first", -1)
        with self.assertRaises(ParameterError):
            associated_triangle(family("bell"), "third", 3)
        self.assertEqual(associated_triangle(family("bell"), "first", 0).rows, ((1,),))

    def test_row_caches_are_bounded(self):
        for cached in (_s2_row, _s1_row, _assoc_row):
            self.assertEqual(cached.cache_info().maxsize, ROW_CACHE_SIZE)


class GeneratingFunctionTestCase(unittest.TestCase):
    def test_poisson_charlier_column(self):
        P = family("poisson_charlier", {"a": HALF})
        gf = s2_assoc_gf(P, 1, 6)
        for n in range(1, 7):
            self.assertEqual(gf.egf_coefficient(n), binomial(n, 1) * (-1) ** (n - 1) * 2)

    def test_first_kind_column(self):
        gf = s1_assoc_gf(family("monomial"), 1, 4)
        self.assertEqual(gf.egf_coefficients(), [0, 1, -1, 2, -6])

    def test_constraints(self):
        with self.assertRaises(NotAssociatedError):
            s1_assoc_gf(family("bernoulli"), 1, 4)
        with self.assertRaises(NoShefferPairError):
            s2_assoc_gf(family("bernoulli_product"), 1, 4)
        for gf in (s2_assoc_gf, s1_assoc_gf):
            with self.assertRaises(IndexRangeError):
                gf(family("bell"), -1, 4)

    def test_log_and_exp_associated(self):
        N = 6
        t = FormalPowerSeries.t(N)
        self.assertEqual(log_associated(t, N), FormalPowerSeries.log1p_series(N))
        self.assertEqual(exp_associated(t, N), FormalPowerSeries.exp_series(N) - 1)
        self.assertEqual(check_log_exp_inverse(FormalPowerSeries.exp_series(N) - 1, N).status, "pass")


class BarTransformTestCase(unittest.TestCase):
    def test_bar_family(self):
        bar = bar_transform(family("bernoulli"))
        self.assertEqual(bar.p(0), Polynomial.constant(1))
        self.assertEqual(bar.p(2), X * (X - HALF))
        self.assertEqual(bar.id, "bar(bernoulli)")


class IdentitySuiteTestCase(unittest.TestCase):
    N = 6

    def assertAllPass(self, checks, label):
        for check in checks:
            with self.subTest(family=label, identity=check.identity_id):
                self.assertNotEqual(check.status, "fail", check.first_failure)

    def test_every_family(self):
        for P in all_families():
            checks = [check_s2_routes(P, self.N), check_s1_routes(P, self.N)]
            checks += check_gf_routes(P, self.N)
            checks += check_bar_recurrences(P, self.N)
            checks += check_reconstruction(P, self.N)
            checks += check_sign_reflection(P, self.N)
            checks.append(monomial_coefficient_roundtrip(P, self.N))
            self.assertAllPass(checks, P.label)

    def test_skips_without_pair(self):
        P = family("bernoulli_product")
        self.assertEqual(check_s1_routes(P, 4).status, "skipped")
        self.assertEqual([c.status for c in check_gf_routes(P, 4)], ["skipped", "skipped"])
        reasons = [c.reason for c in check_gf_routes(family("euler"), 4)]
        self.assertEqual(reasons[1], "g != 1")

    def test_orthogonality(self):
        report = verify_orthogonality(family("bernoulli_product"), 8)
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.suite, "orthogonality")
        for P in all_families():
            with self.subTest(family=P.label):
                report = verify_orthogonality(P, self.N)
                self.assertTrue(report.passed, report.failures())


if __name__ == "__main__":
    unittest.main()
