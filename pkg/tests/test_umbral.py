import unittest
import os, sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import random
from fractions import Fraction

from Helpers import InsufficientOrderError, NotDeltaError, NotInvertibleError
from Kernel import Polynomial, X
from Families import all_families, family
from Series import FormalPowerSeries
from Umbral import (ShefferPair, check_associated_transfer, check_binomial_identity, check_biorthogonality,
                    check_generators_agree, check_lowering, check_scaling, expand_in_sheffer,
                    functional_apply, operator_apply, sheffer_polys)

os.environ["UMBRAL_CONFIG"] = "Test"


def sheffer_families():
    return [P for P in all_families() if P.sheffer is not None]


class FunctionalTestCase(unittest.TestCase):
    def test_functional_apply(self):
        # <e^{a t} | p> = p(a)
        self.assertEqual(functional_apply(FormalPowerSeries.exp_series(5, 2), X ** 3), 8)
        self.assertEqual(functional_apply(FormalPowerSeries.t(3), X ** 2), 0)
        self.assertEqual(functional_apply(FormalPowerSeries.t(3), X), 1)

    def test_operator_apply(self):
        self.assertEqual(operator_apply(FormalPowerSeries.t(3), X ** 3), X ** 2 * 3)
        shift = FormalPowerSeries.exp_series(4)
        self.assertEqual(operator_apply(shift, X ** 2), (X + 1) ** 2)

    def test_insufficient_order(self):
        with self.assertRaises(InsufficientOrderError):
            functional_apply(FormalPowerSeries.t(2), X ** 3)
        with self.assertRaises(InsufficientOrderError):
            operator_apply(FormalPowerSeries.t(2), X ** 3)

    def test_scaling(self):
        self.assertEqual(check_scaling(random.Random(7)).status, "pass")


class ShefferPairTestCase(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(NotDeltaError):
            ShefferPair(FormalPowerSeries.exp_series, name="bad").f(4)
        with self.assertRaises(NotInvertibleError):
            ShefferPair(FormalPowerSeries.t, FormalPowerSeries.t, name="bad").g(4)

    def test_components_cached_per_pair(self):
        calls = []

        def expm1(N):
            calls.append(N)
            return FormalPowerSeries.exp_series(N) - 1

        pair, other = ShefferPair(expm1, name="a"), ShefferPair(expm1, name="b")
        self.assertIs(pair.f(5), pair.f(5))
        pair.fbar(5)
        other.f(5)
        self.assertEqual(calls, [5, 5])
        self.assertEqual(pair.fbar(5), FormalPowerSeries.log1p_series(5))

    def test_reversion_fallback(self):
        pair = ShefferPair(lambda N: FormalPowerSeries.exp_series(N) - 1)
        self.assertEqual(pair.fbar(6), FormalPowerSeries.log1p_series(6))
        self.assertTrue(pair.is_associated)

    def test_bernoulli_polynomials(self):
        polys = sheffer_polys(family("bernoulli").sheffer, 2)
        self.assertEqual(polys[1], X - Fraction(1, 2))
        self.assertEqual(polys[2], X ** 2 - X + Fraction(1, 6))

    def test_touchard_polynomials(self):
        polys = sheffer_polys(family("bell").sheffer, 3)
        self.assertEqual(polys[3], X ** 3 + X ** 2 * 3 + X)

    def test_expand_in_sheffer(self):
        pair = family("euler").sheffer
        p = X ** 4 - X * 2 + 3
        coeffs = expand_in_sheffer(p, pair)
        polys = sheffer_polys(pair, 4)
        self.assertEqual(sum((polys[k] * c for k, c in enumerate(coeffs)), Polynomial()), p)


class UmbralIdentitiesTestCase(unittest.TestCase):
    N = 7

    def test_generators_agree(self):
        for P in sheffer_families():
            for check in check_generators_agree(P.sheffer, self.N):
                with self.subTest(family=P.label, identity=check.identity_id):
                    self.assertEqual(check.status, "pass", check.first_failure)

    def test_sheffer_identities(self):
        for P in sheffer_families():
            pair = P.sheffer
            for check in (check_biorthogonality(pair, self.N), check_lowering(pair, self.N),
                          check_binomial_identity(pair, self.N), check_associated_transfer(pair, self.N)):
                with self.subTest(family=P.label, identity=check.identity_id):
                    self.assertEqual(check.status, "pass", check.first_failure)


if __name__ == "__main__":
    unittest.main()
