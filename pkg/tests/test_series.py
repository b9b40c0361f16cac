import unittest
import os, sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from fractions import Fraction

from hypothesis import assume, given, settings, strategies as st

from Helpers import InsufficientOrderError, NotDeltaError, NotInvertibleError, OrderUnderflowError
from Kernel import Polynomial, X
from Series import (FormalPowerSeries, PolynomialSeries, central_delta, central_delta_inverse,
                    degenerate_exp, degenerate_log, expm1_lambda, log1p_lambda, scaled_central_delta,
                    scaled_central_delta_inverse, sqrt_t_squared_plus_four)

ORDER = 8
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def delta_series(draw, order=ORDER):
    linear = draw(fractions.filter(lambda c: c != 0))
    tail = draw(st.lists(fractions, min_size=order - 1, max_size=order - 1))
    return FormalPowerSeries([0, linear] + tail, order)


class ArithmeticTestCase(unittest.TestCase):
    def test_exp_and_log_coefficients(self):
        self.assertEqual(FormalPowerSeries.exp_series(4).egf_coefficients(), [1, 1, 1, 1, 1])
        self.assertEqual(FormalPowerSeries.log1p_series(4).coefficient(3), Fraction(1, 3))

    def test_truncation_order(self):
        series = FormalPowerSeries.exp_series(4)
        self.assertEqual(len(series.coeffs), 5)
        with self.assertRaises(InsufficientOrderError):
            series.coefficient(5)
        self.assertEqual((series * FormalPowerSeries.one(2)).trunc_order, 2)

    def test_division_shifts_by_valuation(self):
        t = FormalPowerSeries.t(ORDER)
        quotient = (t * t) / t
        self.assertEqual(quotient, FormalPowerSeries.t(ORDER - 1))
        with self.assertRaises(OrderUnderflowError):
            t / (t * t)
        with self.assertRaises(NotInvertibleError):
            t / FormalPowerSeries.zero(ORDER)

    def test_inverse(self):
        e = FormalPowerSeries.exp_series(ORDER)
        self.assertEqual(e * e.inverse(), FormalPowerSeries.one(ORDER))
        self.assertEqual(e.inverse(), FormalPowerSeries.exp_series(ORDER, -1))
        with self.assertRaises(NotInvertibleError):
            FormalPowerSeries.t(ORDER).inverse()

    def test_compose_needs_delta_inner(self):
        e = FormalPowerSeries.exp_series(ORDER)
        with self.assertRaises(NotDeltaError):
            e.compose(e)

    def test_exp_of_log(self):
        series = FormalPowerSeries.log1p_series(ORDER)
        self.assertEqual(series.exp(), 1 + FormalPowerSeries.t(ORDER))

    def test_immutable(self):
        with self.assertRaises(AttributeError):
            FormalPowerSeries.t(3).coeffs = ()


class ReversionTestCase(unittest.TestCase):
    def test_expm1_reverts_to_log1p(self):
        self.assertEqual(expm1_lambda(1, ORDER).revert(), FormalPowerSeries.log1p_series(ORDER))

    def test_revert_needs_delta(self):
        with self.assertRaises(NotDeltaError):
            FormalPowerSeries.exp_series(ORDER).revert()

    def test_closed_form_inverses(self):
        t = FormalPowerSeries.t(ORDER)
        self.assertEqual(central_delta(ORDER).compose(central_delta_inverse(ORDER)), t)
        for lam in (Fraction(1, 2), Fraction(-1, 3), 2, 0):
            with self.subTest(lam=lam):
                self.assertEqual(expm1_lambda(lam, ORDER).compose(log1p_lambda(lam, ORDER)), t)
                self.assertEqual(
                    scaled_central_delta(lam, ORDER).compose(scaled_central_delta_inverse(lam, ORDER)), t)
        for lam in (Fraction(1, 2), Fraction(-1, 3), 2):
            with self.subTest(lam=lam):
                self.assertEqual(degenerate_log(lam, ORDER).compose(degenerate_exp(lam, ORDER) - 1), t)

    def test_degenerations_at_zero(self):
        t = FormalPowerSeries.t(ORDER)
        self.assertEqual(expm1_lambda(0, ORDER), t)
        self.assertEqual(scaled_central_delta(0, ORDER), t)

    def test_square_root_identity(self):
        sqrt = sqrt_t_squared_plus_four(ORDER)
        t = FormalPowerSeries.t(ORDER)
        self.assertEqual(sqrt * sqrt, FormalPowerSeries((4, 0, 1), ORDER))
        self.assertEqual(((t + sqrt) / 2).log() * 2, central_delta_inverse(ORDER))

    @settings(max_examples=20, deadline=None)
    @given(delta_series())
    def test_random_reversion(self, f):
        t = FormalPowerSeries.t(ORDER)
        fbar = f.revert()
        self.assertEqual(f.compose(fbar), t)
        self.assertEqual(fbar.compose(f), t)

    @settings(max_examples=20, deadline=None)
    @given(delta_series(), fractions, fractions)
    def test_rational_powers_add(self, f, a, b):
        u = 1 + f
        self.assertEqual(u.pow_rational(a) * u.pow_rational(b), u.pow_rational(a + b))

    @settings(max_examples=20, deadline=None)
    @given(delta_series())
    def test_log_inverts_exp(self, f):
        self.assertEqual(f.exp().log(), f)


class PolynomialSeriesTestCase(unittest.TestCase):
    def test_exponential_generating_function(self):
        # e^{x t} has t^n/n! coefficient x^n
        e = FormalPowerSeries.exp_series(5)
        series = PolynomialSeries.from_series(e, lambda n: X ** n)
        self.assertEqual(series.egf_coefficient(3), X ** 3)

    def test_geometric(self):
        series = PolynomialSeries([0, X], 4)
        self.assertEqual(series.geometric().coefficient(3), X ** 3)
        with self.assertRaises(NotDeltaError):
            PolynomialSeries([1, X], 4).geometric()

    def test_mixed_products(self):
        series = PolynomialSeries([X, 1], 3)
        product = series * FormalPowerSeries.t(3)
        self.assertEqual(product.coefficient(1), X)
        self.assertEqual((series * X).coefficient(0), X ** 2)
        self.assertEqual((series * Fraction(1, 2)).coefficient(1), Polynomial.constant(Fraction(1, 2)))


if __name__ == "__main__":
    unittest.main()
