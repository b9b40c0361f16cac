import random
from fractions import Fraction
from math import comb, factorial
from threading import Lock
from typing import Callable, Dict, List, Optional, Tuple

from Helpers import InsufficientOrderError, NotDeltaError, NotInvertibleError, random_rational
from Kernel import Polynomial, X
from Models import Check
from Series import FormalPowerSeries, PolynomialSeries

SeriesGenerator = Callable[[int], FormalPowerSeries]

# (x, y) sample points for two-variable polynomial identities
BINOMIAL_POINTS = (
    (Fraction(1, 2), Fraction(3)),
    (Fraction(-2), Fraction(1, 3)),
    (Fraction(5, 7), Fraction(-4, 3)),
    (Fraction(2), Fraction(2)),
    (Fraction(-1, 5), Fraction(7, 2)),
)


class ShefferPair:
    """
    (g, f) with g invertible and f a delta series. Each component is a
    generator order -> series. g_gen None stands for g = 1.
    """

    def __init__(self, f_gen: SeriesGenerator, g_gen: Optional[SeriesGenerator] = None,
                 fbar_gen: Optional[SeriesGenerator] = None, name: str = ""):
        self.f_gen = f_gen
        self.g_gen = g_gen
        self.fbar_gen = fbar_gen
        self.name = name
        self._cache: Dict[Tuple[str, int], FormalPowerSeries] = {}
        self._lock = Lock()

    @property
    def is_associated(self) -> bool:
        return self.g_gen is None

    def _cached(self, component: str, order: int, build: Callable[[], FormalPowerSeries]) -> FormalPowerSeries:
        key = (component, order)
        with self._lock:
            series = self._cache.get(key)
        if series is None:
            series = build()
            with self._lock:
                self._cache[key] = series
        return series

    def f(self, order: int) -> FormalPowerSeries:
        def build():
            series = self.f_gen(order)
            if not series.is_delta():
                raise NotDeltaError(f"{self.name}: f is not a delta series")
            return series
        return self._cached("f", order, build)

    def g(self, order: int) -> FormalPowerSeries:
        if self.g_gen is None:
            return FormalPowerSeries.one(order)

        def build():
            series = self.g_gen(order)
            if series.coefficient(0) == 0:
                raise NotInvertibleError(f"{self.name}: g is not invertible")
            return series
        return self._cached("g", order, build)

    def fbar(self, order: int) -> FormalPowerSeries:
        if self.fbar_gen is not None:
            return self._cached("fbar", order, lambda: self.fbar_gen(order))
        return self._cached("fbar", order, lambda: self.f(order).revert())

    def __repr__(self):
        return f"ShefferPair({self.name})"


def functional_apply(f: FormalPowerSeries, p: Polynomial) -> Fraction:
    """<f(t) | p(x)> = sum_k k! [t^k]f * [x^k]p"""
    if p.is_zero():
        return Fraction(0)
    if f.trunc_order < p.degree:
        raise InsufficientOrderError(
            f"insufficient order: series of order {f.trunc_order} applied to degree {p.degree}"
        )
    return sum((f.coeffs[k] * factorial(k) * c for k, c in enumerate(p.coeffs)), Fraction(0))


def operator_apply(f: FormalPowerSeries, p: Polynomial) -> Polynomial:
    """f(t) p(x) = sum_k [t^k]f * p^{(k)}(x)"""
    if p.is_zero():
        return p
    if f.trunc_order < p.degree:
        raise InsufficientOrderError(
            f"insufficient order: series of order {f.trunc_order} applied to degree {p.degree}"
        )
    result = Polynomial()
    derivative = p
    for k in range(p.degree + 1):
        if f.coeffs[k]:
            result = result + derivative * f.coeffs[k]
        derivative = derivative.derivative()
    return result


def sheffer_polys(pair: ShefferPair, N: int) -> List[Polynomial]:
    """s_0..s_N from the generating function e^{x fbar(t)} / g(fbar(t))."""
    fbar = pair.fbar(N)
    ginv = pair.g(N).compose(fbar).inverse()
    exponential = PolynomialSeries((Polynomial.constant(1),), N)
    power = FormalPowerSeries.one(N)
    for j in range(1, N + 1):
        power = power * fbar
        exponential = exponential + PolynomialSeries.from_series(
            power, lambda n, j=j: Polynomial.monomial(j, Fraction(1, factorial(j)))
        )
    generating = exponential * ginv
    return [generating.egf_coefficient(n) for n in range(N + 1)]


def sheffer_polys_recurrence(pair: ShefferPair, N: int) -> List[Polynomial]:
    """s_{n+1} = (x - g'(t)/g(t)) (1/f'(t)) s_n"""
    g = pair.g(N + 1)
    f = pair.f(N + 1)
    log_derivative = g.derivative() / g.truncate(N)
    lowering_inverse = f.derivative().inverse()
    polys = [Polynomial.constant(1 / g.coefficient(0))]
    for _ in range(N):
        u = operator_apply(lowering_inverse, polys[-1])
        polys.append(X * u - operator_apply(log_derivative, u))
    return polys


def sheffer_polys_transfer(pair: ShefferPair, N: int) -> List[Polynomial]:
    """s_n = sum_j (1/j!) <fbar^j / g(fbar) | x^n> x^j"""
    fbar = pair.fbar(N)
    ginv = pair.g(N).compose(fbar).inverse()
    columns = []
    term = ginv
    for j in range(N + 1):
        columns.append(term)
        term = term * fbar
    return [
        Polynomial(factorial(n) * columns[j].coefficient(n) / factorial(j) for j in range(n + 1))
        for n in range(N + 1)
    ]


def expand_in_sheffer(p: Polynomial, pair: ShefferPair) -> List[Fraction]:
    """c_k = (1/k!) <g f^k | p>, so that p = sum c_k s_k."""
    if p.is_zero():
        return []
    n = p.degree
    g = pair.g(n)
    f = pair.f(max(n, 1))
    coeffs = []
    power = g
    for k in range(n + 1):
        coeffs.append(functional_apply(power, p) / factorial(k))
        power = power * f
    return coeffs


# ---------------------------------------------------------------- identities


def check_generators_agree(pair: ShefferPair, N: int) -> List[Check]:
    polys = sheffer_polys(pair, N)
    recurrence = sheffer_polys_recurrence(pair, N)
    transfer = sheffer_polys_transfer(pair, N)
    return [
        Check.compare("umbral.recurrence_generator", (0, N),
                      ((n, None, polys[n], recurrence[n]) for n in range(N + 1))),
        Check.compare("umbral.transfer_generator", (0, N),
                      ((n, None, polys[n], transfer[n]) for n in range(N + 1))),
    ]


def check_biorthogonality(pair: ShefferPair, N: int) -> Check:
    polys = sheffer_polys(pair, N)
    g = pair.g(N)
    f = pair.f(N)

    def comparisons():
        power = g
        for k in range(N + 1):
            for n in range(N + 1):
                expected = factorial(n) if n == k else 0
                yield n, k, Fraction(expected), functional_apply(power, polys[n])
            power = power * f

    return Check.compare("umbral.biorthogonality", (0, N), comparisons())


def check_lowering(pair: ShefferPair, N: int) -> Check:
    polys = sheffer_polys(pair, N)
    f = pair.f(N)
    return Check.compare(
        "umbral.lowering", (1, N),
        ((n, None, polys[n - 1] * n, operator_apply(f, polys[n])) for n in range(1, N + 1)),
    )


def check_binomial_identity(pair: ShefferPair, N: int, points=BINOMIAL_POINTS) -> Check:
    polys = sheffer_polys(pair, N)
    g = pair.g(N)
    associated = [operator_apply(g, s) for s in polys]

    def comparisons():
        for n in range(N + 1):
            for x, y in points:
                got = sum(
                    (comb(n, j) * polys[j](x) * associated[n - j](y) for j in range(n + 1)),
                    Fraction(0),
                )
                yield n, None, polys[n](x + y), got

    return Check.compare("umbral.binomial_type", (0, N), comparisons())


def check_associated_transfer(pair: ShefferPair, N: int) -> Check:
    """s_n = g(t)^{-1} q_n where q_n is associated to the same f."""
    polys = sheffer_polys(pair, N)
    associated = sheffer_polys(ShefferPair(pair.f_gen, None, pair.fbar_gen, pair.name), N)
    ginv = pair.g(N).inverse()
    return Check.compare(
        "umbral.associated_transfer", (0, N),
        ((n, None, polys[n], operator_apply(ginv, associated[n])) for n in range(N + 1)),
    )


def check_scaling(rng: random.Random, trials: int = 5, degree: int = 6) -> Check:
    """<h(a t) | p(x)> = <h(t) | p(a x)> for random h, p, a."""

    def comparisons():
        for trial in range(trials):
            h = FormalPowerSeries([random_rational(rng) for _ in range(degree + 1)], degree)
            p = Polynomial(random_rational(rng) for _ in range(degree + 1))
            a = random_rational(rng)
            yield trial, None, functional_apply(h, p.dilate(a)), functional_apply(h.scale(a), p)

    return Check.compare("umbral.scaling", (0, trials - 1), comparisons())
