import logging
import random
from fractions import Fraction
from functools import lru_cache, partial
from math import factorial
from typing import List, Optional

from config import get_config
from Helpers import (
    IndexRangeError,
    InsufficientOrderError,
    NoShefferPairError,
    NotAssociatedError,
    NotDeltaError,
    ParameterError,
    random_rational_vector,
)
from Kernel import Polynomial, X, binomial, expand_in_basis, falling_factorial, rising_factorial
from Models import AssociatedTriangle, Check, PolynomialFamily, Report
from Numbers import check_index, check_inverse_pair, stirling1, stirling2
from Series import FormalPowerSeries
from Umbral import ShefferPair, functional_apply

logger = logging.getLogger(__name__)

# bound for the row caches keyed by family instance
ROW_CACHE_SIZE = 4096


def _require_pair(P: PolynomialFamily) -> ShefferPair:
    if P.sheffer is None:
        raise NoShefferPairError(f"no Sheffer pair: family {P.label} is not a Sheffer sequence")
    return P.sheffer


@lru_cache(maxsize=ROW_CACHE_SIZE)
def _s2_row(P: PolynomialFamily, n: int):
    # (1/k!) <(e^t - 1)^k | p_n> as a k-th forward difference at 0
    p = P.p(n)
    values = [p(j) for j in range(n + 1)]
    return tuple(
        sum(((-1) ** (k - j) * binomial(k, j) * values[j] for j in range(k + 1)), Fraction(0))
        / factorial(k)
        for k in range(n + 1)
    )


@lru_cache(maxsize=ROW_CACHE_SIZE)
def _s2_explicit_row(P: PolynomialFamily, n: int):
    p = P.p(n)
    return tuple(
        sum((stirling2(l, k) * p.coefficient(l) for l in range(k, n + 1)), Fraction(0))
        for k in range(n + 1)
    )


@lru_cache(maxsize=ROW_CACHE_SIZE)
def _s1_row(P: PolynomialFamily, n: int):
    return tuple(expand_in_basis(falling_factorial(n), P.polys(n)))


@lru_cache(maxsize=ROW_CACHE_SIZE)
def _s1_sheffer_row(P: PolynomialFamily, n: int):
    pair = _require_pair(P)
    target = falling_factorial(n)
    f = pair.f(max(n, 1))
    power = pair.g(n)
    row = []
    for k in range(n + 1):
        row.append(functional_apply(power, target) / factorial(k))
        power = power * f
    return tuple(row)


def s2_assoc(P: PolynomialFamily, n: int, k: int) -> Fraction:
    """p_n = sum_k S2(n, k; P) (x)_k"""
    check_index(n, k)
    return _s2_row(P, n)[k]


def s2_assoc_explicit(P: PolynomialFamily, n: int, k: int) -> Fraction:
    check_index(n, k)
    return _s2_explicit_row(P, n)[k]


def s1_assoc(P: PolynomialFamily, n: int, k: int) -> Fraction:
    """(x)_n = sum_k S1(n, k; P) p_k, by triangular solve."""
    check_index(n, k)
    return _s1_row(P, n)[k]


def s1_assoc_sheffer(P: PolynomialFamily, n: int, k: int) -> Fraction:
    check_index(n, k)
    return _s1_sheffer_row(P, n)[k]


def s2_zero_outside(P: PolynomialFamily, n: int, k: int) -> Fraction:
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    return s2_assoc(P, n, k)


def s1_zero_outside(P: PolynomialFamily, n: int, k: int) -> Fraction:
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    return s1_assoc(P, n, k)


def associated_triangle(P: PolynomialFamily, kind: str, max_n: int) -> AssociatedTriangle:
    if max_n < 0:
        raise IndexRangeError(f"max_n must be nonnegative, got {max_n}")
    if kind not in ("first", "second"):
        raise ParameterError(f"Unknown kind '{kind}', expected first or second")
    func = s2_assoc if kind == "second" else s1_assoc
    rows = [[func(P, n, k) for k in range(n + 1)] for n in range(max_n + 1)]
    return AssociatedTriangle(P.id, kind, rows, P.params)


# ------------------------------------------------------ generating functions

def _check_column(k: int):
    if k < 0:
        raise IndexRangeError(f"Column index must be nonnegative, got {k}")


def s2_assoc_gf(P: PolynomialFamily, k: int, N: int) -> FormalPowerSeries:
    """(1/g(fbar)) (1/k!) (e^{fbar} - 1)^k"""
    _check_column(k)
    pair = _require_pair(P)
    fbar = pair.fbar(N)
    ginv = pair.g(N).compose(fbar).inverse()
    return ginv * (fbar.exp() - 1).pow_int(k) / factorial(k)


def s1_assoc_gf(P: PolynomialFamily, k: int, N: int) -> FormalPowerSeries:
    """(1/k!) (f(log(1 + t)))^k, for sequences associated to f."""
    _check_column(k)
    pair = _require_pair(P)
    if not pair.is_associated:
        raise NotAssociatedError(
            f"{P.label} is Sheffer for a pair with g != 1; no first-kind generating function"
        )
    return log_associated(pair.f(N), N).pow_int(k) / factorial(k)


def _delta_to_order(f: FormalPowerSeries, N: int) -> FormalPowerSeries:
    if not f.is_delta():
        raise NotDeltaError("Associated logarithm and exponential need a delta series")
    if f.trunc_order < N:
        raise InsufficientOrderError(f"insufficient order: series of order {f.trunc_order}, need {N}")
    return f.truncate(N)


def log_associated(f: FormalPowerSeries, N: int) -> FormalPowerSeries:
    """L_f t = f(log(1 + t))"""
    return _delta_to_order(f, N).compose(FormalPowerSeries.log1p_series(N))


def exp_associated(f: FormalPowerSeries, N: int) -> FormalPowerSeries:
    """E_f t = e^{fbar(t)} - 1"""
    return _delta_to_order(f, N).revert().exp() - 1


def bar_transform(P: PolynomialFamily) -> PolynomialFamily:
    """pbar_0 = 1, pbar_n = x p_{n-1}"""

    def generator(n):
        if n == 0:
            return Polynomial.constant(1)
        return X * P.p(n - 1)

    return PolynomialFamily(f"bar({P.id})", generator, P.params)


# ------------------------------------------------------------------ checks

def check_s2_routes(P: PolynomialFamily, N: int) -> Check:
    return Check.compare(
        "associated.s2_difference_vs_explicit", (0, N),
        ((n, k, s2_assoc(P, n, k), s2_assoc_explicit(P, n, k))
         for n in range(N + 1) for k in range(n + 1)),
    )


def check_s1_routes(P: PolynomialFamily, N: int) -> Check:
    if P.sheffer is None:
        return Check.skipped("associated.s1_solve_vs_functional", (0, N), "no Sheffer pair")
    return Check.compare(
        "associated.s1_solve_vs_functional", (0, N),
        ((n, k, s1_assoc(P, n, k), s1_assoc_sheffer(P, n, k))
         for n in range(N + 1) for k in range(n + 1)),
    )


def check_gf_routes(P: PolynomialFamily, N: int) -> List[Check]:
    if P.sheffer is None:
        return [
            Check.skipped("associated.s2_generating_function", (0, N), "no Sheffer pair"),
            Check.skipped("associated.s1_generating_function", (0, N), "no Sheffer pair"),
        ]

    def s2_comparisons():
        for k in range(N + 1):
            gf = s2_assoc_gf(P, k, N)
            for n in range(k, N + 1):
                yield n, k, s2_assoc(P, n, k), gf.egf_coefficient(n)

    checks = [Check.compare("associated.s2_generating_function", (0, N), s2_comparisons())]
    if not P.sheffer.is_associated:
        checks.append(Check.skipped("associated.s1_generating_function", (0, N), "g != 1"))
        return checks

    def s1_comparisons():
        for k in range(N + 1):
            gf = s1_assoc_gf(P, k, N)
            for n in range(k, N + 1):
                yield n, k, s1_assoc(P, n, k), gf.egf_coefficient(n)

    checks.append(Check.compare("associated.s1_generating_function", (0, N), s1_comparisons()))
    return checks


def check_bar_recurrences(P: PolynomialFamily, N: int) -> List[Check]:
    bar = bar_transform(P)

    def second_kind():
        for n in range(N):
            for k in range(n + 2):
                expected = s2_zero_outside(P, n, k - 1) + k * s2_zero_outside(P, n, k)
                yield n + 1, k, expected, s2_assoc(bar, n + 1, k)

    def first_kind():
        # mixes P and its bar transform on the right-hand side
        for n in range(N):
            for k in range(n + 2):
                expected = s1_zero_outside(P, n, k - 1) - n * s1_zero_outside(bar, n, k)
                yield n + 1, k, expected, s1_assoc(bar, n + 1, k)

    return [
        Check.compare("associated.s2_bar_recurrence", (1, N), second_kind()),
        Check.compare("associated.s1_bar_recurrence", (1, N), first_kind()),
    ]


def check_reconstruction(P: PolynomialFamily, N: int) -> List[Check]:
    return [
        Check.compare(
            "associated.s2_reconstructs_family", (0, N),
            ((n, None, P.p(n),
              sum((falling_factorial(k) * s2_assoc(P, n, k) for k in range(n + 1)), Polynomial()))
             for n in range(N + 1)),
        ),
        Check.compare(
            "associated.s1_reconstructs_falling_factorial", (0, N),
            ((n, None, falling_factorial(n),
              sum((P.p(k) * s1_assoc(P, n, k) for k in range(n + 1)), Polynomial()))
             for n in range(N + 1)),
        ),
    ]


def check_sign_reflection(P: PolynomialFamily, N: int) -> List[Check]:
    """(-1)^n sum_k S1(n,k;P) p_k(-x) = <x>_n, and its value n! at x = 1."""

    def polynomial_form():
        for n in range(N + 1):
            got = sum((P.p(k).dilate(-1) * s1_assoc(P, n, k) for k in range(n + 1)), Polynomial())
            yield n, None, rising_factorial(n), got * (-1) ** n

    def scalar_form():
        for n in range(N + 1):
            got = sum((s1_assoc(P, n, k) * P.p(k)(-1) for k in range(n + 1)), Fraction(0))
            yield n, None, Fraction(factorial(n)), got * (-1) ** n

    return [
        Check.compare("associated.s1_reflection_polynomial", (0, N), polynomial_form()),
        Check.compare("associated.s1_reflection_factorial", (0, N), scalar_form()),
    ]


def monomial_coefficient_roundtrip(P: PolynomialFamily, n: int) -> Check:
    """p_{n,l} = sum_{k=l}^n S1(k, l) S2(n, k; P)"""
    p = P.p(n)
    return Check.compare(
        "associated.monomial_coefficient_roundtrip", (n, n),
        ((n, l, p.coefficient(l),
          sum((stirling1(k, l) * s2_assoc(P, n, k) for k in range(l, n + 1)), Fraction(0)))
         for l in range(n + 1)),
    )


def check_log_exp_inverse(f: FormalPowerSeries, N: int, identity_id: str = "associated.log_exp_inverse") -> Check:
    log_f = log_associated(f, N)
    exp_f = exp_associated(f, N)
    t = FormalPowerSeries.t(N)
    return Check.compare(identity_id, (0, N), [
        (N, None, t, log_f.compose(exp_f)),
        (N, None, t, exp_f.compose(log_f)),
    ])


def _inverse_relation_checks(P: PolynomialFamily, N: int, rng: random.Random, vectors: int) -> List[Check]:
    S2 = partial(s2_zero_outside, P)
    S1 = partial(s1_zero_outside, P)

    def rows():
        for trial in range(vectors):
            for forward, backward in ((S2, S1), (S1, S2)):
                c = random_rational_vector(rng, N + 1)
                a = [sum((forward(n, k) * c[k] for k in range(n + 1)), Fraction(0)) for n in range(N + 1)]
                back = [sum((backward(n, k) * a[k] for k in range(n + 1)), Fraction(0)) for n in range(N + 1)]
                yield trial, None, c, back

    def columns():
        for trial in range(vectors):
            for forward, backward in ((S2, S1), (S1, S2)):
                c = random_rational_vector(rng, N + 1)
                a = [sum((forward(k, n) * c[k] for k in range(n, N + 1)), Fraction(0)) for n in range(N + 1)]
                back = [sum((backward(k, n) * a[k] for k in range(n, N + 1)), Fraction(0)) for n in range(N + 1)]
                yield trial, None, c, back

    return [
        Check.compare("associated.inverse_relation_rows", (0, N), rows()),
        Check.compare("associated.inverse_relation_columns", (0, N), columns()),
    ]


def verify_orthogonality(P: PolynomialFamily, N: int, rng: Optional[random.Random] = None,
                         vectors: Optional[int] = None) -> Report:
    if N < 0:
        raise ParameterError(f"max_n must be nonnegative, got {N}")
    cfg = get_config()
    rng = rng if rng is not None else random.Random(cfg.RANDOM_SEED)
    vectors = cfg.RANDOM_VECTORS if vectors is None else vectors
    logger.debug("orthogonality %s up to n=%d", P.label, N)
    checks = [
        check_inverse_pair("associated.orthogonality", partial(s1_assoc, P), partial(s2_assoc, P), N),
    ]
    checks += _inverse_relation_checks(P, N, rng, vectors)
    return Report(suite="orthogonality", family=P.label, checks=checks)
