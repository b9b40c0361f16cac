import logging
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import List, Optional

from config import get_config
from Helpers import (
    FrobeniusHypothesisError,
    IndexRangeError,
    NoShefferPairError,
    OracleLimitError,
    ParameterError,
    SymmetryPreconditionError,
)
from Kernel import Polynomial, X, binomial, poly_binomial
from Models import Check, EulerianTable, PolynomialFamily
from Associated import ROW_CACHE_SIZE, s2_assoc, s2_zero_outside, bar_transform
from Numbers import check_index, stirling2
from Series import FormalPowerSeries, PolynomialSeries

logger = logging.getLogger(__name__)

ONE_MINUS_X = Polynomial((1, -1))

# P = None throughout means the classical sequence p_n = x^n


def _p(P: Optional[PolynomialFamily], n: int) -> Polynomial:
    return Polynomial.monomial(n) if P is None else P.p(n)


def _label(P: Optional[PolynomialFamily]) -> str:
    return "classical" if P is None else P.label


# ------------------------------------------------------------------ classical

@lru_cache(maxsize=None)
def _classical_row(n: int):
    # padded: A_{n,n} = 0 for n >= 1
    if n == 0:
        return (1,)
    prev = _classical_row(n - 1) + (0,)
    return tuple(
        (k + 1) * prev[k] + (n - k) * (prev[k - 1] if k else 0) for k in range(n + 1)
    )


def eulerian_classical(n: int, k: int) -> Fraction:
    check_index(n, k)
    return Fraction(_classical_row(n)[k])


def eulerian_explicit(n: int, k: int) -> Fraction:
    check_index(n, k)
    return Fraction(sum((-1) ** i * (k + 1 - i) ** n * binomial(n + 1, i) for i in range(k + 1)))


def eulerian_classical_poly(n: int) -> Polynomial:
    return Polynomial(_classical_row(n))


@lru_cache(maxsize=None)
def eulerian_descent_row(n: int):
    limit = get_config().ORACLE_LIMIT
    if n < 1 or n > limit:
        raise OracleLimitError(f"oracle limit: descent enumeration needs 1 <= n <= {limit}, got {n}")
    counts = [0] * (n + 1)
    for sigma in permutations(range(1, n + 1)):
        descents = sum(1 for i in range(n - 1) if sigma[i] > sigma[i + 1])
        counts[descents] += 1
    return tuple(counts)


def eulerian_descent_oracle(n: int, k: int) -> int:
    """Permutations of [n] with exactly k descents, by enumeration."""
    row = eulerian_descent_row(n)
    if k < 0 or k > n:
        raise IndexRangeError(f"Index ({n}, {k}) outside 0 <= k <= n")
    return row[k]


# ----------------------------------------------------------------- associated

@lru_cache(maxsize=ROW_CACHE_SIZE)
def _assoc_row(P: Optional[PolynomialFamily], n: int):
    p = _p(P, n)
    values = [p(j) for j in range(1, n + 2)]
    return tuple(
        sum(((-1) ** l * binomial(n + 1, l) * values[k - l] for l in range(k + 1)), Fraction(0))
        for k in range(n + 1)
    )


def eulerian_assoc(P: Optional[PolynomialFamily], n: int, k: int) -> Fraction:
    """A_{n,k}(P) = sum_l (-1)^l C(n+1, l) p_n(k - l + 1)"""
    check_index(n, k)
    return _assoc_row(P, n)[k]


def eulerian_poly_assoc(P: Optional[PolynomialFamily], n: int) -> Polynomial:
    if n < 0:
        raise IndexRangeError(f"n must be nonnegative, got {n}")
    return Polynomial(_assoc_row(P, n))


def eulerian_table(P: Optional[PolynomialFamily], max_n: int) -> EulerianTable:
    if max_n < 0:
        raise IndexRangeError(f"max_n must be nonnegative, got {max_n}")
    if P is None:
        rows = [_classical_row(n) for n in range(max_n + 1)]
        return EulerianTable("classical", rows)
    rows = [_assoc_row(P, n) for n in range(max_n + 1)]
    return EulerianTable(P.id, rows, P.params)


def worpitzky_expand(P: Optional[PolynomialFamily], n: int) -> List[Fraction]:
    """
    Coefficients A_{n,k}(P) of p_n in the basis C(x + n - k - 1, n),
    solved from p_n(i + 1) = sum_{k <= i} A_{n,k} C(i + n - k, n).
    """
    if n < 0:
        raise IndexRangeError(f"n must be nonnegative, got {n}")
    p = _p(P, n)
    coeffs: List[Fraction] = []
    for i in range(n + 1):
        known = sum((coeffs[k] * binomial(i + n - k, n) for k in range(i)), Fraction(0))
        coeffs.append(p(i + 1) - known)
    return coeffs


def worpitzky_reconstruct(coeffs, n: int) -> Polynomial:
    return sum((poly_binomial(X + (n - k - 1), n) * c for k, c in enumerate(coeffs)), Polynomial())


def _require_frobenius(P: Optional[PolynomialFamily], n: int):
    if n < 1:
        raise IndexRangeError(f"Frobenius conversion needs n >= 1, got {n}")
    if P is not None and not P.vanishes_at_zero(n):
        raise FrobeniusHypothesisError(
            f"Frobenius hypothesis violated: {P.label} has p_m(0) != 0 for some 1 <= m <= {n}"
        )


def frobenius_bridge(P: Optional[PolynomialFamily], n: int, k: int, direction: str) -> Fraction:
    """
    A_from_S2: A_{n,k}(P) = sum_j (-1)^{k-j+1} j! S2(n,j;P) C(n-j, k-j+1)
    S2_from_A: S2(n,k;P) = (1/k!) sum_{j=1}^k C(n-j, k-j) A_{n,j-1}(P)
    """
    check_index(n, k)
    _require_frobenius(P, n)

    def S2(m, j):
        if j > m:
            return Fraction(0)
        return stirling2(m, j) if P is None else s2_assoc(P, m, j)

    if direction == "A_from_S2":
        return sum(
            ((-1) ** (k - j + 1) * factorial(j) * S2(n, j) * binomial(n - j, k - j + 1)
             for j in range(1, min(k + 1, n) + 1)),
            Fraction(0),
        )
    if direction == "S2_from_A":
        return sum(
            (binomial(n - j, k - j) * eulerian_assoc(P, n, j - 1) for j in range(1, k + 1)),
            Fraction(0),
        ) / factorial(k)
    raise ParameterError(f"Unknown Frobenius direction '{direction}'")


def eulerian_gf_series(P: PolynomialFamily, N: int) -> PolynomialSeries:
    """
    (1-x) e^{fbar((1-x)t)} / g(fbar((1-x)t)) / (1 - x e^{fbar((1-x)t)})
    expanded as R / (1 - x W) over Q[x], through t^N.
    """
    if P.sheffer is None:
        raise NoShefferPairError(f"no Sheffer pair: family {P.label} is not a Sheffer sequence")
    pair = P.sheffer
    fbar = pair.fbar(N)
    exp_fbar = fbar.exp()
    ratio = exp_fbar * pair.g(N).compose(fbar).inverse()
    R = PolynomialSeries.from_series(ratio, lambda n: ONE_MINUS_X ** n)
    W = PolynomialSeries.from_series(
        exp_fbar - 1, lambda n: ONE_MINUS_X ** (n - 1) if n else Polynomial()
    )
    return R * (W * X).geometric()


def eulerian_gf_assoc(P: PolynomialFamily, N: int) -> Check:
    """t^n/n! coefficients of the bivariate generating function against A_n(x;P)."""
    generating = eulerian_gf_series(P, N)
    return Check.compare(
        "eulerian.generating_function", (0, N),
        ((n, None, eulerian_poly_assoc(P, n), generating.egf_coefficient(n)) for n in range(N + 1)),
    )


def eulerian_series_identity(P: Optional[PolynomialFamily], n: int, M: Optional[int] = None) -> Check:
    """First M coefficients of A_n(x;P) / (1-x)^{n+1} against p_n(j+1)."""
    M = n + 5 if M is None else M
    if M < 1:
        raise ParameterError(f"Need at least one coefficient, got M={M}")
    numerator = FormalPowerSeries.from_polynomial(eulerian_poly_assoc(P, n), M - 1)
    denominator = FormalPowerSeries.from_polynomial(ONE_MINUS_X ** (n + 1), M - 1)
    quotient = numerator / denominator
    p = _p(P, n)
    return Check.compare(
        "eulerian.series_identity", (n, n),
        ((n, j, p(j + 1), quotient.coefficient(j)) for j in range(M)),
    )


def eulerian_bar_recurrence(P: Optional[PolynomialFamily], n: int) -> Check:
    """A_{n+1}(x;Pbar) = (1 + nx) A_n(x;P) + x(1-x) A_n'(x;P), entrywise too."""
    bar = None if P is None else bar_transform(P)
    current = eulerian_poly_assoc(P, n)
    following = eulerian_poly_assoc(bar, n + 1)

    def comparisons():
        expected = (1 + X * n) * current + X * ONE_MINUS_X * current.derivative()
        yield n + 1, None, expected, following
        for k in range(n + 2):
            entry = (k + 1) * current.coefficient(k) + (n - k + 1) * current.coefficient(k - 1)
            yield n + 1, k, entry, following.coefficient(k)

    return Check.compare("eulerian.bar_recurrence", (n + 1, n + 1), comparisons())


def has_odd_delta(P: Optional[PolynomialFamily], order: int) -> bool:
    if P is None:
        return True
    pair = P.sheffer
    if pair is None or not pair.is_associated:
        return False
    f = pair.f(order)
    return all(c == 0 for c in f.coeffs[0::2])


def eulerian_symmetry(P: Optional[PolynomialFamily], n: int) -> Check:
    """A_{n,k}(P) = A_{n,n-1-k}(P) when g = 1 and f is odd."""
    if not has_odd_delta(P, max(n, 1) + 1):
        raise SymmetryPreconditionError(
            f"Symmetry needs a sequence associated to an odd delta series; {_label(P)} is not"
        )
    if n < 1:
        raise IndexRangeError(f"Symmetry is stated for n >= 1, got {n}")
    return Check.compare(
        "eulerian.symmetry", (n, n),
        ((n, k, eulerian_assoc(P, n, n - 1 - k), eulerian_assoc(P, n, k)) for k in range(n)),
    )


def power_sum_check(n: int, m: int, x0) -> Check:
    """sum_{i=1}^m i^n x^i in closed form through Eulerian polynomials."""
    x0 = Fraction(x0)
    if x0 in (0, 1):
        raise ParameterError(f"Power sum identity needs x0 outside {{0, 1}}, got {x0}")
    if m < 1 or n < 0:
        raise IndexRangeError(f"Power sum identity needs m >= 1 and n >= 0, got m={m}, n={n}")
    direct = sum((Fraction(i) ** n * x0 ** i for i in range(1, m + 1)), Fraction(0))
    closed = sum(
        ((-1) ** (n + l) * binomial(n, l) * x0 ** (m + 1) * eulerian_classical_poly(n - l)(x0)
         * Fraction(m) ** l / (x0 - 1) ** (n - l + 1) for l in range(1, n + 1)),
        Fraction(0),
    )
    closed += (-1) ** n * x0 * (x0 ** m - 1) / (x0 - 1) ** (n + 1) * eulerian_classical_poly(n)(x0)
    return Check.compare("eulerian.power_sum", (n, n), [(n, m, direct, closed)])


# --------------------------------------------------------------------- suites

def classical_eulerian_checks(N: int, power_sum_points=((2, 3, 2), (3, 4, Fraction(1, 2)), (4, 5, -1))) -> List[Check]:
    logger.debug("classical eulerian identities up to n=%d", N)
    polys = [eulerian_classical_poly(n) for n in range(N + 1)]

    def binomial_recurrence():
        for n in range(1, N + 1):
            got = sum((polys[k] * binomial(n, k) * (X - 1) ** (n - 1 - k) for k in range(n)), Polynomial())
            yield n, None, polys[n], got

    def generating_function():
        A = PolynomialSeries([p / factorial(n) for n, p in enumerate(polys)], N)
        D = PolynomialSeries.from_series(FormalPowerSeries.exp_series(N), lambda n: (X - 1) ** n)
        product = A * (D - PolynomialSeries([X], N))
        for n in range(N + 1):
            yield n, None, ONE_MINUS_X if n == 0 else Polynomial(), product.coefficient(n)

    def derivative_recurrence():
        for n in range(1, N + 1):
            prev = polys[n - 1]
            yield n, None, polys[n], (1 + X * (n - 1)) * prev + X * ONE_MINUS_X * prev.derivative()

    def worpitzky():
        for n in range(N + 1):
            row = _classical_row(n)
            rising_form = sum((poly_binomial(X + k, n) * a for k, a in enumerate(row)), Polynomial())
            yield n, None, Polynomial.monomial(n), rising_form
            yield n, None, Polynomial.monomial(n), worpitzky_reconstruct(row, n)

    def frobenius():
        for n in range(2, N + 1):
            for k in range(1, n):
                got = sum(
                    (factorial(l) * stirling2(n, l) * binomial(n - l, k - l + 1) * (-1) ** (k - l - 1)
                     for l in range(1, k + 2)),
                    Fraction(0),
                )
                yield n, k, eulerian_classical(n, k), got

    def stirling_from_eulerian():
        for n in range(1, N + 1):
            for k in range(n + 1):
                got = sum(
                    (binomial(n - j, k - j) * eulerian_classical(n, j - 1) for j in range(1, k + 1)),
                    Fraction(0),
                ) / factorial(k)
                yield n, k, stirling2(n, k), got

    oracle_n = min(N, 8)
    checks = [
        Check.compare("eulerian.classical_binomial_recurrence", (1, N), binomial_recurrence()),
        Check.compare("eulerian.classical_generating_function", (0, N), generating_function()),
        Check.compare("eulerian.classical_derivative_recurrence", (1, N), derivative_recurrence()),
        Check.compare("eulerian.classical_recurrence_vs_explicit", (0, N),
                      ((n, k, eulerian_classical(n, k), eulerian_explicit(n, k))
                       for n in range(N + 1) for k in range(n + 1))),
        Check.compare("eulerian.classical_worpitzky", (0, N), worpitzky()),
        Check.compare("eulerian.classical_symmetry", (1, N),
                      ((n, k, eulerian_classical(n, n - 1 - k), eulerian_classical(n, k))
                       for n in range(1, N + 1) for k in range(n))),
        Check.compare("eulerian.classical_row_sum", (0, N),
                      ((n, None, Fraction(factorial(n)), polys[n](1)) for n in range(N + 1))),
        Check.compare("eulerian.classical_frobenius", (2, N), frobenius()),
        Check.compare("eulerian.classical_stirling_from_eulerian", (1, N), stirling_from_eulerian()),
        Check.compare("eulerian.descent_oracle", (1, oracle_n),
                      ((n, k, eulerian_classical(n, k), Fraction(eulerian_descent_oracle(n, k)))
                       for n in range(1, oracle_n + 1) for k in range(n + 1))),
        Check.compare("eulerian.classical_matches_associated", (0, N),
                      ((n, k, eulerian_classical(n, k), eulerian_assoc(None, n, k))
                       for n in range(N + 1) for k in range(n + 1))),
    ]
    checks.append(_merge("eulerian.classical_series_identity", (0, N),
                         [eulerian_series_identity(None, n) for n in range(N + 1)]))
    checks.append(_merge("eulerian.classical_bar_recurrence", (1, N),
                         [eulerian_bar_recurrence(None, n) for n in range(N)]))
    checks += [power_sum_check(n, m, x0) for n, m, x0 in power_sum_points]
    return checks


def eulerian_checks(P: PolynomialFamily, N: int) -> List[Check]:
    """Identities for the Eulerian numbers associated with one family."""
    logger.debug("eulerian identities for %s up to n=%d", P.label, N)
    checks = [
        Check.compare("eulerian.alternating_sum_vs_worpitzky", (0, N),
                      ((n, k, eulerian_assoc(P, n, k), worpitzky_expand(P, n)[k])
                       for n in range(N + 1) for k in range(n + 1))),
        Check.compare("eulerian.worpitzky_reconstruction", (0, N),
                      ((n, None, P.p(n), worpitzky_reconstruct(_assoc_row(P, n), n)) for n in range(N + 1))),
        Check.compare("eulerian.row_sum", (0, N),
                      ((n, None, P.p(n).leading * factorial(n), eulerian_poly_assoc(P, n)(1))
                       for n in range(N + 1))),
    ]
    series = [eulerian_series_identity(P, n) for n in range(N + 1)]
    checks.append(_merge("eulerian.series_identity", (0, N), series))
    bar = [eulerian_bar_recurrence(P, n) for n in range(N)]
    checks.append(_merge("eulerian.bar_recurrence", (1, N), bar))

    if P.sheffer is not None:
        checks.append(eulerian_gf_assoc(P, N))
    else:
        checks.append(Check.skipped("eulerian.generating_function", (0, N), "no Sheffer pair"))

    if has_odd_delta(P, N + 1):
        checks.append(_merge("eulerian.symmetry", (1, N), [eulerian_symmetry(P, n) for n in range(1, N + 1)]))
    else:
        checks.append(Check.skipped("eulerian.symmetry", (1, N), "needs g = 1 and an odd delta series"))

    if P.vanishes_at_zero(N):
        def vanishing():
            for n in range(1, N + 1):
                A = eulerian_poly_assoc(P, n)
                p = P.p(n)
                lead = sum(((-1) ** (n - k) * p.coefficient(k) for k in range(1, n + 1)), Fraction(0))
                yield n, n, Fraction(0), A.coefficient(n)
                yield n, n - 1, lead, A.coefficient(n - 1)
                yield n, 0, Fraction(0), s2_zero_outside(P, n, 0)

        def frobenius():
            for n in range(1, N + 1):
                for k in range(n + 1):
                    yield n, k, eulerian_assoc(P, n, k), frobenius_bridge(P, n, k, "A_from_S2")
                    yield n, k, s2_assoc(P, n, k), frobenius_bridge(P, n, k, "S2_from_A")

        checks.append(Check.compare("eulerian.vanishing_constant_terms", (1, N), vanishing()))
        checks.append(Check.compare("eulerian.frobenius_round_trip", (1, N), frobenius()))
    else:
        checks.append(Check.skipped("eulerian.vanishing_constant_terms", (1, N), "p_n(0) ≠ 0"))
        checks.append(Check.skipped("eulerian.frobenius_round_trip", (1, N), "p_n(0) ≠ 0"))
    return checks


def _merge(identity_id: str, n_range, checks: List[Check]) -> Check:
    for check in checks:
        if check.failed:
            return Check(identity_id=identity_id, n_range=tuple(n_range), status="fail",
                         first_failure=check.first_failure)
    return Check(identity_id=identity_id, n_range=tuple(n_range), status="pass")
