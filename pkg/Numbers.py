from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Dict, List, Optional

from Helpers import IndexRangeError, ParameterError
from Kernel import (
    Polynomial,
    X,
    binomial,
    central_factorial,
    expand_in_basis,
    falling_factorial,
    rising_factorial,
)
from Models import Check, ScalarSequence, Triangle
from Series import (
    FormalPowerSeries,
    central_delta,
    central_delta_inverse,
    degenerate_exp,
    degenerate_log,
    expm1_lambda,
    log1p_lambda,
    scaled_central_delta,
    scaled_central_delta_inverse,
)

ONE = Fraction(1)
MONOMIAL = ("monomial",)
FALLING = ("falling", ONE)


def check_index(n: int, k: int):
    if n < 0 or k < 0 or k > n:
        raise IndexRangeError(f"Index ({n}, {k}) outside 0 <= k <= n")


def _basis(key, n: int) -> Polynomial:
    kind = key[0]
    if kind == "monomial":
        return Polynomial.monomial(n)
    if kind == "falling":
        return falling_factorial(n, key[1])
    if kind == "rising":
        return rising_factorial(n, key[1])
    if kind == "central":
        return central_factorial(n, key[1])
    if kind == "gould":
        return falling_factorial(n)(X * key[1] + key[2])
    raise ParameterError(f"Unknown basis {kind}")


@lru_cache(maxsize=4096)
def _conversion_row(source, target, n: int):
    basis = [_basis(target, k) for k in range(n + 1)]
    return tuple(expand_in_basis(_basis(source, n), basis))


@lru_cache(maxsize=None)
def _stirling2_row(n: int):
    if n == 0:
        return (1,)
    prev = _stirling2_row(n - 1) + (0,)
    return tuple((prev[k - 1] if k else 0) + k * prev[k] for k in range(n + 1))


@lru_cache(maxsize=None)
def _stirling1_row(n: int):
    if n == 0:
        return (1,)
    prev = _stirling1_row(n - 1) + (0,)
    return tuple((prev[k - 1] if k else 0) - (n - 1) * prev[k] for k in range(n + 1))


def stirling2(n: int, k: int) -> Fraction:
    check_index(n, k)
    return Fraction(_stirling2_row(n)[k])


def stirling1(n: int, k: int) -> Fraction:
    """Signed: (x)_n = sum_k S1(n, k) x^k."""
    check_index(n, k)
    return Fraction(_stirling1_row(n)[k])


def stirling2_degenerate(n: int, k: int, lam) -> Fraction:
    """(x)_{n,lam} = sum_k S2_lam(n, k) (x)_k"""
    check_index(n, k)
    return _conversion_row(("falling", Fraction(lam)), FALLING, n)[k]


def stirling1_degenerate(n: int, k: int, lam) -> Fraction:
    """(x)_n = sum_k S1_lam(n, k) (x)_{k,lam}"""
    check_index(n, k)
    return _conversion_row(FALLING, ("falling", Fraction(lam)), n)[k]


def lah(n: int, k: int) -> Fraction:
    check_index(n, k)
    if k == 0:
        return Fraction(1 if n == 0 else 0)
    return Fraction(binomial(n - 1, k - 1) * factorial(n), factorial(k))


def lah_sum(n: int, k: int) -> Fraction:
    check_index(n, k)
    return sum(((-1) ** (n - l) * stirling1(n, l) * stirling2(l, k) for l in range(k, n + 1)),
               Fraction(0))


def lah_degenerate(n: int, k: int, lam) -> Fraction:
    """<x>_{n,lam} = sum_k L_lam(n, k) (x)_k"""
    check_index(n, k)
    return _conversion_row(("rising", Fraction(lam)), FALLING, n)[k]


def lah_degenerate_sum(n: int, k: int, lam) -> Fraction:
    check_index(n, k)
    lam = Fraction(lam)
    return sum(((-lam) ** (n - l) * stirling1(n, l) * stirling2(l, k) for l in range(k, n + 1)),
               Fraction(0))


def central_factorial_numbers(n: int, k: int, kind: int, lam=None, variant: str = "T") -> Fraction:
    """
    variant T, lam None:  T1 (x^[n] in x^k), T2 (x^n in x^[k])
    variant T, lam given: T1_lam (x^[n] in (x)_{k,lam}), T2_lam ((x)_{n,lam} in x^[k])
    variant R:            R1_lam (x^[n,lam] in x^k), R2_lam (x^n in x^[k,lam])
    """
    check_index(n, k)
    if kind not in (1, 2):
        raise ParameterError(f"Central factorial kind must be 1 or 2, got {kind}")
    if variant == "T":
        central = ("central", ONE)
        other = MONOMIAL if lam is None else ("falling", Fraction(lam))
    elif variant == "R":
        if lam is None:
            raise ParameterError("The R variant of central factorial numbers needs lambda")
        central = ("central", Fraction(lam))
        other = MONOMIAL
    else:
        raise ParameterError(f"Unknown central factorial variant {variant}")
    if kind == 1:
        return _conversion_row(central, other, n)[k]
    return _conversion_row(other, central, n)[k]


def _check_gould_r(r) -> Fraction:
    r = Fraction(r)
    if r == 0:
        raise ParameterError("Gould-Hopper numbers need r != 0")
    return r


def gould_hopper(n: int, k: int, r, s) -> Fraction:
    """(r x + s)_n = sum_k G(n, k; r, s) (x)_k"""
    r = _check_gould_r(r)
    check_index(n, k)
    return _conversion_row(("gould", r, Fraction(s)), FALLING, n)[k]


def gould_hopper_sum(n: int, k: int, r, s) -> Fraction:
    r = _check_gould_r(r)
    s = Fraction(s)
    check_index(n, k)
    total = Fraction(0)
    for l in range(n + 1):
        shifted = falling_factorial(n - l)(s)
        for m in range(k, l + 1):
            total += binomial(n, l) * r ** m * shifted * stirling1(l, m) * stirling2(m, k)
    return total


# ----------------------------------------------------------- scalar sequences

SEQUENCE_NAMES = ("bernoulli", "euler", "bernoulli2nd", "bell")


@lru_cache(maxsize=256)
def _sequence_values(name: str, N: int, a: Fraction):
    if name == "bernoulli":
        series = FormalPowerSeries.t(N + 1) / (FormalPowerSeries.exp_series(N + 1) - 1)
    elif name == "euler":
        series = FormalPowerSeries.constant(2, N) / (FormalPowerSeries.exp_series(N) + 1)
    elif name == "bernoulli2nd":
        series = FormalPowerSeries.t(N + 1) / FormalPowerSeries.log1p_series(N + 1)
    elif name == "bell":
        series = (expm1_lambda(1, N) * a).exp()
    else:
        raise ParameterError(f"Unknown scalar sequence '{name}'")
    return tuple(series.egf_coefficients()[: N + 1])


def scalar_sequences(name: str, N: int, a=None) -> ScalarSequence:
    """B_n, E_n, b_n or Bel_n(a) for n = 0..N."""
    if N < 0:
        raise IndexRangeError(f"Sequence length must be nonnegative, got {N}")
    a = Fraction(1) if a is None else Fraction(a)
    params = {"a": a} if name == "bell" else None
    return ScalarSequence(name, _sequence_values(name, max(N, 16), a)[: N + 1], params)


def bernoulli_number(n: int) -> Fraction:
    return scalar_sequences("bernoulli", n)[n]


def euler_number(n: int) -> Fraction:
    return scalar_sequences("euler", n)[n]


def bernoulli2nd_number(n: int) -> Fraction:
    return scalar_sequences("bernoulli2nd", n)[n]


def bell_number(n: int, a=1) -> Fraction:
    return scalar_sequences("bell", n, a)[n]


# ------------------------------------------------------ generating functions

def _column(base: FormalPowerSeries, k: int) -> FormalPowerSeries:
    return base.pow_int(k) / factorial(k)


def triangle_gf(name: str, k: int, order: int, lam=None, r=None, s=None) -> FormalPowerSeries:
    """Exponential generating function of column k of a classical triangle."""
    if k < 0:
        raise IndexRangeError(f"Column index must be nonnegative, got {k}")
    needs_lambda = name in {"s2_degenerate", "s1_degenerate", "lah_degenerate",
                            "t1_degenerate", "t2_degenerate", "r1", "r2"}
    if needs_lambda and lam is None:
        raise ParameterError(f"Triangle '{name}' needs lambda")
    t = FormalPowerSeries.t(order)
    if name == "s2":
        base = expm1_lambda(1, order)
    elif name == "s1":
        base = FormalPowerSeries.log1p_series(order)
    elif name == "s2_degenerate":
        base = degenerate_exp(lam, order) - 1
    elif name == "s1_degenerate":
        base = degenerate_log(lam, order)
    elif name == "lah":
        base = t / (1 - t)
    elif name == "lah_degenerate":
        base = degenerate_exp(-Fraction(lam), order) - 1
    elif name == "t1":
        base = central_delta_inverse(order)
    elif name == "t2":
        base = central_delta(order)
    elif name == "t1_degenerate":
        base = expm1_lambda(lam, order).compose(central_delta_inverse(order))
    elif name == "t2_degenerate":
        base = central_delta(order).compose(log1p_lambda(lam, order))
    elif name == "r1":
        base = scaled_central_delta_inverse(lam, order)
    elif name == "r2":
        base = scaled_central_delta(lam, order)
    elif name == "gould_hopper":
        if r is None or s is None:
            raise ParameterError("Triangle 'gould_hopper' needs r and s")
        _check_gould_r(r)
        one_plus_t = 1 + t
        return one_plus_t.pow_rational(Fraction(s)) * _column(one_plus_t.pow_rational(Fraction(r)) - 1, k)
    else:
        raise ParameterError(f"Triangle '{name}' has no generating function")
    return _column(base, k)


# ------------------------------------------------------- named triangle access

def _triangle_functions(lam, r, s) -> Dict[str, Callable[[int, int], Fraction]]:
    return {
        "s1": stirling1,
        "s2": stirling2,
        "s1_degenerate": lambda n, k: stirling1_degenerate(n, k, lam),
        "s2_degenerate": lambda n, k: stirling2_degenerate(n, k, lam),
        "lah": lah,
        "lah_degenerate": lambda n, k: lah_degenerate(n, k, lam),
        "t1": lambda n, k: central_factorial_numbers(n, k, 1),
        "t2": lambda n, k: central_factorial_numbers(n, k, 2),
        "t1_degenerate": lambda n, k: central_factorial_numbers(n, k, 1, lam),
        "t2_degenerate": lambda n, k: central_factorial_numbers(n, k, 2, lam),
        "r1": lambda n, k: central_factorial_numbers(n, k, 1, lam, "R"),
        "r2": lambda n, k: central_factorial_numbers(n, k, 2, lam, "R"),
        "gould_hopper": lambda n, k: gould_hopper(n, k, r, s),
    }


CLASSICAL_TRIANGLES = tuple(_triangle_functions(None, None, None))


def classical_triangle(name: str, max_n: int, lam=None, r=None, s=None) -> Triangle:
    functions = _triangle_functions(lam, r, s)
    if name not in functions:
        raise ParameterError(f"Unknown classical triangle '{name}'")
    if name in {"s1_degenerate", "s2_degenerate", "lah_degenerate", "t1_degenerate",
                "t2_degenerate", "r1", "r2"} and lam is None:
        raise ParameterError(f"Triangle '{name}' needs lambda")
    if name == "gould_hopper" and (r is None or s is None):
        raise ParameterError("Triangle 'gould_hopper' needs r and s")
    if max_n < 0:
        raise IndexRangeError(f"max_n must be nonnegative, got {max_n}")
    func = functions[name]
    rows = [[func(n, k) for k in range(n + 1)] for n in range(max_n + 1)]
    params = {key: value for key, value in (("lambda", lam), ("r", r), ("s", s)) if value is not None}
    return Triangle(name, rows, params)


# ------------------------------------------------------------------ checks

def _product_is_identity(first, second, N: int):
    for n in range(N + 1):
        for l in range(n + 1):
            got = sum((first(n, k) * second(k, l) for k in range(l, n + 1)), Fraction(0))
            yield n, l, Fraction(1 if n == l else 0), got


def check_inverse_pair(identity_id: str, first, second, N: int) -> Check:
    def comparisons():
        yield from _product_is_identity(first, second, N)
        yield from _product_is_identity(second, first, N)
    return Check.compare(identity_id, (0, N), comparisons())


def _agree(identity_id: str, expected, got, N: int, first_n: int = 0) -> Check:
    return Check.compare(
        identity_id, (first_n, N),
        ((n, k, expected(n, k), got(n, k)) for n in range(first_n, N + 1) for k in range(n + 1)),
    )


def _gf_agrees(identity_id: str, name: str, func, N: int, **params) -> Check:
    def comparisons():
        for k in range(N + 1):
            gf = triangle_gf(name, k, N, **params)
            for n in range(k, N + 1):
                yield n, k, func(n, k), gf.egf_coefficient(n)
    return Check.compare(identity_id, (0, N), comparisons())


def classical_checks(N: int, lambdas, rs_pairs) -> List[Check]:
    """Identities among the classical triangles themselves."""
    checks = [
        check_inverse_pair("numbers.stirling_orthogonality", stirling1, stirling2, N),
        Check.compare("numbers.signed_lah_involution", (0, N),
                      _product_is_identity(lambda n, k: (-1) ** (n - k) * lah(n, k), lah, N)),
        _agree("numbers.lah_closed_form", lah, lambda n, k: _conversion_row(("rising", ONE), FALLING, n)[k], N),
        _agree("numbers.lah_stirling_sum", lah, lah_sum, N),
        check_inverse_pair("numbers.central_inverse_pair",
                           lambda n, k: central_factorial_numbers(n, k, 1),
                           lambda n, k: central_factorial_numbers(n, k, 2), N),
        _gf_agrees("numbers.s2_gf", "s2", stirling2, N),
        _gf_agrees("numbers.s1_gf", "s1", stirling1, N),
        _gf_agrees("numbers.lah_gf", "lah", lah, N),
        _gf_agrees("numbers.t1_gf", "t1", lambda n, k: central_factorial_numbers(n, k, 1), N),
        _gf_agrees("numbers.t2_gf", "t2", lambda n, k: central_factorial_numbers(n, k, 2), N),
        _agree("numbers.degenerate_s2_at_zero", stirling2, lambda n, k: stirling2_degenerate(n, k, 0), N),
        _agree("numbers.degenerate_s1_at_zero", stirling1, lambda n, k: stirling1_degenerate(n, k, 0), N),
        _agree("numbers.degenerate_s2_at_one", lambda n, k: Fraction(n == k),
               lambda n, k: stirling2_degenerate(n, k, 1), N),
        _agree("numbers.degenerate_s1_at_one", lambda n, k: Fraction(n == k),
               lambda n, k: stirling1_degenerate(n, k, 1), N),
        _agree("numbers.degenerate_lah_at_one", lah, lambda n, k: lah_degenerate(n, k, 1), N),
        _agree("numbers.degenerate_t1_at_zero", lambda n, k: central_factorial_numbers(n, k, 1),
               lambda n, k: central_factorial_numbers(n, k, 1, 0), N),
        _agree("numbers.degenerate_t2_at_zero", lambda n, k: central_factorial_numbers(n, k, 2),
               lambda n, k: central_factorial_numbers(n, k, 2, 0), N),
        _agree("numbers.r1_at_one", lambda n, k: central_factorial_numbers(n, k, 1),
               lambda n, k: central_factorial_numbers(n, k, 1, 1, "R"), N),
        _agree("numbers.r2_at_one", lambda n, k: central_factorial_numbers(n, k, 2),
               lambda n, k: central_factorial_numbers(n, k, 2, 1, "R"), N),
    ]
    for lam in lambdas:
        tag = f"[lambda={lam}]"
        checks += [
            check_inverse_pair("numbers.degenerate_stirling_orthogonality" + tag,
                               lambda n, k, lam=lam: stirling1_degenerate(n, k, lam),
                               lambda n, k, lam=lam: stirling2_degenerate(n, k, lam), N),
            check_inverse_pair("numbers.degenerate_central_inverse_pair" + tag,
                               lambda n, k, lam=lam: central_factorial_numbers(n, k, 1, lam),
                               lambda n, k, lam=lam: central_factorial_numbers(n, k, 2, lam), N),
            check_inverse_pair("numbers.r_central_inverse_pair" + tag,
                               lambda n, k, lam=lam: central_factorial_numbers(n, k, 1, lam, "R"),
                               lambda n, k, lam=lam: central_factorial_numbers(n, k, 2, lam, "R"), N),
            _agree("numbers.degenerate_lah_sum" + tag,
                   lambda n, k, lam=lam: lah_degenerate(n, k, lam),
                   lambda n, k, lam=lam: lah_degenerate_sum(n, k, lam), N),
        ]
        for name in ("s2_degenerate", "s1_degenerate", "lah_degenerate", "t1_degenerate",
                     "t2_degenerate", "r1", "r2"):
            func = _triangle_functions(lam, None, None)[name]
            checks.append(_gf_agrees(f"numbers.{name}_gf" + tag, name, func, N, lam=lam))
    for r, s in rs_pairs:
        tag = f"[r={r},s={s}]"
        checks += [
            _agree("numbers.gould_hopper_sum" + tag,
                   lambda n, k, r=r, s=s: gould_hopper(n, k, r, s),
                   lambda n, k, r=r, s=s: gould_hopper_sum(n, k, r, s), N),
            _gf_agrees("numbers.gould_hopper_gf" + tag, "gould_hopper",
                       lambda n, k, r=r, s=s: gould_hopper(n, k, r, s), N, r=r, s=s),
            _agree("numbers.gould_hopper_unit_scale" + tag,
                   lambda n, k, s=s: binomial(n, k) * falling_factorial(n - k)(s),
                   lambda n, k, s=s: gould_hopper(n, k, 1, s), N),
        ]
    return checks
