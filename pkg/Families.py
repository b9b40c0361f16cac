import logging
from fractions import Fraction
from functools import lru_cache
from math import factorial, perm
from typing import Dict, List, Optional

from config import get_config
from Helpers import ParameterError
from Kernel import Polynomial, X, binomial, central_factorial, falling_factorial, rising_factorial
from Models import Check, PolynomialFamily, Report, _freeze_params
from Associated import s1_assoc, s2_assoc
from Numbers import (
    bell_number,
    bernoulli2nd_number,
    bernoulli_number,
    central_factorial_numbers,
    euler_number,
    gould_hopper,
    gould_hopper_sum,
    lah,
    lah_degenerate,
    stirling1,
    stirling1_degenerate,
    stirling2,
    stirling2_degenerate,
)
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
from Umbral import ShefferPair, sheffer_polys

logger = logging.getLogger(__name__)

FAMILY_PARAMS: Dict[str, tuple] = {
    "monomial": (),
    "falling_deg": ("lambda",),
    "rising": (),
    "rising_deg": ("lambda",),
    "central": (),
    "central_bell": (),
    "central_bell_deg": ("lambda",),
    "central_deg": ("lambda",),
    "lah_bell": (),
    "lah_bell_deg": ("lambda",),
    "bell": (),
    "bell_partial_deg": ("lambda",),
    "bell_full_deg": ("lambda",),
    "mittag_leffler": (),
    "laguerre_m1": (),
    "bernoulli": (),
    "euler": (),
    "gould_hopper": ("r", "s"),
    "bernoulli2nd": (),
    "poisson_charlier": ("a",),
    "bernoulli_product": (),
}

FAMILY_IDS = tuple(FAMILY_PARAMS)


def _combine(coefficient, basis):
    """n -> sum_k coefficient(n, k) basis(k)"""
    def generator(n):
        return sum((basis(k) * coefficient(n, k) for k in range(n + 1)), Polynomial())
    return generator


def _sum(terms) -> Fraction:
    return sum(terms, Fraction(0))


def _bernoulli_poly(n: int) -> Polynomial:
    return Polynomial(binomial(n, k) * bernoulli_number(n - k) for k in range(n + 1))


def _t(order):
    return FormalPowerSeries.t(order)


# ------------------------------------------------------------------ builders

def _monomial(params):
    pair = ShefferPair(_t, None, _t, "monomial")
    return PolynomialFamily(
        "monomial", Polynomial.monomial, params, pair,
        s2_oracles={"stirling2": stirling2}, s1_oracles={"stirling1": stirling1},
    )


def _falling_deg(params):
    lam = params["lambda"]
    pair = ShefferPair(lambda N: expm1_lambda(lam, N), None, lambda N: log1p_lambda(lam, N), "falling_deg")
    return PolynomialFamily(
        "falling_deg", lambda n: falling_factorial(n, lam), params, pair,
        s2_oracles={"degenerate_stirling2": lambda n, k: stirling2_degenerate(n, k, lam)},
        s1_oracles={"degenerate_stirling1": lambda n, k: stirling1_degenerate(n, k, lam)},
    )


def _rising(params):
    pair = ShefferPair(lambda N: expm1_lambda(-1, N), None, lambda N: log1p_lambda(-1, N), "rising")
    return PolynomialFamily(
        "rising", rising_factorial, params, pair,
        s2_oracles={"lah": lah},
        s1_oracles={"signed_lah": lambda n, k: (-1) ** (n - k) * lah(n, k)},
    )


def _rising_deg(params):
    lam = params["lambda"]
    pair = ShefferPair(lambda N: expm1_lambda(-lam, N), None, lambda N: log1p_lambda(-lam, N), "rising_deg")
    s1_oracles = {"negated_degenerate_stirling1": lambda n, k: stirling1_degenerate(n, k, -lam)}
    if lam != 0:
        s1_oracles["reciprocal_degenerate_lah"] = lambda n, k: (-lam) ** (n - k) * lah_degenerate(n, k, 1 / lam)
    return PolynomialFamily(
        "rising_deg", lambda n: rising_factorial(n, lam), params, pair,
        s2_oracles={"degenerate_lah": lambda n, k: lah_degenerate(n, k, lam)},
        s1_oracles=s1_oracles,
    )


def _central(params):
    pair = ShefferPair(central_delta, None, central_delta_inverse, "central")
    return PolynomialFamily(
        "central", central_factorial, params, pair,
        s2_oracles={"t1_stirling2": lambda n, k: _sum(
            central_factorial_numbers(n, l, 1) * stirling2(l, k) for l in range(k, n + 1))},
        s1_oracles={"stirling1_t2": lambda n, k: _sum(
            stirling1(n, l) * central_factorial_numbers(l, k, 2) for l in range(k, n + 1))},
    )


def _central_bell(params):
    pair = ShefferPair(central_delta_inverse, None, central_delta, "central_bell")
    generator = _combine(lambda n, k: central_factorial_numbers(n, k, 2), Polynomial.monomial)
    return PolynomialFamily(
        "central_bell", generator, params, pair,
        s2_oracles={"t2_stirling2": lambda n, k: _sum(
            central_factorial_numbers(n, l, 2) * stirling2(l, k) for l in range(k, n + 1))},
        s1_oracles={"stirling1_t1": lambda n, k: _sum(
            stirling1(n, l) * central_factorial_numbers(l, k, 1) for l in range(k, n + 1))},
    )


def _central_bell_deg(params):
    lam = params["lambda"]
    pair = ShefferPair(
        lambda N: expm1_lambda(lam, N).compose(central_delta_inverse(N)), None,
        lambda N: central_delta(N).compose(log1p_lambda(lam, N)), "central_bell_deg",
    )
    generator = _combine(lambda n, k: central_factorial_numbers(n, k, 2, lam), Polynomial.monomial)
    return PolynomialFamily(
        "central_bell_deg", generator, params, pair,
        s2_oracles={"degenerate_t2_stirling2": lambda n, k: _sum(
            central_factorial_numbers(n, l, 2, lam) * stirling2(l, k) for l in range(k, n + 1))},
        s1_oracles={"stirling1_degenerate_t1": lambda n, k: _sum(
            stirling1(n, l) * central_factorial_numbers(l, k, 1, lam) for l in range(k, n + 1))},
    )


def _central_deg(params):
    lam = params["lambda"]
    pair = ShefferPair(
        lambda N: scaled_central_delta(lam, N), None,
        lambda N: scaled_central_delta_inverse(lam, N), "central_deg",
    )
    return PolynomialFamily(
        "central_deg", lambda n: central_factorial(n, lam), params, pair,
        s2_oracles={"r1_stirling2": lambda n, k: _sum(
            central_factorial_numbers(n, l, 1, lam, "R") * stirling2(l, k) for l in range(k, n + 1))},
        s1_oracles={"stirling1_r2": lambda n, k: _sum(
            stirling1(n, l) * central_factorial_numbers(l, k, 2, lam, "R") for l in range(k, n + 1))},
    )


def _lah_bell(params):
    pair = ShefferPair(lambda N: _t(N) / (1 + _t(N)), None, lambda N: _t(N) / (1 - _t(N)), "lah_bell")
    return PolynomialFamily(
        "lah_bell", _combine(lah, Polynomial.monomial), params, pair,
        s2_oracles={"lah_stirling2": lambda n, k: _sum(lah(n, l) * stirling2(l, k) for l in range(k, n + 1))},
        s1_oracles={"stirling1_signed_lah": lambda n, k: _sum(
            (-1) ** (l - k) * stirling1(n, l) * lah(l, k) for l in range(k, n + 1))},
    )


def _lah_bell_deg(params):
    lam = params["lambda"]

    def f(N):
        h = expm1_lambda(lam, N)
        return h / (1 + h)

    pair = ShefferPair(
        f, None, lambda N: log1p_lambda(lam, N).compose(_t(N) / (1 - _t(N))), "lah_bell_deg",
    )
    generator = _combine(lah, lambda k: falling_factorial(k, lam))
    return PolynomialFamily(
        "lah_bell_deg", generator, params, pair,
        s2_oracles={"lah_degenerate_stirling2": lambda n, k: _sum(
            lah(n, l) * stirling2_degenerate(l, k, lam) for l in range(k, n + 1))},
        s1_oracles={"degenerate_stirling1_signed_lah": lambda n, k: _sum(
            (-1) ** (l - k) * stirling1_degenerate(n, l, lam) * lah(l, k) for l in range(k, n + 1))},
    )


def _bell(params):
    pair = ShefferPair(FormalPowerSeries.log1p_series, None, lambda N: expm1_lambda(1, N), "bell")
    return PolynomialFamily(
        "bell", _combine(stirling2, Polynomial.monomial), params, pair,
        s2_oracles={"stirling2_stirling2": lambda n, k: _sum(
            stirling2(n, l) * stirling2(l, k) for l in range(k, n + 1))},
        s1_oracles={"stirling1_stirling1": lambda n, k: _sum(
            stirling1(n, l) * stirling1(l, k) for l in range(k, n + 1))},
    )


def _bell_partial_deg(params):
    lam = params["lambda"]
    pair = ShefferPair(
        lambda N: degenerate_log(lam, N), None, lambda N: degenerate_exp(lam, N) - 1, "bell_partial_deg",
    )
    generator = _combine(lambda n, k: stirling2_degenerate(n, k, lam), Polynomial.monomial)
    return PolynomialFamily(
        "bell_partial_deg", generator, params, pair,
        s2_oracles={"degenerate_stirling2_stirling2": lambda n, k: _sum(
            stirling2_degenerate(n, l, lam) * stirling2(l, k) for l in range(k, n + 1))},
        s1_oracles={"stirling1_degenerate_stirling1": lambda n, k: _sum(
            stirling1(n, l) * stirling1_degenerate(l, k, lam) for l in range(k, n + 1))},
    )


def _bell_full_deg(params):
    lam = params["lambda"]
    pair = ShefferPair(
        lambda N: degenerate_log(lam, N).compose(expm1_lambda(lam, N)), None,
        lambda N: log1p_lambda(lam, N).compose(degenerate_exp(lam, N) - 1), "bell_full_deg",
    )
    generator = _combine(lambda n, k: stirling2_degenerate(n, k, lam), lambda k: falling_factorial(k, lam))
    return PolynomialFamily(
        "bell_full_deg", generator, params, pair,
        s2_oracles={"degenerate_stirling2_squared": lambda n, k: _sum(
            stirling2_degenerate(n, l, lam) * stirling2_degenerate(l, k, lam) for l in range(k, n + 1))},
        s1_oracles={"degenerate_stirling1_squared": lambda n, k: _sum(
            stirling1_degenerate(n, l, lam) * stirling1_degenerate(l, k, lam) for l in range(k, n + 1))},
    )


def _mittag_leffler(params):
    pair = ShefferPair(
        lambda N: expm1_lambda(1, N) / (FormalPowerSeries.exp_series(N) + 1), None,
        lambda N: FormalPowerSeries.from_function(lambda n: Fraction(2, n) if n % 2 else 0, N),
        "mittag_leffler",
    )
    return PolynomialFamily(
        "mittag_leffler", _mittag_leffler_poly, params, pair,
        s2_oracles={"scaled_lah": lambda n, k: 2 ** k * lah(n, k)},
        s1_oracles={"signed_lah_halved": lambda n, k: Fraction((-1) ** (n - k) * lah(n, k), 2 ** n)},
    )


def _mittag_leffler_poly(n: int) -> Polynomial:
    """M_n(x) = sum_j C(n, j) (x)_j <x>_{n-j}"""
    return sum((falling_factorial(j) * rising_factorial(n - j) * binomial(n, j) for j in range(n + 1)),
               Polynomial())


def _laguerre_m1(params):
    involution = lambda N: _t(N) / (_t(N) - 1)
    pair = ShefferPair(involution, None, involution, "laguerre_m1")
    generator = _combine(lambda n, k: (-1) ** k * lah(n, k), Polynomial.monomial)
    return PolynomialFamily(
        "laguerre_m1", generator, params, pair,
        s2_oracles={"signed_lah_stirling2": lambda n, k: _sum(
            (-1) ** l * lah(n, l) * stirling2(l, k) for l in range(k, n + 1))},
        s1_oracles={"stirling1_lah": lambda n, k: (-1) ** k * _sum(
            stirling1(n, l) * lah(l, k) for l in range(k, n + 1))},
    )


def _bernoulli_s2(n, k):
    return _sum(binomial(n, l) * stirling2(n - l, k) * bernoulli_number(l) for l in range(n - k + 1))


def _bernoulli_s1(n, k):
    return _sum(stirling1(n, l) * perm(l + 1, k) / (l + 1) for l in range(k, n + 1)) / factorial(k)


def _bernoulli(params):
    pair = ShefferPair(
        _t, lambda N: FormalPowerSeries.from_function(lambda n: Fraction(1, factorial(n + 1)), N),
        _t, "bernoulli",
    )
    return PolynomialFamily(
        "bernoulli", _bernoulli_poly, params, pair,
        s2_oracles={"binomial_bernoulli": _bernoulli_s2},
        s1_oracles={"stirling1_falling": _bernoulli_s1},
    )


def _euler(params):
    pair = ShefferPair(_t, lambda N: (FormalPowerSeries.exp_series(N) + 1) * Fraction(1, 2), _t, "euler")
    generator = lambda n: Polynomial(binomial(n, k) * euler_number(n - k) for k in range(n + 1))
    return PolynomialFamily(
        "euler", generator, params, pair,
        s2_oracles={"binomial_euler": lambda n, k: _sum(
            binomial(n, l) * stirling2(n - l, k) * euler_number(l) for l in range(n - k + 1))},
        s1_oracles={"stirling1_falling_halved": lambda n, k: _sum(
            stirling1(n, l) * perm(l, k) for l in range(k, n + 1)) / (2 * factorial(k)) + stirling1(n, k) / 2},
    )


def _gould_hopper(params):
    r, s = params["r"], params["s"]
    pair = ShefferPair(
        lambda N: FormalPowerSeries.exp_series(N, 1 / r) - 1,
        lambda N: FormalPowerSeries.exp_series(N, -s / r),
        lambda N: FormalPowerSeries.log1p_series(N) * r,
        "gould_hopper",
    )

    def s1_oracle(n, k):
        return _sum(
            (-s) ** (l - i) * r ** (-l) * binomial(l, i) * stirling1(n, l) * stirling2(i, k)
            for l in range(n + 1) for i in range(k, l + 1)
        )

    return PolynomialFamily(
        "gould_hopper", lambda n: falling_factorial(n)(X * r + s), params, pair,
        s2_oracles={
            "gould_hopper": lambda n, k: gould_hopper(n, k, r, s),
            "gould_hopper_triple_sum": lambda n, k: gould_hopper_sum(n, k, r, s),
        },
        s1_oracles={"stirling_double_sum": s1_oracle},
    )


def _bernoulli2nd(params):
    pair = ShefferPair(
        lambda N: expm1_lambda(1, N),
        lambda N: FormalPowerSeries.t(N + 1) / expm1_lambda(1, N + 1),
        FormalPowerSeries.log1p_series,
        "bernoulli2nd",
    )
    generator = _combine(lambda n, j: binomial(n, j) * bernoulli2nd_number(n - j), falling_factorial)
    return PolynomialFamily(
        "bernoulli2nd", generator, params, pair,
        s2_oracles={
            "binomial_bernoulli2nd": lambda n, k: binomial(n, k) * bernoulli2nd_number(n - k),
            "bernoulli2nd_double_sum": lambda n, k: _sum(
                binomial(n, m) * bernoulli2nd_number(n - m) * stirling1(m, l) * stirling2(l, k)
                for m in range(k, n + 1) for l in range(k, m + 1)),
        },
        s1_oracles={"binomial_stirling1_bernoulli": lambda n, k: binomial(n, k) * _sum(
            stirling1(n - k, l) * bernoulli_number(l) for l in range(n - k + 1))},
    )


def _poisson_charlier(params):
    a = params["a"]
    pair = ShefferPair(
        lambda N: expm1_lambda(1, N) * a,
        lambda N: (expm1_lambda(1, N) * a).exp(),
        lambda N: FormalPowerSeries.log1p_series(N).scale(1 / a),
        "poisson_charlier",
    )
    generator = _combine(lambda n, j: binomial(n, j) * (-1) ** (n - j) * a ** (-j), falling_factorial)
    return PolynomialFamily(
        "poisson_charlier", generator, params, pair,
        s2_oracles={
            "signed_binomial": lambda n, k: binomial(n, k) * (-1) ** (n - k) * a ** (-k),
            "signed_binomial_double_sum": lambda n, k: _sum(
                (-1) ** (n - m) * a ** (-m) * binomial(n, m) * stirling1(m, l) * stirling2(l, k)
                for m in range(k, n + 1) for l in range(k, m + 1)),
        },
        s1_oracles={"binomial_stirling1_bell": lambda n, k: a ** k * binomial(n, k) * _sum(
            stirling1(n - k, l) * bell_number(l, a) for l in range(n - k + 1))},
    )


def _product_expansion(n: int):
    """
    Coefficients of p_n = sum_k B_k(x) B_{n-k}(x) over the Bernoulli
    polynomials: (2/(n+2)) C(n+2, m) B_{n-m} for m <= n-2, and n+1 at m = n.
    """
    coeffs = {m: Fraction(2, n + 2) * binomial(n + 2, m) * bernoulli_number(n - m) for m in range(n - 1)}
    coeffs[n] = Fraction(n + 1)
    return coeffs


def _product_s2(n, k):
    return _sum(c * _bernoulli_s2(m, k) for m, c in _product_expansion(n).items() if m >= k)


@lru_cache(maxsize=None)
def _product_s1_row(n: int):
    # back substitution in gamma_m = sum_k A[m][k] S1(n, k), A upper triangular
    gamma = [_bernoulli_s1(n, m) for m in range(n + 1)]
    expansions = [_product_expansion(k) for k in range(n + 1)]
    row = [Fraction(0)] * (n + 1)
    for m in range(n, -1, -1):
        known = _sum(expansions[k].get(m, 0) * row[k] for k in range(m + 1, n + 1))
        row[m] = (gamma[m] - known) / expansions[m][m]
    return tuple(row)


def _bernoulli_product(params):
    def generator(n):
        return sum((_bernoulli_poly(k) * _bernoulli_poly(n - k) for k in range(n + 1)), Polynomial())

    return PolynomialFamily(
        "bernoulli_product", generator, params, None,
        s2_oracles={"bernoulli_expansion": _product_s2},
        s1_oracles={"triangular_solve": lambda n, k: _product_s1_row(n)[k]},
    )


_BUILDERS = {
    "monomial": _monomial,
    "falling_deg": _falling_deg,
    "rising": _rising,
    "rising_deg": _rising_deg,
    "central": _central,
    "central_bell": _central_bell,
    "central_bell_deg": _central_bell_deg,
    "central_deg": _central_deg,
    "lah_bell": _lah_bell,
    "lah_bell_deg": _lah_bell_deg,
    "bell": _bell,
    "bell_partial_deg": _bell_partial_deg,
    "bell_full_deg": _bell_full_deg,
    "mittag_leffler": _mittag_leffler,
    "laguerre_m1": _laguerre_m1,
    "bernoulli": _bernoulli,
    "euler": _euler,
    "gould_hopper": _gould_hopper,
    "bernoulli2nd": _bernoulli2nd,
    "poisson_charlier": _poisson_charlier,
    "bernoulli_product": _bernoulli_product,
}


@lru_cache(maxsize=256)
def _family(family_id: str, frozen) -> PolynomialFamily:
    return _BUILDERS[family_id](dict(frozen))


def family(family_id: str, params: Optional[dict] = None) -> PolynomialFamily:
    """Look up a family by id; params holds lambda, r, s or a as needed."""
    if family_id not in FAMILY_PARAMS:
        raise ParameterError(f"Unknown family '{family_id}'")
    given = {name: value for name, value in (params or {}).items() if value is not None}
    required = FAMILY_PARAMS[family_id]
    unknown = sorted(set(given) - set(required))
    if unknown:
        raise ParameterError(f"Family '{family_id}' takes no parameter {', '.join(unknown)}")
    missing = [name for name in required if name not in given]
    if missing:
        raise ParameterError(f"Family '{family_id}' needs {', '.join(missing)}")
    frozen = _freeze_params(given)
    values = dict(frozen)
    if family_id == "gould_hopper" and values["r"] == 0:
        raise ParameterError("Gould-Hopper family needs r != 0")
    if family_id == "poisson_charlier" and values["a"] == 0:
        raise ParameterError("Poisson-Charlier family needs a != 0")
    return _family(family_id, frozen)


def sample_params(family_id: str, cfg=None) -> List[dict]:
    cfg = cfg or get_config()
    required = FAMILY_PARAMS.get(family_id)
    if required is None:
        raise ParameterError(f"Unknown family '{family_id}'")
    if not required:
        return [{}]
    if required == ("lambda",):
        return [{"lambda": lam} for lam in cfg.LAMBDA_SAMPLES]
    if required == ("r", "s"):
        return [{"r": r, "s": s} for r, s in cfg.RS_SAMPLES]
    return [{"a": a} for a in cfg.A_SAMPLES]


def all_families(cfg=None, ids=None) -> List[PolynomialFamily]:
    """Every family at every configured parameter sample."""
    cfg = cfg or get_config()
    return [family(fid, params) for fid in (ids or FAMILY_IDS) for params in sample_params(fid, cfg)]


def _scalar_checks(P: PolynomialFamily, N: int) -> List[Check]:
    if P.id == "bernoulli":
        return [Check.compare("closedform.value_at_zero", (0, N),
                              ((n, None, bernoulli_number(n), P.p(n)(0)) for n in range(N + 1)))]
    if P.id == "euler":
        return [Check.compare("closedform.value_at_zero", (0, N),
                              ((n, None, euler_number(n), P.p(n)(0)) for n in range(N + 1)))]
    if P.id == "bernoulli2nd":
        return [Check.compare("closedform.value_at_zero", (0, N),
                              ((n, None, bernoulli2nd_number(n), P.p(n)(0)) for n in range(N + 1)))]
    if P.id == "bell":
        return [Check.compare("closedform.bell_numbers", (0, N),
                              ((n, None, bell_number(n, a), P.p(n)(a))
                               for n in range(N + 1) for a in (1, 2, Fraction(-1, 2))))]
    if P.id == "bernoulli_product":
        def product_identity():
            for n in range(N + 1):
                got = sum((_bernoulli_poly(m) * c for m, c in _product_expansion(n).items()), Polynomial())
                yield n, None, P.p(n), got
        return [Check.compare("closedform.product_identity", (0, N), product_identity())]
    return []


def oracle_check(family_id: str, params: Optional[dict] = None, N: int = 8) -> Report:
    """Every closed form a family carries against the generic computation."""
    P = family(family_id, params)
    if not P.s2_oracles and not P.s1_oracles:
        raise ParameterError(f"Family '{family_id}' has no closed forms")
    logger.debug("closed forms for %s up to n=%d", P.label, N)
    checks = []
    for name, oracle in sorted(P.s2_oracles.items()):
        checks.append(Check.compare(
            f"closedform.s2.{name}", (0, N),
            ((n, k, s2_assoc(P, n, k), oracle(n, k)) for n in range(N + 1) for k in range(n + 1)),
        ))
    for name, oracle in sorted(P.s1_oracles.items()):
        checks.append(Check.compare(
            f"closedform.s1.{name}", (0, N),
            ((n, k, s1_assoc(P, n, k), oracle(n, k)) for n in range(N + 1) for k in range(n + 1)),
        ))
    if P.sheffer is not None:
        generated = sheffer_polys(P.sheffer, N)
        checks.append(Check.compare(
            "closedform.sheffer_generator", (0, N),
            ((n, None, P.p(n), generated[n]) for n in range(N + 1)),
        ))
    checks += _scalar_checks(P, N)
    return Report(suite="closedforms", family=P.label, checks=checks)
