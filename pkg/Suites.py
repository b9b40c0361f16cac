import logging
import random
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from config import get_config
from Helpers import ParameterError, random_nonzero_rational, random_rational
from Models import Check, PolynomialFamily, Report
from Associated import (
    check_bar_recurrences,
    check_gf_routes,
    check_log_exp_inverse,
    check_reconstruction,
    check_s1_routes,
    check_s2_routes,
    check_sign_reflection,
    monomial_coefficient_roundtrip,
    verify_orthogonality,
)
from Eulerian import classical_eulerian_checks, eulerian_checks
from Families import FAMILY_IDS, all_families, family, oracle_check, sample_params
from Numbers import classical_checks
from Series import FormalPowerSeries, central_delta_inverse, sqrt_t_squared_plus_four
from Umbral import (
    check_associated_transfer,
    check_binomial_identity,
    check_biorthogonality,
    check_generators_agree,
    check_lowering,
    check_scaling,
)

logger = logging.getLogger(__name__)

SUITES = ("orthogonality", "closedforms", "eulerian", "umbral")
CLASSICAL = "classical"
SERIES = "series"


def _orthogonality(P: PolynomialFamily, N: int) -> Report:
    report = verify_orthogonality(P, N)
    checks = list(report.checks)
    checks += [check_s2_routes(P, N), check_s1_routes(P, N)]
    checks += check_gf_routes(P, N)
    checks += check_bar_recurrences(P, N)
    checks += check_reconstruction(P, N)
    checks += check_sign_reflection(P, N)
    roundtrips = [monomial_coefficient_roundtrip(P, n) for n in range(N + 1)]
    failed = next((check for check in roundtrips if check.failed), None)
    checks.append(failed.model_copy(update={"n_range": (0, N)}) if failed else
                  Check(identity_id="associated.monomial_coefficient_roundtrip", n_range=(0, N), status="pass"))
    return Report(suite="orthogonality", family=P.label, checks=checks)


def _umbral(P: PolynomialFamily, N: int) -> Report:
    pair = P.sheffer
    if pair is None:
        checks = [Check.skipped(identity_id, (0, N), "no Sheffer pair") for identity_id in (
            "umbral.biorthogonality", "umbral.lowering", "umbral.binomial_type",
            "umbral.associated_transfer", "umbral.closed_form_inverse",
        )]
        return Report(suite="umbral", family=P.label, checks=checks)
    checks = check_generators_agree(pair, N)
    checks += [
        check_biorthogonality(pair, N),
        check_lowering(pair, N),
        check_binomial_identity(pair, N),
        check_associated_transfer(pair, N),
        check_log_exp_inverse(pair.f(N), N, "umbral.log_exp_inverse"),
    ]
    if pair.fbar_gen is not None:
        f = pair.f(N)
        checks.append(Check.compare("umbral.closed_form_inverse", (0, N),
                                    [(N, None, f.revert(), pair.fbar(N))]))
    return Report(suite="umbral", family=P.label, checks=checks)


def _random_delta(rng: random.Random, order: int) -> FormalPowerSeries:
    tail = [random_rational(rng) for _ in range(order - 1)]
    return FormalPowerSeries([0, random_nonzero_rational(rng)] + tail, order)


def series_checks(cfg=None) -> Report:
    """Reversion, exp/log and power identities on seeded random series."""
    cfg = cfg or get_config()
    rng = random.Random(cfg.RANDOM_SEED)
    order = cfg.SERIES_ORDER
    deltas = [_random_delta(rng, order) for _ in range(cfg.DELTA_SERIES)]
    t = FormalPowerSeries.t(order)

    def reversion():
        for i, f in enumerate(deltas):
            fbar = f.revert()
            yield i, None, t, f.compose(fbar)
            yield i, None, t, fbar.compose(f)

    def exp_log():
        for i, f in enumerate(deltas):
            yield i, None, f, f.exp().log()

    def rational_powers():
        for i, f in enumerate(deltas):
            u = 1 + f
            a, b = random_rational(rng), random_rational(rng)
            yield i, None, u.pow_rational(a + b), u.pow_rational(a) * u.pow_rational(b)

    sqrt = sqrt_t_squared_plus_four(order)
    checks = [
        Check.compare("series.reversion", (0, order), reversion()),
        Check.compare("series.exp_log_inverse", (0, order), exp_log()),
        Check.compare("series.rational_power_additivity", (0, order), rational_powers()),
        Check.compare("series.sqrt_identity", (0, order), [
            (order, None, FormalPowerSeries((4, 0, 1), order), sqrt * sqrt),
            (order, None, central_delta_inverse(order), ((t + sqrt) / 2).log() * 2),
        ]),
        check_scaling(rng),
    ]
    return Report(suite="umbral", family=SERIES, checks=checks)


def _run_one(suite: str, target, N: int, cfg) -> Report:
    label = target if isinstance(target, str) else target.label
    logger.debug("suite %s on %s up to n=%d", suite, label, N)
    if target == CLASSICAL:
        if suite == "closedforms":
            return Report(suite=suite, family=CLASSICAL,
                          checks=classical_checks(N, cfg.LAMBDA_SAMPLES, cfg.RS_SAMPLES))
        return Report(suite=suite, family=CLASSICAL, checks=classical_eulerian_checks(max(N, 10)))
    if target == SERIES:
        return series_checks(cfg)
    if suite == "orthogonality":
        return _orthogonality(target, N)
    if suite == "closedforms":
        return oracle_check(target.id, dict(target.params), N)
    if suite == "eulerian":
        return Report(suite=suite, family=target.label, checks=eulerian_checks(target, N))
    return _umbral(target, N)


def _applies(suite: str, target) -> bool:
    if target == CLASSICAL:
        return suite in ("closedforms", "eulerian")
    if target == SERIES:
        return suite == "umbral"
    return True


def _targets(family_spec: str, params: Optional[dict], cfg) -> list:
    given = {name: value for name, value in (params or {}).items() if value is not None}
    if given and family_spec in ("all", CLASSICAL, SERIES):
        raise ParameterError(f"Parameters {', '.join(sorted(given))} need a single family, not '{family_spec}'")
    if family_spec == "all":
        return all_families(cfg) + [CLASSICAL, SERIES]
    if family_spec in (CLASSICAL, SERIES):
        return [family_spec]
    if family_spec not in FAMILY_IDS:
        raise ParameterError(f"Unknown family '{family_spec}'")
    if given:
        return [family(family_spec, given)]
    return [family(family_spec, sample) for sample in sample_params(family_spec, cfg)]


def run_suite(suite: str, family_spec: str = "all", max_n: Optional[int] = None,
              params: Optional[dict] = None, workers: Optional[int] = None) -> List[Report]:
    """
    Run one suite (or all of them) over a family id, "classical", "series"
    or "all". Reports come back sorted by family label, then suite; checks
    inside a report are sorted by identity id.
    """
    cfg = get_config()
    suites = SUITES if suite == "all" else (suite,)
    for name in suites:
        if name not in SUITES:
            raise ParameterError(f"Unknown suite '{name}'")
    N = cfg.MAX_N if max_n is None else max_n
    if N < 0:
        raise ParameterError(f"max_n must be nonnegative, got {N}")
    umbral_n = cfg.UMBRAL_MAX_N if max_n is None else max_n
    targets = _targets(family_spec, params, cfg)
    jobs = [(name, target, umbral_n if name == "umbral" else N)
            for name in suites for target in targets if _applies(name, target)]
    if not jobs:
        raise ParameterError(f"Suite '{suite}' has nothing to run for '{family_spec}'")

    workers = cfg.WORKERS if workers is None else workers
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda job: _run_one(*job, cfg), jobs))
    else:
        results = [_run_one(*job, cfg) for job in jobs]

    reports = []
    for report in results:
        for check in report.failures():
            logger.warning("%s / %s: %s failed at %s", report.suite, report.family,
                           check.identity_id, check.first_failure)
        checks = sorted(report.checks, key=lambda check: check.identity_id)
        reports.append(report.model_copy(update={"checks": checks}))
    return sorted(reports, key=lambda report: (report.family, report.suite))
