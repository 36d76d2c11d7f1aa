"""
Period recovery from one-qubit marginals

1. l: first qubit from 0 with a_z > eps, so the odd part r' of the period lies in [2^l, 2^(l+1))
2. q': offset of the first qubit from the last with a_z > eps, so r = 2^q' r'
3. one or two candidates left: pick the closest approximate a_z
4. otherwise solve a_z^(q*) - 2^q' / (2 rho) = 0 by the secant method from the middle
   of the candidate range and round to the nearest candidate
5. validate against the oracle and add qubits until two rounds agree
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from time import time

from qpf_rdm.analysis.model import ApproxModel
from qpf_rdm.config import DEFAULT_SETTINGS, Settings
from qpf_rdm.exceptions import (
    CapacityError,
    DegenerateProfileError,
    DomainArgumentError,
    NoConvergenceError,
    RefineError,
)
from qpf_rdm.models.domain import Domain
from qpf_rdm.models.finder import AccuracyReport, FinderResult, PeriodHypothesis
from qpf_rdm.models.oracle import PeriodicFunction
from qpf_rdm.models.profiler import ProfileBuilder
from qpf_rdm.models.rdm import MarginalProfile
from qpf_rdm.search.builders import DirectProfileBuilder
from qpf_rdm.search.secant import secant

logger = logging.getLogger(__name__)


def hypothesize(profile: MarginalProfile, eps: float = DEFAULT_SETTINGS.eps_zero) -> PeriodHypothesis:
    """
    Candidate family compatible with the qubits carrying a_z > eps
    """
    signal = profile.signal_qubits(eps)
    if not signal:
        raise DegenerateProfileError(f"no qubit of the {profile.n}-qubit profile has a_z > {eps}")

    n = profile.n
    l = signal[0]
    qprime = n - 1 - signal[-1]
    scale = 1 << qprime

    candidates = [
        scale * odd
        for odd in range((1 << l) | 1, 2 << l, 2)
        if scale * odd < (1 << n)
    ]
    return PeriodHypothesis(n=n, l=l, qprime=qprime, candidates=candidates)


def nearest_candidate(candidates: list[int], rho: float) -> int:
    """Closest candidate to rho, ties going to the smaller one"""
    return min(candidates, key=lambda r: (abs(r - rho), r))


def secant_refine(
    profile: MarginalProfile,
    hyp: PeriodHypothesis,
    settings: Settings = DEFAULT_SETTINGS,
) -> FinderResult:
    """
    Picks the period among the hypothesis candidates from a_z of qubit q*
    Raises:
        RefineError: a_z^(q*) carries no signal
        NoConvergenceError: the secant iterate left [1, 4 N]
    """
    if not hyp.candidates:
        raise RefineError("hypothesis holds no candidate period")

    signal = float(profile.az[hyp.q_star])
    if signal <= settings.eps_zero:
        raise RefineError(f"a_z of qubit {hyp.q_star} is {signal!r}, no usable signal")

    model = ApproxModel(n=hyp.n, qprime=hyp.qprime)
    trace = {
        "step": "refine",
        "q_star": hyp.q_star,
        "signal": signal,
        "candidate_min": hyp.candidates[0],
        "candidate_max": hyp.candidates[-1],
        "candidate_count": len(hyp.candidates),
    }

    if len(hyp.candidates) <= 2:
        period = min(hyp.candidates, key=lambda r: (abs(signal - model.az(r)), r))
        trace.update({"method": "lookup", "iterates": []})
        return FinderResult(period=period, iterations=0, qubits_used=hyp.n, trace=[trace])

    start = (hyp.candidates[0] + hyp.candidates[-1]) / 2
    result = secant(
        lambda rho: signal - model.az_smooth(rho),
        start,
        start + 2 * hyp.scale,
        step_tolerance=settings.secant_step_tolerance,
        max_iterations=settings.secant_max_iterations,
        bounds=(1.0, 4.0 * (1 << hyp.n)),
    )
    period = nearest_candidate(hyp.candidates, result.root)
    trace.update({"method": "secant", "root": result.root, "iterates": result.iterates})
    return FinderResult(
        period=period, iterations=result.iterations, qubits_used=hyp.n, trace=[trace]
    )


def recover(profile: MarginalProfile, settings: Settings = DEFAULT_SETTINGS) -> FinderResult:
    """
    Steps 1-4 on one profile
    """
    hyp = hypothesize(profile, settings.eps_zero)
    result = secant_refine(profile, hyp, settings)
    hypothesis = {
        "step": "hypothesis",
        "n": hyp.n,
        "l": hyp.l,
        "qprime": hyp.qprime,
        "candidate_range": [hyp.candidates[0], hyp.candidates[-1]],
    }
    result.trace = [hypothesis] + result.trace
    return result


class PeriodFinder:
    def __init__(
        self, builder: ProfileBuilder | None = None, settings: Settings = DEFAULT_SETTINGS
    ) -> None:
        """
        Interface to recover the period of an oracle from its marginals
        It receives a profile builder and uses it to produce the a_z values of every round
        """
        self.builder = builder or DirectProfileBuilder(settings=settings)
        self.settings = settings
        self.search_start: float | None = None
        self.search_end: float | None = None

    def find_period(self, f: PeriodicFunction, n_base: int, max_extra: int) -> FinderResult:
        """
        Repeats the recovery with n_base, n_base + 1, ... qubits until two consecutive
        rounds validate the same period
        Args:
            f (PeriodicFunction): oracle with unknown period below 2^n_base
            n_base (int): smallest first-register size
            max_extra (int): most qubits added on top of n_base
        """
        if f.on(Domain(n=n_base)).fundamental_period() >= 1 << n_base:
            raise DomainArgumentError(f"period of {f.spec} does not fit in {n_base} bits")

        self.search_start = time()
        trace: list[dict] = list()
        last: FinderResult | None = None
        previous_period: int | None = None

        for extra in range(max_extra + 1):
            domain = Domain(n=n_base + extra)
            profile = self.builder.build_profile(f, domain)

            try:
                result = recover(profile, self.settings)
            except NoConvergenceError as error:
                logger.warning("round with %d qubits failed: %s", domain.n, error)
                trace.append({"step": "round", "extra": extra, "n": domain.n, "error": str(error)})
                previous_period = None
                continue

            valid = f.on(domain).validate_period(
                result.period,
                samples=self.settings.validate_samples,
                exhaustive_limit=self.settings.validate_exhaustive_limit,
            )
            trace.extend(result.trace)
            trace.append(
                {
                    "step": "round",
                    "extra": extra,
                    "n": domain.n,
                    "period": result.period,
                    "valid": valid,
                }
            )
            logger.debug("n=%d proposes r=%d (valid=%s)", domain.n, result.period, valid)

            if not valid:
                previous_period = None
                continue

            last = result
            if previous_period == result.period:
                break
            previous_period = result.period

        self.search_end = time()
        if last is None:
            return FinderResult(
                period=None, iterations=0, qubits_used=n_base + max_extra, trace=trace
            )

        return FinderResult(
            period=last.period,
            iterations=last.iterations,
            qubits_used=last.qubits_used,
            trace=trace,
        )


def find_period(
    f: PeriodicFunction,
    n_base: int,
    max_extra: int,
    builder: ProfileBuilder | None = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> FinderResult:
    return PeriodFinder(builder, settings).find_period(f, n_base, max_extra)


def recovers_period(n: int, r: int, settings: Settings = DEFAULT_SETTINGS) -> bool:
    """
    Whether steps 1-4 on the exact n-qubit profile of the sawtooth with period r give back r
    """
    domain = Domain(n=n)
    f = PeriodicFunction.sawtooth(domain, r)
    profile = DirectProfileBuilder(settings=settings).build_profile(f, domain)
    try:
        return recover(profile, settings).period == r
    except (DegenerateProfileError, RefineError, NoConvergenceError):
        return False


def _recovers_period_task(task: tuple[int, int, Settings]) -> bool:
    return recovers_period(*task)


def accuracy_sweep(
    bits: int,
    extra_range: list[int],
    settings: Settings = DEFAULT_SETTINGS,
    periods: list[int] | None = None,
) -> list[AccuracyReport]:
    """
    Fraction of periods recovered exactly with a fixed total of bits + extra qubits
    Args:
        bits (int): periods range over [1, 2^bits)
        extra_range (list[int]): extra qubit counts to evaluate
        settings (Settings): thresholds and worker count
        periods (list[int]): restrict the sweep to these periods
    """
    if not extra_range:
        return list()
    if bits + max(extra_range) > settings.direct_limit:
        raise CapacityError(
            f"bits + extra = {bits + max(extra_range)} exceeds {settings.direct_limit} qubits"
        )

    if periods is None:
        periods = list(range(1, 1 << bits))
    elif not periods:
        return list()
    if any(not 1 <= r < 1 << bits for r in periods):
        raise DomainArgumentError(f"periods must lie in [1, {1 << bits})")

    reports: list[AccuracyReport] = list()
    for extra in extra_range:
        n = bits + extra
        tasks = [(n, r, settings) for r in periods]

        start = time()
        if settings.threads > 1:
            with ProcessPoolExecutor(max_workers=settings.threads) as executor:
                outcomes = list(executor.map(_recovers_period_task, tasks, chunksize=8))
        else:
            outcomes = [_recovers_period_task(task) for task in tasks]

        report = AccuracyReport(
            bits=bits, extra=extra, total_periods=len(periods), correct=sum(outcomes)
        )
        logger.info(
            "bits=%d extra=%d: %d/%d recovered in %.2fs",
            bits, extra, report.correct, report.total_periods, time() - start,
        )
        reports.append(report)

    return reports
