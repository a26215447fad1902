# cardest. GNU GPL-3.0 (see LICENSE file)
"""
trials.py
Monte Carlo verification of the estimator's guarantee.

Each trial estimates the size of a synthetic set of known cardinality `n` and checks
the three ways the guarantee can fail: overestimate, underestimate and more samples
than the budget. The hard cap `n + ⌈k⌉` is not probabilistic, exceeding it aborts the batch.

Trial `i` of a batch seeded with `base_seed` always uses the stream `RngSeed(base_seed, i)`,
so results do not depend on execution order or on the number of workers.
"""
import logging
import math
import numbers
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from itertools import repeat

from cardest.bounds import Precision, compute_k_err, sample_budget, hard_cap as compute_hard_cap
from cardest.bounds.budget import _as_cardinality, _as_precision
from cardest.classes import run
from cardest.errors import ParameterDomainError, BudgetExhaustedError, TrialBatchError
from cardest.harness.stats import wilson_upper
from cardest.samplers import RngSeed, SyntheticSource

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["n", "delta_err", "p_err", "trials", "acc_fail_rate", "budget_exceed_rate", "joint_fail_rate",
               "wilson99", "mean_samples", "max_samples", "budget", "hard_cap"]
"""Columns of the sweep CSV, in order"""


@dataclass(frozen=True)
class TrialRecord:
    """Outcome of one estimator run against a set of known size"""
    trial_index: int
    estimate_value: float
    samples_used: int
    within_accuracy: bool
    """`(1-δ)n <= estimate <= (1+δ)n`, compared exactly"""
    within_budget: bool
    """`samples_used <= sample_budget(n, k)`"""
    within_hard_cap: bool
    """`samples_used <= n + ⌈k⌉`. Always True"""
    overestimate: bool = False
    underestimate: bool = False

    @property
    def failed(self) -> bool:
        """Joint failure: inaccurate or over budget"""
        return not (self.within_accuracy and self.within_budget)


@dataclass(frozen=True)
class VerificationReport:
    """
    Aggregate of a batch of trials at one `(n, precision)` point.
    Rates are fractions of `trials`; Wilson bounds are upper confidence bounds on the joint failure rate.
    """
    n: int
    precision: Precision
    trials: int
    base_seed: int
    k_err: float
    budget: int
    hard_cap: int
    accuracy_failures: int = 0
    overestimates: int = 0
    underestimates: int = 0
    budget_exceedances: int = 0
    joint_failures: int = 0
    hard_cap_violations: int = 0
    accuracy_failure_rate: float = 0.0
    overestimate_rate: float = 0.0
    underestimate_rate: float = 0.0
    budget_exceed_rate: float = 0.0
    joint_failure_rate: float = 0.0
    wilson_95_upper: float = 1.0
    wilson_99_upper: float = 1.0
    mean_samples: float = 0.0
    max_samples: int = 0
    mean_estimate: float = 0.0
    error: str = None
    """Why the batch failed, None when every trial ran"""
    records: tuple = field(default=(), repr=False, compare=False)
    """The `TrialRecord` of each trial, not serialized"""

    @classmethod
    def from_records(cls, n:int, precision:Precision, base_seed:int, records, error:str = None) -> "VerificationReport":
        """Aggregate trial records (in trial order) into a report"""
        k = compute_k_err(precision)
        base = dict(n=n, precision=precision, base_seed=base_seed, k_err=k.value,
                    budget=sample_budget(n, k), hard_cap=compute_hard_cap(n, k), error=error)
        records = tuple(records)
        trials = len(records)
        if trials == 0:
            return cls(trials=0, **base)

        accuracy_failures = sum(not r.within_accuracy for r in records)
        budget_exceedances = sum(not r.within_budget for r in records)
        joint_failures = sum(r.failed for r in records)
        overestimates = sum(r.overestimate for r in records)
        underestimates = sum(r.underestimate for r in records)
        samples = [r.samples_used for r in records]
        return cls(
            trials=trials,
            accuracy_failures=accuracy_failures,
            overestimates=overestimates,
            underestimates=underestimates,
            budget_exceedances=budget_exceedances,
            joint_failures=joint_failures,
            hard_cap_violations=sum(not r.within_hard_cap for r in records),
            accuracy_failure_rate=accuracy_failures / trials,
            overestimate_rate=overestimates / trials,
            underestimate_rate=underestimates / trials,
            budget_exceed_rate=budget_exceedances / trials,
            joint_failure_rate=joint_failures / trials,
            wilson_95_upper=wilson_upper(joint_failures, trials, 0.95),
            wilson_99_upper=wilson_upper(joint_failures, trials, 0.99),
            mean_samples=sum(samples) / trials,
            max_samples=max(samples),
            mean_estimate=math.fsum(r.estimate_value for r in records) / trials,
            records=records,
            **base,
        )

    @property
    def passed(self) -> bool:
        """True when `passes(self)`"""
        return passes(self)

    def as_json(self) -> dict:
        """Flat dict of the report, precision expanded, records left out"""
        data = asdict(self)
        data.pop("records")
        data.pop("precision")
        data.update(self.precision.as_json())
        data["passed"] = self.passed
        return data

    def as_row(self) -> dict:
        """One sweep CSV row, keys are `CSV_COLUMNS`"""
        return {
            "n": self.n,
            "delta_err": self.precision.delta_err,
            "p_err": self.precision.p_err,
            "trials": self.trials,
            "acc_fail_rate": self.accuracy_failure_rate,
            "budget_exceed_rate": self.budget_exceed_rate,
            "joint_fail_rate": self.joint_failure_rate,
            "wilson99": self.wilson_99_upper,
            "mean_samples": self.mean_samples,
            "max_samples": self.max_samples,
            "budget": self.budget,
            "hard_cap": self.hard_cap,
        }


def passes(report:VerificationReport, confidence:float = 0.99) -> bool:
    """Verification criterion: the Wilson upper bound on the joint failure rate is below `p_err`,
    the hard cap was never exceeded and the batch completed.
    """
    if report.error is not None or report.trials == 0 or report.hard_cap_violations:
        return False
    return wilson_upper(report.joint_failures, report.trials, confidence) < report.precision.p_err


def run_trial(n:int, p:Precision, base_seed:int, trial_index:int) -> TrialRecord:
    """Run one estimation against `synthetic_source(n)` on stream `(base_seed, trial_index)`.

    Raises:
        BudgetExhaustedError: the estimator did not stop within `n + ⌈k⌉` samples (a bug, never a chance event)
    """
    k = compute_k_err(p)
    cap = compute_hard_cap(n, k)
    source = SyntheticSource(n, seed=RngSeed(base_seed, trial_index))
    estimate = run(p, source, hard_cap=cap)

    # exact rational comparison, w/(s-d) against (1±δ)n
    value = estimate.fraction
    delta = Fraction(p.delta_err)
    overestimate = value > (1 + delta) * n
    underestimate = value < (1 - delta) * n
    return TrialRecord(
        trial_index=trial_index,
        estimate_value=estimate.value,
        samples_used=estimate.samples_used,
        within_accuracy=not (overestimate or underestimate),
        within_budget=estimate.samples_used <= sample_budget(n, k),
        within_hard_cap=estimate.samples_used <= cap,
        overestimate=overestimate,
        underestimate=underestimate,
    )


def _run_trial_star(args) -> TrialRecord:
    return run_trial(*args)


def _check_trials(trials):
    if isinstance(trials, bool) or not isinstance(trials, numbers.Integral) or trials < 1:
        raise ParameterDomainError(f"trials must be a positive integer, got {trials}")
    return int(trials)


def run_trials(n:int, p:Precision, trials:int, base_seed:int, workers:int = 1) -> VerificationReport:
    """Run `trials` independent estimations against a set of `n` elements and aggregate them.

    ```
    report = run_trials(10_000, Precision(0.2, 0.1), trials=2000, base_seed=42)
    report.joint_failure_rate   # well below 0.1
    report.max_samples          # never above 10_000 + 341
    ```

    Args:
        n (int): cardinality of the synthetic set
        p (Precision): accuracy requirement
        trials (int): number of trials, at least 1
        base_seed (int): seed of the batch, trial i uses stream i
        workers (int, optional): processes to spread trials on. Defaults to 1 (in process).

    Raises:
        ParameterDomainError: invalid arguments
        TrialBatchError: a trial failed or exceeded the hard cap, `error.report` holds the trials completed before

    Returns:
        VerificationReport: aggregated report
    """
    n = _as_cardinality(n)
    p = _as_precision(p)
    trials = _check_trials(trials)
    RngSeed(base_seed)  # validates the seed before any work

    records = []
    jobs = zip(repeat(n), repeat(p), repeat(base_seed), range(trials))
    logger.debug("running %d trials at n=%d %s seed=%d on %d worker(s)", trials, n, p, base_seed, workers)
    try:
        if workers is None or workers <= 1:
            for job in jobs:
                records.append(_run_trial_star(job))
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                # map yields in submission order whatever the completion order
                for record in executor.map(_run_trial_star, jobs, chunksize=max(1, trials // (8 * workers))):
                    records.append(record)
    except BudgetExhaustedError as er:
        partial = VerificationReport.from_records(n, p, base_seed, records, error=str(er)) if records else None
        raise TrialBatchError(f"Hard cap exceeded on trial {len(records)}: {er}", report=partial) from er
    except Exception as er:
        partial = VerificationReport.from_records(n, p, base_seed, records, error=str(er)) if records else None
        raise TrialBatchError(f"Trial {len(records)} failed: {er}", report=partial) from er

    report = VerificationReport.from_records(n, p, base_seed, records)
    logger.info("n=%d delta_err=%s p_err=%s: joint failure rate %.4f over %d trials (wilson99 %.4f)",
                n, p.delta_err, p.p_err, report.joint_failure_rate, trials, report.wilson_99_upper)
    return report


def _as_grid_point(point) -> tuple[int, Precision]:
    if len(point) == 2:
        n, p = point
        return _as_cardinality(n), _as_precision(p)
    if len(point) == 3:
        n, delta_err, p_err = point
        return _as_cardinality(n), Precision(delta_err, p_err)
    raise ParameterDomainError(f"A grid point is (n, Precision) or (n, delta_err, p_err), got {point}")


def _sweep_point(args) -> VerificationReport:
    n, p, trials, base_seed = args
    try:
        return run_trials(n, p, trials, base_seed)
    except TrialBatchError as er:
        logger.warning("sweep point n=%d %s failed: %s", n, p, er)
        if er.report is not None:
            return er.report
        return VerificationReport.from_records(n, p, base_seed, [], error=str(er))


def sweep(grid, trials:int, base_seed:int, workers:int = 1) -> list[VerificationReport]:
    """Run `run_trials` on every grid point. A point that fails while running gets a report
    with `error` set and does not stop the others. Points are validated before any of them
    runs: a malformed point has no `n` or `Precision` to report on, so it rejects the whole grid.

    Args:
        grid (list): points as `(n, Precision)` or `(n, delta_err, p_err)`
        trials (int): trials per point
        base_seed (int): seed used for every point
        workers (int, optional): processes to spread points on. Defaults to 1.

    Raises:
        ParameterDomainError: empty grid or malformed point, raised before any trial runs

    Returns:
        list: one `VerificationReport` per point, in grid order
    """
    grid = [_as_grid_point(point) for point in grid]
    if not grid:
        raise ParameterDomainError("Cannot sweep an empty grid")
    trials = _check_trials(trials)
    RngSeed(base_seed)

    jobs = [(n, p, trials, base_seed) for n, p in grid]
    if workers is None or workers <= 1:
        return [_sweep_point(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(_sweep_point, jobs))


def report_rows(reports) -> list[dict]:
    """Sweep CSV rows, one per report"""
    return [report.as_row() for report in reports]
