# cardest. GNU GPL-3.0 (see LICENSE file)
"""
estimator.py

File with the estimator state machine, the core of cardest.
Samples are fed one at a time; the estimator keeps three counters

- `s` samples taken so far
- `d` distinct samples taken so far
- `w` samples taken so far, each weighted by the value `d` had when it was taken

and stops once it has seen `s - d >= k_err` repeats. The estimate is `w / (s - d)`:
each sample is a repeat with probability `d/|I|`, so the expected number of repeats
is `w/|I|`, and the estimate is the `|I|` matching that expectation to the observed count.
"""
import logging
import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable

from cardest.bounds import Precision, KErr, compute_k_err
from cardest.errors import ParameterDomainError, EstimatorStateError, BudgetExhaustedError

logger = logging.getLogger(__name__)

SampleId = Hashable
"""Identity of a sampled element. Anything hashable with exact equality (int, str, bytes...)"""


@dataclass(frozen=True)
class Estimate:
    """
    Output of a terminated estimator, the exact rational `numerator/denominator`.

    Args:
        numerator (int): `w` at termination
        denominator (int): `s - d` at termination (number of repeats)
        samples_used (int): `s`, number of samples drawn
        distinct (int): `d`, number of distinct samples drawn
    """
    numerator: int
    denominator: int
    samples_used: int
    distinct: int
    value: float = field(init=False)
    """`numerator/denominator` rounded to the nearest float"""

    def __post_init__(self):
        if self.denominator < 1:
            raise ParameterDomainError(f"An estimate requires at least one repeat, got denominator={self.denominator}")
        # int/int true division is correctly rounded, even past 2**53
        object.__setattr__(self, "value", self.numerator / self.denominator)

    @property
    def fraction(self) -> Fraction:
        """The estimate as an exact `Fraction`"""
        return Fraction(self.numerator, self.denominator)

    def as_json(self) -> dict:
        """dict representation (value, exact fraction and sampling statistics)"""
        return {
            "estimate": self.value,
            "numerator": self.numerator,
            "denominator": self.denominator,
            "samples_used": self.samples_used,
            "distinct": self.distinct,
        }


class EstimatorState:
    """
    Live state of one estimation run. Single owner, not thread safe.

    ```
    state = EstimatorState(Precision(0.5, 0.5))
    while not state.terminated:
        state.observe(source.draw())
    estimate = state.finish()
    ```

    Only membership of past samples is stored (a `set`), never the sample sequence.
    Counters are python ints, `w` can grow past 64 bits without overflowing.

    Args:
        precision (Precision): accuracy requirement, defines `k`
    """
    def __init__(self, precision:Precision):
        """New empty state"""
        if not isinstance(precision, Precision):
            raise ParameterDomainError(f"Expected a Precision, not {type(precision).__name__}")

        self.precision = precision
        """Accuracy requirement of this run"""

        self.k: KErr = compute_k_err(precision)
        """Repeat threshold of the stopping rule"""

        self.seen: set = set()
        """Distinct samples seen so far"""

        self._s = 0
        self._w = 0
        self._terminated = False

    @property
    def s(self) -> int:
        """Number of samples taken so far"""
        return self._s

    @property
    def d(self) -> int:
        """Number of distinct samples taken so far"""
        return len(self.seen)

    @property
    def w(self) -> int:
        """Sum over samples of the number of distinct samples seen strictly before each one"""
        return self._w

    @property
    def repeats(self) -> int:
        """`s - d`, samples that were already seen when drawn"""
        return self._s - len(self.seen)

    @property
    def terminated(self) -> bool:
        """True once `s - d >= k`. Never goes back to False"""
        return self._terminated

    def observe(self, x:SampleId) -> "EstimatorState":
        """Feed one sample. Returns the state itself so calls can be chained.

        `w` is increased by the distinct count from *before* the sample,
        then `s` and `d` are updated and the stopping rule is evaluated.

        Args:
            x (SampleId): the sampled element

        Raises:
            EstimatorStateError: the estimator already terminated
        """
        if self._terminated:
            raise EstimatorStateError(f"Cannot observe after termination (s={self._s}, repeats={self.repeats})")
        seen = self.seen
        d_before = len(seen)
        seen.add(x)  # raises TypeError on unhashable samples, before any counter moves
        self._w += d_before
        self._s += 1
        # s - d is an int, comparing it with the float threshold is exact
        if self._s - len(seen) >= self.k.value:
            self._terminated = True
        return self

    def finish(self) -> Estimate:
        """Estimate `w / (s - d)` of the terminated run.

        Raises:
            EstimatorStateError: the stopping rule has not fired yet
        """
        if not self._terminated:
            raise EstimatorStateError(f"Cannot finish before termination: {self.repeats} repeats, needs {self.k.ceil}")
        return Estimate(numerator=self._w, denominator=self.repeats, samples_used=self._s, distinct=self.d)

    def as_json(self) -> dict:
        """Counters as a dict (used for diagnostics of partial runs)"""
        return {"s": self.s, "d": self.d, "w": self.w, "k_err": self.k.value, "terminated": self.terminated}

    def __str__(self) -> str:
        return f"EstimatorState(s={self.s}, d={self.d}, w={self.w}, k={self.k.value:.4f}, terminated={self.terminated})"


def new_estimator(p:Precision) -> EstimatorState:
    """Fresh state with all counters at 0 for precision `p`"""
    return EstimatorState(p)


def observe(st:EstimatorState, x:SampleId) -> EstimatorState:
    """Function form of `EstimatorState.observe`"""
    return st.observe(x)


def finish(st:EstimatorState) -> Estimate:
    """Function form of `EstimatorState.finish`"""
    return st.finish()


def replay(p:Precision, samples:Iterable[SampleId]) -> EstimatorState:
    """Feed a finite sequence of samples to a new estimator.
    Stops at termination, extra samples are ignored. Check `state.terminated`
    to know if the sequence ran out first.
    """
    state = EstimatorState(p)
    for x in samples:
        state.observe(x)
        if state.terminated:
            break
    return state


def expected_repeats(st:EstimatorState, n:int) -> float:
    """Expected number of repeats `w/n` given the run so far and a cardinality `n`"""
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 1:
        raise ParameterDomainError(f"n must be a positive integer, got {n}")
    return st.w / n


def _as_draw(source) -> Callable[[], SampleId]:
    draw = getattr(source, "draw", source)
    if not callable(draw):
        raise TypeError(f"Expected a SamplingSource or a callable, not {type(source).__name__}")
    return draw


def run(p:Precision, draw, hard_cap:int = None) -> Estimate:
    """Run the estimator until it stops.

    The accuracy guarantee holds only when every draw is uniform over a fixed finite set
    and independent of previous draws. Nothing here checks it.

    ```
    from cardest.samplers import synthetic_source
    estimate = run(Precision(0.2, 0.1), synthetic_source(10_000))
    estimate.value  # within 8000..12000 with probability > 0.9
    ```

    Args:
        p (Precision): accuracy requirement
        draw (SamplingSource|callable): source of samples, or any zero-argument callable returning one
        hard_cap (int, optional): maximum number of samples. Defaults to None (no cap).

    Raises:
        BudgetExhaustedError: `hard_cap` samples were drawn without terminating
        Exception: anything raised by the source propagates unchanged

    Returns:
        Estimate: the estimate and its sampling statistics
    """
    state = EstimatorState(p)
    draw = _as_draw(draw)
    if hard_cap is not None:
        if isinstance(hard_cap, bool) or not isinstance(hard_cap, numbers.Integral) or hard_cap < 1:
            raise ParameterDomainError(f"hard_cap must be a positive integer, got {hard_cap}")

    observe_ = state.observe
    while not state.terminated:
        if hard_cap is not None and state.s >= hard_cap:
            logger.debug("hard cap %d reached: %s", hard_cap, state)
            raise BudgetExhaustedError(state, hard_cap)
        observe_(draw())

    return state.finish()


class CardinalityEstimator:
    """
    Estimator bound to a precision, reusable over many sources.

    ```
    estimator = CardinalityEstimator(Precision(0.3, 0.2))
    a = estimator(synthetic_source(1000))
    b = estimator.run(file_source("lines.txt"))
    ```

    Args:
        precision (Precision): accuracy requirement
        hard_cap (int, optional): maximum number of samples per run. Defaults to None.
    """
    def __init__(self, precision:Precision, hard_cap:int = None):
        self.precision = precision
        self.hard_cap = hard_cap
        self.k = compute_k_err(precision)
        """Repeat threshold shared by every run"""

    def run(self, source) -> Estimate:
        """Estimate the cardinality of the set behind `source`. See `run()`"""
        return run(self.precision, source, hard_cap=self.hard_cap)

    __call__ = run
