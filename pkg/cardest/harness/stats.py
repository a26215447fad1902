# cardest. GNU GPL-3.0 (see LICENSE file)
"""
stats.py
Statistics used to judge Monte Carlo results without flaky thresholds.
"""
import math
import numbers

from scipy import stats

from cardest.errors import ParameterDomainError
from cardest.samplers.sources import SamplingSource, draw_counts


def _check_counts(successes, trials, confidence):
    for name, value in (("successes", successes), ("trials", trials)):
        if isinstance(value, bool) or not isinstance(value, numbers.Integral):
            raise ParameterDomainError(f"{name} must be an integer, not {type(value).__name__}")
    if trials < 1:
        raise ParameterDomainError(f"trials must be at least 1, got {trials}")
    if not 0 <= successes <= trials:
        raise ParameterDomainError(f"successes must be in [0, {trials}], got {successes}")
    if not 0 < confidence < 1:
        raise ParameterDomainError(f"confidence must be in (0,1), got {confidence}")


def wilson_interval(successes:int, trials:int, confidence:float = 0.95) -> tuple[float, float]:
    """Two-sided Wilson score interval of a binomial proportion.

    Unlike the normal approximation it stays inside [0,1] and behaves with 0 or `trials` successes.

    ```
    wilson_interval(0, 100, 0.95)    # (0.0, 0.0370)
    wilson_interval(50, 100, 0.95)   # (0.4038, 0.5962)
    ```

    Args:
        successes (int): number of successes, in `[0, trials]`
        trials (int): number of trials, at least 1
        confidence (float, optional): confidence level. Defaults to 0.95.

    Raises:
        ParameterDomainError: counts or confidence out of range

    Returns:
        tuple: (lower, upper)
    """
    _check_counts(successes, trials, confidence)
    z = stats.norm.ppf(1 - (1 - confidence) / 2)
    z2 = z * z
    p_hat = successes / trials

    denominator = 1 + z2 / trials
    center = (p_hat + z2 / (2 * trials)) / denominator
    margin = (z / denominator) * math.sqrt(p_hat * (1 - p_hat) / trials + z2 / (4 * trials * trials))

    lower = 0.0 if successes == 0 else max(0.0, center - margin)
    upper = 1.0 if successes == trials else min(1.0, center + margin)
    return (float(lower), float(upper))


def wilson_upper(successes:int, trials:int, confidence:float = 0.95) -> float:
    """Upper end of `wilson_interval`"""
    return wilson_interval(successes, trials, confidence)[1]


def chi_square_uniformity(source:SamplingSource, draws:int) -> tuple[float, float]:
    """Pearson χ² test of `draws` draws against the uniform distribution over the source's set.

    Args:
        source (SamplingSource): source with a `known_cardinality` of at least 2
        draws (int): number of draws

    Returns:
        tuple: (statistic, p_value)
    """
    n = source.known_cardinality
    if n is None or n < 2:
        raise ParameterDomainError(f"A uniformity test needs a known cardinality of at least 2, got {n}")
    counts = draw_counts(source, draws)
    if len(counts) > n:
        raise ParameterDomainError(f"Source drew {len(counts)} distinct elements but claims {n}")
    # elements never drawn count as zeros, the order of categories does not matter
    observed = list(counts.values()) + [0] * (n - len(counts))
    result = stats.chisquare(observed)
    return float(result.statistic), float(result.pvalue)
