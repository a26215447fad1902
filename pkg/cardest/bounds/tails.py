# cardest. GNU GPL-3.0 (see LICENSE file)
"""
tails.py
Chernoff tail bounds (Angluin-Valiant form) and the three failure probabilities
they bound for the estimator: overestimate, underestimate and too many samples.

Every function returns an upper bound on a probability.
Exponents are formed in log space, a result of `0.0` means the bound is below the
smallest positive double, not that the event is impossible.
"""
import math
import numbers

from cardest.errors import ParameterDomainError
from cardest.bounds.precision import Precision
from cardest.bounds.budget import compute_k_err, _as_precision


def _as_real(name, value, lower=0.0) -> float:
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ParameterDomainError(f"{name} must be a real number, not {type(value).__name__}")
    value = float(value)
    if not math.isfinite(value) or value < lower:
        raise ParameterDomainError(f"{name} must be finite and >= {lower}, got {value}")
    return value


def chernoff_lower_tail(delta:float, expectation:float) -> float:
    """Bound on `Pr[X <= (1-delta)·E[X]]` for a sum of independent 0-1 variables, `exp(-delta²·E/2)`.

    Args:
        delta (float): relative deviation, >= 0
        expectation (float): E[X], >= 0

    Raises:
        ParameterDomainError: negative or non-finite argument

    Returns:
        float: probability bound in [0,1]
    """
    delta = _as_real("delta", delta)
    expectation = _as_real("expectation", expectation)
    return math.exp(-(delta * delta) * expectation / 2.0)


def chernoff_upper_tail(delta:float, expectation:float) -> float:
    """Bound on `Pr[X >= (1+delta)·E[X]]` for a sum of independent 0-1 variables, `exp(-delta²·E/(2+delta))`.

    Args:
        delta (float): relative deviation, >= 0
        expectation (float): E[X], >= 0

    Raises:
        ParameterDomainError: negative or non-finite argument

    Returns:
        float: probability bound in [0,1]
    """
    delta = _as_real("delta", delta)
    expectation = _as_real("expectation", expectation)
    return math.exp(-(delta * delta) * expectation / (2.0 + delta))


def overestimate_tail(delta:float, p:Precision) -> float:
    """Bound on the probability of stopping with an estimate of `(1+delta)·|I|`,
    `(p_err/3)^(2δ²/(δ_err²(1+δ)))`. Smaller than `p_err/3` for every `delta > delta_err`.

    Args:
        delta (float): relative overestimate, strictly above `p.delta_err`
        p (Precision): accuracy requirement

    Raises:
        ParameterDomainError: delta <= delta_err
    """
    p = _as_precision(p)
    delta = _as_real("delta", delta)
    if not delta > p.delta_err:
        raise ParameterDomainError(f"delta must exceed delta_err={p.delta_err}, got {delta}")
    exponent = 2.0 * delta * delta / (p.delta_err**2 * (1.0 + delta))
    return math.exp(exponent * math.log(p.p_err / 3.0))


def underestimate_tail(delta:float, p:Precision) -> float:
    """Bound on the probability of stopping with an estimate of `(1-delta)·|I|`,
    `(p_err/3)^(4δ²/(δ_err²(2-δ)))`. Smaller than `p_err/3` for every `delta_err < delta < 1`.

    Args:
        delta (float): relative underestimate, in `(p.delta_err, 1)`
        p (Precision): accuracy requirement

    Raises:
        ParameterDomainError: delta outside `(delta_err, 1)`
    """
    p = _as_precision(p)
    delta = _as_real("delta", delta)
    if not p.delta_err < delta < 1.0:
        raise ParameterDomainError(f"delta must be in ({p.delta_err}, 1), got {delta}")
    exponent = 4.0 * delta * delta / (p.delta_err**2 * (2.0 - delta))
    return math.exp(exponent * math.log(p.p_err / 3.0))


def repeat_shortfall_tail(p:Precision) -> float:
    """Bound on the probability of seeing fewer than `k_err` repeats before the
    `2⌈√(k_err·|I|)⌉ + 1`-th distinct sample, `exp(-k_err/4) = (p_err/3)^(1/δ_err²)`.
    This is the "too many samples" event of the sample budget.

    Raises:
        ParameterDomainError: invalid precision
    """
    p = _as_precision(p)
    # Chernoff lower tail with delta=1/2 on an expectation of at least 2·k_err
    return chernoff_lower_tail(0.5, 2.0 * compute_k_err(p).value)
