# cardest. GNU GPL-3.0 (see LICENSE file)
"""
budget.py
The repeat threshold `k_err` and the bounds on how many samples the estimator takes.
"""
import math
import numbers
from fractions import Fraction

from cardest.errors import ParameterDomainError
from cardest.bounds.precision import Precision, KErr


def _as_precision(p) -> Precision:
    if isinstance(p, Precision):
        return p
    elif isinstance(p, (list, tuple)):
        if len(p) == 2:
            return Precision(p[0], p[1])
        raise ParameterDomainError(f"A Precision requires 2 values (delta_err, p_err), not {len(p)}")
    raise ParameterDomainError(f"Expected a Precision, not {type(p).__name__}")


def _as_k(k) -> KErr:
    if isinstance(k, KErr):
        return k
    if isinstance(k, numbers.Real) and not isinstance(k, bool):
        return KErr(float(k))
    raise ParameterDomainError(f"Expected a KErr or a positive real, not {type(k).__name__}")


def _as_cardinality(n) -> int:
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise ParameterDomainError(f"n must be an integer, not {type(n).__name__}")
    if n < 1:
        raise ParameterDomainError(f"n must be at least 1, got {n}")
    return int(n)


def compute_k_err(p:Precision) -> KErr:
    """Repeat-count threshold `4/delta_err² · ln(3/p_err)`.

    ```
    compute_k_err(Precision(0.5, 0.5)).value    # 16·ln 6 = 28.668...
    compute_k_err(Precision(0.1, 0.05)).value   # 400·ln 60 = 1637.738...
    ```

    Args:
        p (Precision): accuracy requirement, or a `(delta_err, p_err)` tuple

    Raises:
        ParameterDomainError: invalid precision

    Returns:
        KErr: the threshold, always above `4·ln 3`
    """
    p = _as_precision(p)
    return KErr(4.0 / p.delta_err**2 * math.log(3.0 / p.p_err))


def ceil_sqrt(x) -> int:
    """Exact `⌈√x⌉` for a non-negative real.

    Computed with integer square roots and checked by squaring neighbouring integers
    against `x` in exact rational arithmetic. No floating sqrt is involved, so perfect
    squares never get bumped by one.

    Args:
        x (int|float|Fraction): non-negative value

    Returns:
        int: smallest integer m with m² >= x
    """
    x = Fraction(x)
    if x < 0:
        raise ParameterDomainError(f"Cannot take the square root of {float(x)}")
    m = math.isqrt(math.ceil(x))
    # isqrt(ceil(x)) is within one of the answer, walk to it
    while m * m < x:
        m += 1
    while m > 0 and (m - 1) * (m - 1) >= x:
        m -= 1
    return m


def sample_budget(n:int, k:KErr) -> int:
    """High probability bound on the number of samples, `min(n, 2⌈√(k·n)⌉) + ⌈k⌉`.

    The product `k·n` is taken exactly (k as its exact binary value), then `ceil_sqrt` applies.

    ```
    sample_budget(100, compute_k_err(Precision(0.5, 0.5)))   # 100 + 29 = 129
    sample_budget(10**6, compute_k_err(Precision(0.1, 0.05)))  # 80938 + 1638 = 82576
    ```

    Args:
        n (int): cardinality of the sampled set, at least 1
        k (KErr): repeat threshold (a plain positive float is accepted)

    Raises:
        ParameterDomainError: n < 1 or invalid k

    Returns:
        int: sample budget
    """
    n = _as_cardinality(n)
    k = _as_k(k)
    return min(n, 2 * ceil_sqrt(Fraction(k.value) * n)) + k.ceil


def hard_cap(n:int, k:KErr) -> int:
    """Deterministic bound `n + ⌈k⌉`: after that many samples at most n are distinct,
    so at least `⌈k⌉` are repeats and the estimator has stopped.

    Raises:
        ParameterDomainError: n < 1 or invalid k
    """
    return _as_cardinality(n) + _as_k(k).ceil


def asymptotic_budget(n:int, p:Precision) -> float:
    """Order of growth of the sample count, `(1/delta_err)·√ln(1/p_err)·√n`, without constants.
    Only meaningful to compare growth between settings, it is not a bound.
    """
    n = _as_cardinality(n)
    p = _as_precision(p)
    return math.sqrt(math.log(1.0 / p.p_err)) * math.sqrt(n) / p.delta_err


def distinct_repeat_expectation(m:int, n:int) -> float:
    """Expected number of gaps, among the first `m` gaps between consecutive distinct samples,
    containing at least one repeat: `Σ i/n for i in 1..m = m(m+1)/(2n)`.

    With `m = 2⌈√(k·n)⌉` this exceeds `2k`, which is what makes the sample budget hold.
    """
    n = _as_cardinality(n)
    if isinstance(m, bool) or not isinstance(m, numbers.Integral) or m < 0:
        raise ParameterDomainError(f"m must be a non-negative integer, got {m}")
    return m * (m + 1) / (2 * n)
