# cardest. GNU GPL-3.0 (see LICENSE file)
"""
precision.py
File with the `Precision` and `KErr` classes.
"""
import math
import numbers
from dataclasses import dataclass

from cardest.errors import ParameterDomainError


@dataclass(frozen=True)
class Precision:
    """
    Accuracy requirement of an estimate: within a factor `(1 ± delta_err)` of the
    true cardinality with probability greater than `1 - p_err`.

    Both values must lie in the open interval (0, 1).
    `delta_err >= 1` is trivial (estimating 0 would do) and `p_err >= 1` makes the guarantee vacuous.

    ```
    p = Precision(0.5, 0.5)
    compute_k_err(p).value   # 28.668...
    ```

    Args:
        delta_err (float): relative accuracy
        p_err (float): total error probability
    """
    delta_err: float
    p_err: float

    def __post_init__(self):
        for name in ("delta_err", "p_err"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, numbers.Real):
                raise ParameterDomainError(f"{name} must be a real number, not {type(value).__name__}")
            if not math.isfinite(value) or not 0 < value < 1:
                raise ParameterDomainError(f"{name} must be in the open interval (0,1), got {value}")
        # Precision(1/2, ...) and Precision(0.5, ...) must compare equal
        object.__setattr__(self, "delta_err", float(self.delta_err))
        object.__setattr__(self, "p_err", float(self.p_err))

    def as_json(self) -> dict:
        """dict representation `{"delta_err":float, "p_err":float}`"""
        return {"delta_err": self.delta_err, "p_err": self.p_err}


@dataclass(frozen=True)
class KErr:
    """
    Number of repeats the estimator waits for before stopping, `4/delta_err² · ln(3/p_err)`.
    Always greater than `4·ln 3` for a valid `Precision`.

    Args:
        value (float): the real-valued threshold
    """
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value) or self.value <= 0:
            raise ParameterDomainError(f"k_err must be a positive real, got {self.value}")

    @property
    def ceil(self) -> int:
        """Smallest integer repeat count satisfying the stopping rule"""
        return math.ceil(self.value)

    def __float__(self):
        return self.value
