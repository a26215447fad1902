# cardest. GNU GPL-3.0 (see LICENSE file)
from .precision import Precision, KErr
from .budget import compute_k_err, ceil_sqrt, sample_budget, hard_cap, asymptotic_budget, distinct_repeat_expectation
from .tails import chernoff_lower_tail, chernoff_upper_tail, overestimate_tail, underestimate_tail, repeat_shortfall_tail

__all__ = ["Precision", "KErr", "compute_k_err", "ceil_sqrt", "sample_budget", "hard_cap",
           "asymptotic_budget", "distinct_repeat_expectation",
           "chernoff_lower_tail", "chernoff_upper_tail",
           "overestimate_tail", "underestimate_tail", "repeat_shortfall_tail"]
