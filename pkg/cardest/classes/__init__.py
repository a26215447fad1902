# cardest. GNU GPL-3.0 (see LICENSE file)
from .estimator import Estimate, EstimatorState, CardinalityEstimator, SampleId
from .estimator import new_estimator, observe, finish, replay, expected_repeats, run

__all__ = ["Estimate", "EstimatorState", "CardinalityEstimator", "SampleId",
           "new_estimator", "observe", "finish", "replay", "expected_repeats", "run"]
