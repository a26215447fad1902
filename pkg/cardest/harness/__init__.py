# cardest. GNU GPL-3.0 (see LICENSE file)
from .stats import wilson_interval, wilson_upper, chi_square_uniformity
from .trials import TrialRecord, VerificationReport, CSV_COLUMNS
from .trials import run_trial, run_trials, sweep, passes, report_rows

__all__ = ["wilson_interval", "wilson_upper", "chi_square_uniformity",
           "TrialRecord", "VerificationReport", "CSV_COLUMNS",
           "run_trial", "run_trials", "sweep", "passes", "report_rows"]
