# cardest. GNU GPL-3.0 (see LICENSE file)
"""
errors.py
Exceptions raised by cardest. They subclass builtins so `except ValueError`
keeps working for callers that do not care about the precise kind.
"""


class ParameterDomainError(ValueError):
    """A parameter is outside the domain the formulas are defined on"""


class EstimatorStateError(RuntimeError):
    """The estimator was used out of order (observe after termination, finish before it)"""


class SourceError(RuntimeError):
    """A sampling source could not produce an element"""


class BudgetExhaustedError(RuntimeError):
    """The hard cap on samples was reached before the stopping rule fired.

    Args:
        state (EstimatorState): estimator state when the cap was hit
        hard_cap (int): the cap that was reached
    """
    def __init__(self, state, hard_cap:int):
        self.state = state
        """Partial `EstimatorState`, still not terminated"""
        self.hard_cap = hard_cap
        self.s = state.s
        self.d = state.d
        self.w = state.w
        super().__init__(f"Hard cap of {hard_cap} samples reached with only {state.repeats} repeats "
                         f"(s={state.s}, d={state.d}, w={state.w}, needs {state.k.ceil})")


class TrialBatchError(RuntimeError):
    """A batch of trials was aborted. `report` aggregates the trials completed before the failure."""
    def __init__(self, message:str, report=None):
        self.report = report
        """Partial `VerificationReport` (None when no trial completed)"""
        super().__init__(message)


class GridFormatError(ParameterDomainError):
    """A sweep grid file has malformed rows. `lines` lists their line numbers (1 based, header is line 1)."""
    def __init__(self, message:str, lines:list = None):
        self.lines = lines or []
        super().__init__(message)
