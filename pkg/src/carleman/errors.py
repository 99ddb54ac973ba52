"""Exception types shared across the toolkit.

The CLI maps these onto process exit codes: hypothesis/verification
failures exit 2, range and search-budget failures exit 3, and plain
usage problems (including ``ValueError`` from precondition checks)
exit 1.
"""

from __future__ import annotations


class CarlemanError(Exception):
    """Base class for all toolkit-specific failures."""


class HypothesisFailure(CarlemanError):
    """A certification hypothesis does not hold for the given inputs.

    ``condition`` names the first failing hypothesis, e.g. ``"(C)"``;
    ``detail`` locates the violation, e.g. ``"violated at order 4"``.
    """

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        self.detail = detail
        msg = f"hypothesis failure: {condition}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class VerificationFailure(CarlemanError):
    """A constructed certificate failed its post-hoc re-verification."""


class SearchBudgetExceeded(CarlemanError):
    """A threshold search ran out of probes (or off the index range).

    ``step`` names the search that failed, e.g. ``"anchor search
    (round 0)"``.
    """

    def __init__(self, step: str, detail: str = ""):
        self.step = step
        msg = f"search budget exceeded in {step}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class LogRangeError(CarlemanError):
    """A quantity left the representable log-domain range."""
