"""Errors raised by the unifier"""


class UnifierError(Exception):
    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(self.message)


class InapplicableRuleError(UnifierError):
    """A rule was requested for an equation it does not apply to.

    Distinct from a Fail outcome, which is a legitimate dead branch.
    """


class StepBudgetExceeded(UnifierError):
    def __init__(self, message: str, steps: int) -> None:
        self.steps = steps
        super().__init__(message)


class CyclicSolutionError(UnifierError):
    pass
