"""Exception hierarchy shared by every module of the package."""


class ColorGameError(Exception):
    """Base class for all package errors."""


class InvalidParameter(ColorGameError, ValueError):
    pass


class NotACactus(ColorGameError):
    pass


class NotAForest(ColorGameError):
    pass


class LimitExceeded(ColorGameError):
    pass


class IllegalMove(ColorGameError):
    """A move was applied that is not legal in the current state.

    Raised by the engine; inside a certification run this always means a
    strategy bug and aborts the run.
    """


class InvalidSymmetry(ColorGameError):
    pass


class BadPath(ColorGameError):
    pass


class BadCycle(ColorGameError):
    pass


class BadConfiguration(ColorGameError):
    pass


class StrategyBreakdown(ColorGameError):
    """No case of a scripted strategy matched the position."""


class BudgetExceeded(ColorGameError):
    def __init__(self, limit, message=None):
        self.limit = limit
        super().__init__(message or f"node budget of {limit} exhausted")


class PolicyLoss(ColorGameError):
    """Some Alice line defeats the Bob policy under test."""

    def __init__(self, state, message=None):
        self.state = state
        super().__init__(message or "Alice escapes the policy")


class SchemaError(ColorGameError, ValueError):
    """Malformed serialized input; ``path`` points at the offending field."""

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
