"""Exception hierarchy shared by every module."""


class ChoreDivisionError(Exception):
    """Base class for all library errors."""


class InvalidChore(ChoreDivisionError, IndexError):
    pass


class ChoreAlreadyPresent(ChoreDivisionError, ValueError):
    pass


class TooLargeForExhaustiveCheck(ChoreDivisionError):
    pass


class InvalidSpec(ChoreDivisionError, ValueError):
    """A cost specification violates its structural invariants."""


class UncertifiedCosts(ChoreDivisionError):
    """The solver needs costs certified binary supermodular."""

    def __init__(self, msg="costs not certified binary supermodular"):
        super().__init__(msg)


class NotIdenticalCosts(ChoreDivisionError):
    def __init__(self, msg="costs not identical across agents"):
        super().__init__(msg)


class InternalInvariantViolation(ChoreDivisionError, RuntimeError):
    """A guarantee that should hold by construction was observed to fail."""


class InvalidAllocation(ChoreDivisionError, ValueError):
    pass


class InvalidParameter(ChoreDivisionError, ValueError):
    pass


class NoDecrementFound(ChoreDivisionError):
    """No single removal lowers the cost by one; the oracle is not supermodular."""


class InputNotSCM(ChoreDivisionError, ValueError):
    pass


class SchemaError(ChoreDivisionError, ValueError):
    pass


class ValidationError(ChoreDivisionError, ValueError):
    pass
