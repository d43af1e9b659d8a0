"""Exception hierarchy shared by every module of the package."""


class DSPError(Exception):
    """Base class for all errors raised by this package."""


class IncompatibleConductor(DSPError):
    pass


class SingularMatrix(DSPError):
    pass


class ShapeMismatch(DSPError):
    pass


class LoopAtVertex(DSPError):
    pass


class InconsistentSize(DSPError):
    pass


class InvalidXiRow(DSPError):
    """A user-supplied eigenvalue row does not annihilate its class."""


class BudgetExceeded(DSPError):
    def __init__(self, states: int, budget: int):
        super().__init__(f"search box has {states} states, budget is {budget}")
        self.states = states
        self.budget = budget


class QIsOne(DSPError):
    pass


class AdjacentLoopPair(DSPError):
    pass


class MismatchedQ(DSPError):
    pass


class NotRigid(DSPError):
    pass


class InternalContradiction(DSPError):
    pass


class NotStrict(DSPError):
    pass


class NotInClass(DSPError):
    pass


class SchemaError(DSPError):
    """Malformed JSON input; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
