"""Exception hierarchy shared by every basisml module."""


class BasisMLError(Exception):
    """Base class; the CLI reports ``type(err).__name__`` for subclasses."""


class ArityError(BasisMLError):
    pass


class BasisError(BasisMLError):
    """A function is unknown, clashes with another, or is outside the expected basis."""


class UnknownFunction(BasisError):
    pass


class FormulaSyntaxError(BasisMLError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class NotExpressible(BasisMLError):
    pass


class NotLocallyMonotone(BasisMLError):
    pass


class NoNonmonotoneWitness(BasisMLError):
    pass


class IncompleteTable(BasisMLError):
    pass


class HypothesisViolated(BasisMLError):
    pass


class NoSplit(BasisMLError):
    pass


class BudgetExceeded(BasisMLError):
    """The decider ran out of budget; the answer is unknown, not "unsatisfiable"."""


class ModelError(BasisMLError):
    pass


class VerificationFailed(BasisMLError):
    pass
