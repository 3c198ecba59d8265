"""Exception types raised across the package."""


class DezaError(Exception):
    """Base class for every error raised by dezaswitch."""


class InvalidParameter(DezaError, ValueError):
    pass


class InvalidSubset(DezaError, ValueError):
    pass


class InvalidArgument(DezaError, ValueError):
    pass


class Graph6ParseError(DezaError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class NotDeza(DezaError):
    """The graph fails Deza recognition; subclasses name the reason."""


class NotRegular(NotDeza):
    pass


class NotConnected(NotDeza):
    pass


class TooManyValues(NotDeza):
    pass


class ChildrenUndefined(DezaError):
    pass


class InfiniteDiameter(DezaError):
    pass


class CertificationConflict(DezaError):
    pass


class PredictionInconsistency(DezaError):
    pass


class InconsistentParameters(DezaError):
    pass


class PreconditionViolation(DezaError):
    pass


class ConstructionError(DezaError):
    pass


class InternalInconsistency(DezaError):
    pass


class UnsupportedSize(DezaError):
    pass


class ChainBroken(DezaError):
    def __init__(self, step: int, reason: str):
        super().__init__(f"chain broken at step {step}: {reason}")
        self.step = step
