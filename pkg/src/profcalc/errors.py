"""Exception types shared across modules."""


class StructuralError(ValueError):
    """A referenced identifier does not resolve, or data is malformed."""


class BoundExceeded(RuntimeError):
    """An enumeration needed more than its explicit bound allows."""


class NoUniversalObject(LookupError):
    """The finite target has no (co)limit for the requested diagram."""


class IllComposed(ValueError):
    """Boundaries of cells or profunctors do not match."""


class WellDefinednessFailure(RuntimeError):
    """A map on quotient classes sent one class to two targets."""


class CounterexampleFound(AssertionError):
    def __init__(self, message: str, probe=None):
        super().__init__(message)
        self.probe = probe


class NotAKanExtension(AssertionError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionFailed(AssertionError):
    def __init__(self, condition: str, message: str, witness=None):
        super().__init__(f"({condition}) {message}")
        self.condition = condition
        self.witness = witness


class FactorizationFailed(AssertionError):
    pass


class RelationFailed(AssertionError):
    def __init__(self, message: str, block=None):
        super().__init__(message)
        self.block = block


class DimensionMismatch(ValueError):
    pass
