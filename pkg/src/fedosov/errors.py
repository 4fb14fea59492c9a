class FedosovError(Exception):
    """Base class for errors raised by this package."""


class StructureError(FedosovError, ValueError):
    pass


class InvalidConnectionError(FedosovError, ValueError):
    pass


class NotDivisibleError(FedosovError, ArithmeticError):
    """An element with an h-free term was divided by h."""


class DegreeError(FedosovError, ValueError):
    """Input is not homogeneous of the degree an operation requires."""


class CertificationError(FedosovError, AssertionError):
    """A symbolic identity that must hold exactly failed; signals a bug or bad input."""


class ProblemSpecError(FedosovError, ValueError):
    """Malformed problem-spec file."""
