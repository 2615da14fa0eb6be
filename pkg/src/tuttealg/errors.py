"""Exception hierarchy shared by all modules."""


class TutteAlgError(Exception):
    """Base class for every error raised by this package."""


class StructuralError(TutteAlgError, ValueError):
    """Operands are incompatible (registry, ground set or variable mismatch)."""


class DomainError(TutteAlgError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RangeError(TutteAlgError, IndexError):
    """An index or exponent lies outside the permitted range."""


class ResourceError(TutteAlgError, RuntimeError):
    """A brute-force enumeration would exceed its configured cap."""


class InternalConsistencyError(TutteAlgError, ArithmeticError):
    """An identity that must hold by construction failed."""


class UsageError(TutteAlgError, ValueError):
    """Bad user-level request (unknown suite, malformed option, ...)."""
