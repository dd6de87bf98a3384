"""Exception hierarchy.

Every error raised on bad input derives from :class:`InstanceError`, which is a
``ValueError``. ``element`` names the offending identifier or value when there
is one; ``location`` is filled in by the document parser.
"""

from __future__ import annotations


class InstanceError(ValueError):
    def __init__(self, message: str, element: object = None, location: str | None = None):
        super().__init__(message)
        self.element = element
        self.location = location

    def __str__(self) -> str:
        msg = super().__str__()
        if self.location:
            return f"{self.location}: {msg}"
        return msg


class DuplicateIdError(InstanceError):
    pass


class MatrixShapeMismatchError(InstanceError):
    pass


class NonBinaryEntryError(InstanceError):
    pass


class NegativeQuotaError(InstanceError):
    pass


class KOutOfRangeError(InstanceError):
    pass


class TierNotPartitionError(InstanceError):
    pass


class UnknownCandidateError(InstanceError):
    pass


class UnknownTypeError(InstanceError):
    pass


class EmptySubsetError(InstanceError):
    pass


class LengthMismatchError(InstanceError):
    pass


class WrongCommitteeSizeError(InstanceError):
    pass


class MembershipViolationError(InstanceError):
    pass


class InstanceTooLargeError(InstanceError):
    pass


class InvalidParamsError(InstanceError):
    pass


class DocumentSyntaxError(InstanceError):
    """Malformed JSON; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})", location=None)
        self.line = line
        self.column = column


class PriorityMissingError(InstanceError):
    pass


class MissingFieldError(InstanceError):
    pass


class UnknownKeyError(InstanceError):
    pass
