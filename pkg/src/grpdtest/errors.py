"""Exception hierarchy shared by every module."""


class GrpdTestError(Exception):
    """Base class for all errors raised by the package."""


class ValidationError(GrpdTestError, ValueError):
    """A document or table violates a structural invariant."""


class MissingComposite(ValidationError):
    pass


class IllTypedComposite(ValidationError):
    pass


class AssociativityViolation(ValidationError):
    pass


class IdentityViolation(ValidationError):
    pass


class InvalidPosetRelation(ValidationError):
    pass


class FunctorialityViolation(ValidationError):
    pass


class DiscretenessViolation(ValidationError):
    pass


class NaturalityViolation(ValidationError):
    pass


class SizeExceeded(GrpdTestError):
    """An exhaustive search would exceed its configured candidate cap."""


class UnknownComponent(GrpdTestError, KeyError):
    pass


class MissingTerminalObject(GrpdTestError):
    pass


class IsoVerificationFailed(GrpdTestError):
    """A canonical isomorphism failed to verify. Indicates a bug, not bad input."""


class IsoSearchFailed(IsoVerificationFailed):
    pass


class NotStronglySeparating(GrpdTestError):
    pass


class CatalogEntryLacksTerminal(GrpdTestError):
    pass


class ParseError(GrpdTestError, ValueError):
    """A malformed document; ``line`` and ``field`` locate the problem."""

    def __init__(self, message, *, line=None, field=None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.field = field

    def __str__(self) -> str:
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.field is not None:
            where.append(f"field {self.field!r}")
        return f"{self.message} ({', '.join(where)})" if where else self.message
