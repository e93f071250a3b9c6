"""Exception hierarchy.

Everything raised for bad *values* (as opposed to bad syntax) derives from
:class:`DomainError`; the CLI maps these to exit status 1.
"""


class DomainError(ValueError):
    pass


class SpaceMismatch(DomainError):
    """Operands live in different spaces (double arrow vs Sorgenfrey)."""


class OrderViolation(DomainError):
    pass


class EmptyInput(DomainError):
    pass


class NotInLower(DomainError):
    pass


class NotInUpper(DomainError):
    pass


class PartitionViolation(DomainError):
    """No piece of a homeomorphism claims a point; the value is corrupt."""


class ModulusError(DomainError):
    pass


class Unsupported(DomainError):
    pass


class NotRepresentable(DomainError):
    """An image set is closed but not a finite union of closed intervals."""


class ParseError(ValueError):
    """Malformed textual or JSON input (CLI exit status 2)."""
