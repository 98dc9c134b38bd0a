"""Exception types shared across the package."""


class OwnerMismatch(TypeError):
    """Arithmetic between elements of two different rings."""


class NotInvertible(ZeroDivisionError):
    """An element has no multiplicative inverse in its ring."""

    def __init__(self, element, message=None):
        self.element = element
        super().__init__(message or f"{element!r} is not invertible")


class NonsingularRequired(ValueError):
    """A scalar tuple has a pairwise difference that is not invertible."""


class DomainError(ArithmeticError):
    """A map was evaluated outside its domain (some denominator was not invertible).

    ``witness`` names the failing subexpression, ``value`` is the offending
    denominator value.
    """

    def __init__(self, message, witness=None, value=None):
        super().__init__(message)
        self.witness = witness
        self.value = value


class ArityMismatch(ValueError):
    pass


class ParseError(ValueError):
    """Syntax error in a map definition.

    ``offset`` is a byte offset into the source, ``expected`` the set of
    token kinds that would have been accepted there.
    """

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = message
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(f"{detail} at offset {offset}")


class ExactRingRequired(TypeError):
    pass


class UnknownSuite(KeyError):
    pass
