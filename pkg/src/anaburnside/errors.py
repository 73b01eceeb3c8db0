"""Package-wide exception types."""


class BurnsideError(Exception):
    """Base class for package errors."""


class TowerOverflow(BurnsideError):
    """A tower value was asked to materialize as a real beyond what fits in memory."""


class CapExceeded(BurnsideError):
    """A configured resource cap (order, degree, evaluation count) was exceeded."""


class WordSyntaxError(BurnsideError):
    """A group word failed to parse."""
