"""Exception hierarchy."""


class CohinvError(Exception):
    """Base class for all library errors."""


class UnsupportedTypeError(CohinvError):
    """A marker type (G2, F4, E8) was given where lattice data is needed."""


class UnsupportedShapeError(CohinvError):
    """The group spec is outside the family an operation covers."""


class SpecError(CohinvError, ValueError):
    """Malformed input data; ``pointer`` is a JSON pointer into the document."""

    def __init__(self, message, pointer=""):
        super().__init__(f"{message} (at {pointer or '/'})")
        self.pointer = pointer


class InvariantViolation(CohinvError, AssertionError):
    """An internal consistency check failed. Always a bug or a false claim."""


class NotInIPowerError(CohinvError, ValueError):
    """A Witt class was expected to lie in a power of the fundamental ideal."""


class InvalidTorsorError(CohinvError, ValueError):
    """Torsor data violates its Brauer relations or representation rules."""
