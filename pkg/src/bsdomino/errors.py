"""Exception types shared across the package."""


class BsDominoError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(BsDominoError):
    """Malformed textual input (word syntax, map spec, tileset file).

    ``position`` is the character offset of the offending token when known.
    """

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class BadRange(BsDominoError):
    """An index range with lower bound above upper bound."""


class OutsideDomain(BsDominoError):
    """A point that does not belong to the domain of a piecewise map."""


class OutsidePiece(BsDominoError):
    """A point that does not lie in the square of the requested piece."""


class OrbitTooShort(BsDominoError):
    """An orbit that does not reach every level a patch spans."""


class EnumerationTooLarge(BsDominoError):
    """Tile enumeration would exceed the configured candidate cap."""

    def __init__(self, candidates: int, cap: int):
        super().__init__(
            f"tile enumeration needs {candidates} candidates, cap is {cap}"
        )
        self.candidates = candidates
        self.cap = cap
