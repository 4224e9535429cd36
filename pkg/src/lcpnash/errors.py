"""Exception hierarchy.  Contract violations subclass ``ValueError``."""


class LcpError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(LcpError, ValueError):
    pass


class CoveringVectorError(LcpError, ValueError):
    """A covering vector (or a diagonal scaling) has a nonpositive entry."""


class TrivialInstance(LcpError):
    """``q >= 0``: ``z = 0`` already solves the problem, no pivoting is needed."""


class SizeError(LcpError, ValueError):
    """An exhaustive routine was asked to run beyond its size cap."""


class PositivityError(LcpError, ValueError):
    pass


class NotEquilibriumError(LcpError, ValueError):
    pass


class DegeneracyError(LcpError):
    """A point that should lie in the relative interior of a ray does not.

    Usually means the bound ``beta`` handed to the augmented instance is too
    small.
    """


class DegenerateDirectionError(LcpError):
    """A type-1 direction fails the nondegeneracy needed to lift it to a ray."""


class PivotLimitError(LcpError, RuntimeError):
    """The Lemke safety cap on pivots was hit (indicates an implementation bug)."""


class DocumentError(LcpError, ValueError):
    """Malformed instance document; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
