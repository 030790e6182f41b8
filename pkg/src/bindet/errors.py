"""Exception hierarchy shared by every module."""
from __future__ import annotations


class BinDetError(ValueError):
    """Base class for domain errors (CLI exit code 1)."""


class IndexSetError(BinDetError):
    """An index set violates its invariants."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class ParseError(BinDetError):
    """Malformed index-set text. ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, text: str, offset: int):
        super().__init__(f"{message} at offset {offset} in {text!r}")
        self.text = text
        self.offset = offset


class PreconditionError(BinDetError):
    """Inputs fall outside the domain of an operation."""


class MethodNotApplicable(PreconditionError):
    """A specific determinant formula was requested for a pair it does not cover."""


class TermCapExceeded(BinDetError):
    """An expansion would materialize more terms than the configured cap."""


class RankDeficient(BinDetError):
    """The left nullspace has dimension greater than one."""

    def __init__(self, rank: int, expected: int):
        super().__init__(f"rank {rank} < {expected}; nullspace is not one-dimensional")
        self.rank = rank
        self.expected = expected


class InexactDivision(ArithmeticError):
    """An exact division failed. Always an internal bug, never a user error."""


class IdentityMismatch(AssertionError):
    """A verified identity did not hold on return."""
