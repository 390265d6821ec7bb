"""Exception hierarchy shared by every module.

Library code raises these; `main.run` turns them into exit codes.
"""
from typing import Optional


class SemigroupError(Exception):
    """Base class for all toolkit errors"""


class ShapeMismatch(SemigroupError):
    pass


class BadIndex(SemigroupError):
    def __init__(self, row: int, col: int, value: int, size: int):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"entry ({row},{col}) = {value} is outside [0, {size})")


class DuplicateName(SemigroupError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"element name {name!r} appears more than once")


class BadName(SemigroupError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"element name {name!r} is empty or contains whitespace or '#'")


class NotAssociative(SemigroupError):
    def __init__(self, i: int, j: int, k: int, detail: str = ""):
        self.witness = (i, j, k)
        super().__init__(f"(xy)z != x(yz) at x={i}, y={j}, z={k}{detail}")


class SizeMismatch(SemigroupError):
    pass


class UnknownSymbol(SemigroupError):
    def __init__(self, symbol):
        self.symbol = symbol
        super().__init__(f"unknown symbol {symbol!r}")


class BadParam(SemigroupError):
    pass


class BudgetExceeded(SemigroupError):
    """Raised when a caller demands a finished enumeration and the budgets ran out.

    `census` is the `Exhausted` report describing how far the enumeration got.
    """

    def __init__(self, census):
        self.census = census
        super().__init__(
            f"budget exhausted after {census.elements_found} elements "
            f"(frontier {census.frontier_size}); raise --max-elements/--max-length"
        )


class InternalDisagreement(SemigroupError):
    """Two independent computations of the same fact disagree: a bug, never a result."""


class ParseError(SemigroupError):
    def __init__(self, line: Optional[int], reason: str):
        self.line = line
        self.reason = reason
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{reason}")
