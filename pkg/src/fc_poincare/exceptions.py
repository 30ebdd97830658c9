"""Error taxonomy shared by every fc_poincare module."""


class FCPoincareError(Exception):
    """Base class for all library errors."""


class NonExactDivisionError(FCPoincareError, ArithmeticError):
    """A polynomial division left a nonzero remainder.

    Every division performed by the formula modules is exact, so seeing this
    means a formula was transcribed wrongly.
    """


class PolynomialZeroDivisionError(FCPoincareError, ZeroDivisionError):
    """Division by the zero polynomial."""


class IndexOutOfRangeError(FCPoincareError, IndexError):
    """A generator index, table index or rank is outside its admissible range."""


class TableTooSmallError(FCPoincareError):
    """A coefficient table or matrix does not reach the row an operation needs."""

    def __init__(self, needed: int, available: int):
        super().__init__(f"Table holds rows up to {available}, but row {needed} is required.")
        self.needed = needed
        self.available = available


class CapExceededError(FCPoincareError):
    """A brute-force enumeration was asked for more than its configured cap."""

    def __init__(self, requested: int, cap: int):
        super().__init__(f"Requested size {requested} exceeds the enumeration cap {cap}.")
        self.requested = requested
        self.cap = cap


class InvalidGapSpecError(FCPoincareError, ValueError):
    """A gap specification carries a gap length below 2."""


class InvalidPlacementError(FCPoincareError, ValueError):
    """Gap positions violate the non-overlap or range conditions."""
