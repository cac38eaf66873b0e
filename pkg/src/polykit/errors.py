"""Exception types raised by polykit."""


class PolykitError(Exception):
    """Base class for all polykit errors."""


class RootError(PolykitError, ValueError):
    """Invalid root or parameter set (empty, zero or non-finite entries)."""


class SingularityError(PolykitError, ArithmeticError):
    """Coinciding parameters make the requested quantity undefined."""


class PolynomialOverflowError(PolykitError, OverflowError):
    """A partial product or intermediate left the binary64 range.

    ``step`` names the stage that failed and ``index`` the offending
    position within it (for example the unit-root index ``j`` of a product).
    """

    def __init__(self, message, step=None, index=None):
        super().__init__(message)
        self.step = step
        self.index = index
