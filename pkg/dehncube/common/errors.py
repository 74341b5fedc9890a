"""Exception types shared by the package.

Input problems derive from ``ValueError`` so callers that only know the builtin
still catch them; internal consistency failures carry a witness for dumping.
"""


class InputError(ValueError):
    """Invalid user input (braid word, plat, higher-map table, flags)."""


class BraidWordError(InputError):
    pass


class PlatError(InputError):
    pass


class HigherMapError(InputError):
    pass


class ConsistencyError(RuntimeError):
    """An algebraic identity that must hold did not (d^2 != 0, a 2-face that
    does not commute, an edge changing the circle count by other than one).

    :param message: Human readable description.
    :param witness: A JSON-serialisable dict locating the failure.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness or {}
