"""Exception types raised by the numerics."""


class KerrParityError(Exception):
    """Base class for numeric failures (as opposed to invalid input)."""


class DegeneratePointError(KerrParityError, ArithmeticError):
    """Fisher information is 0/0 at the requested phase (e.g. phi = 0)."""


class NonIdentifiableError(KerrParityError, ArithmeticError):
    """Fisher information vanishes, so the phase cannot be estimated there."""


class SolverError(KerrParityError):
    """A search (half-maximum crossing, sensitivity scan) found nothing usable."""
