"""Exception types shared across the package."""


class InputError(ValueError):
    """An argument violates an operation's precondition."""


class PeriodicityError(InputError):
    """A fermionic (odd-rank) mode was requested at an even mode number.

    Odd-rank fields see opposite boundary conditions at the two plates, so
    their allowed wavenumbers are odd multiples of pi/2d. An even multiple
    would describe a field that is periodic across the gap, which is exactly
    what a confined fermion cannot be.
    """


class NumericalError(ArithmeticError):
    """A numerical procedure failed, e.g. an ill-conditioned fit."""

    def __init__(self, message, condition_number=None):
        super().__init__(message)
        self.condition_number = condition_number
