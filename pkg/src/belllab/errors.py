"""Exception types shared across the package."""


class NumericsError(ArithmeticError):
    """An internal numerical self-check failed.

    Raised when a quantity that is mathematically guaranteed (a real
    expectation value, agreement between a matrix computation and its
    closed form) comes out wrong beyond tolerance.  This signals an
    implementation or conditioning problem, not bad user input; user
    input problems raise ValueError instead.
    """
