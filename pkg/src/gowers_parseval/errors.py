"""Exception types raised across the package."""


class SpecMismatchError(ValueError):
    """Operands live on different groups or have incompatible dimensions."""


class EnumerationLimitError(ValueError):
    """A requested enumeration would exceed the configured size guard."""

    def __init__(self, what, cardinality, limit):
        self.cardinality = cardinality
        self.limit = limit
        super().__init__(
            f"{what} has {cardinality} elements, exceeding the enumeration limit {limit}"
        )


class NotAMemberError(ValueError):
    """A cube point is not in the degree-l cube space it was claimed to be in."""


class PositivityError(ArithmeticError):
    """An inner product that must be real and non-negative is not."""


class InputFormatError(ValueError):
    """A function, cube, lattice or expression could not be parsed."""
