"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class BadReduction(DomainError):
    """A prime divides the denominator of a coefficient being reduced."""

    def __init__(self, p, index, coeff):
        self.p = p
        self.index = index
        self.coeff = coeff
        super().__init__(
            f"p={p} divides the denominator of coefficient {index} ({coeff})")


class DegreeCapError(DomainError):
    """A polynomial would exceed the dense-representation size cap."""


class SizeGuardError(DomainError):
    """A finite-group computation exceeds its configured size guard."""
