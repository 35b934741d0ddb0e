"""Error hierarchy shared by the numerical modules and the CLI."""


class LandauStreaterError(Exception):
    """Base class for all errors raised by this package"""


class ContractViolation(LandauStreaterError, ValueError):
    """A precondition of an operation does not hold"""


class NotAChannelError(ContractViolation):
    """A Choi matrix is not positive semidefinite within tolerance"""


class ImaginarySpectrumError(LandauStreaterError):
    """A spectrum expected to be real carries an imaginary residue"""

    def __init__(self, residue: float, tol: float):
        super().__init__(f"imaginary residue {residue:.3e} exceeds {tol:.1e}")
        self.residue = residue
        self.tol = tol


class ToleranceBreach(LandauStreaterError):
    """A closed-form identity failed its numerical check"""

    def __init__(self, quantities):
        self.quantities = list(quantities)
        super().__init__("tolerance breached for: " + ", ".join(self.quantities))


def require(condition: bool, message: str) -> None:
    if not condition:
        raise ContractViolation(message)
