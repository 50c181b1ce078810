"""Custom exceptions for dimgroups."""


class DimGroupsError(Exception):
    """Base exception for all dimgroups errors."""

    pass


class ConfigurationError(DimGroupsError):
    """Raised when there's an issue with configuration."""

    pass


class ValidationError(DimGroupsError):
    """Raised when data validation fails."""

    pass


class PrecisionExhausted(DimGroupsError):
    """Raised when the sign oracle hits its refinement cap.

    A genuinely nonzero element of Q[t] always separates from zero eventually, so
    reaching the cap means the oracle is misconfigured (for example an algebraic t).
    """

    def __init__(self, message: str, bits: int | None = None) -> None:
        super().__init__(message)
        self.bits = bits


class ZeroPolynomial(DimGroupsError):
    """Raised when an operation needs a nonzero polynomial."""

    pass


class ConstantFunction(DimGroupsError):
    """Raised when a function is constant on a domain where it must vary."""

    pass


class ConstantElement(DimGroupsError):
    """Raised when a group element has no nonconstant part."""

    pass


class VanishingAtRational(DimGroupsError):
    """Raised when an element with a nonzero t-part evaluates to 0 at a rational point."""

    def __init__(self, point: str) -> None:
        super().__init__(f"Element vanishes at rational point {point}")
        self.point = point


class NotSquarefree(DimGroupsError):
    """Raised when a minimal polynomial has a repeated factor."""

    def __init__(self, minpoly: list[int]) -> None:
        super().__init__(f"Minimal polynomial is not square-free: {minpoly}")
        self.minpoly = minpoly


class NotFormallyReal(DimGroupsError):
    """Raised when a number field has no real embedding."""

    def __init__(self, minpoly: list[int]) -> None:
        super().__init__(f"Minimal polynomial has no real roots: {minpoly}")
        self.minpoly = minpoly


class ReducibleMinpoly(DimGroupsError):
    """Raised when a gcd exposes a proper factor of the minimal polynomial."""

    def __init__(self, factor: list[str]) -> None:
        super().__init__(f"Minimal polynomial is reducible, factor: {factor}")
        self.factor = factor


class DivisionByZero(DimGroupsError):
    """Raised when inverting the zero element."""

    pass


class DependentBasis(DimGroupsError):
    """Raised when the u vectors of a simplex spec are not independent enough."""

    def __init__(self, index: int, message: str) -> None:
        super().__init__(f"u_{index}: {message}")
        self.index = index


class LambdaConditionFailed(DimGroupsError):
    """Raised when lambda_k lies in the rational span V_k."""

    def __init__(self, stage: int) -> None:
        super().__init__(f"lambda_{stage} lies in V_{stage}")
        self.stage = stage


class TopIndexZero(DimGroupsError):
    """Raised when a coset check is requested for a multiple of v_0."""

    pass


class PreconditionViolated(DimGroupsError):
    """Raised when the inputs of an operation violate its precondition."""

    pass


class InterpolantNotFound(DimGroupsError):
    """Raised when interpolation search gives up after its retry cap."""

    def __init__(self, attempts: int) -> None:
        super().__init__(f"No interpolant found after {attempts} attempts")
        self.attempts = attempts
