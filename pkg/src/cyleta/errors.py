"""Exception types shared across the package."""


class CyletaError(Exception):
    """Base class for all package-specific errors."""


class InvalidSpectrumError(CyletaError, ValueError):
    """Spectral data violates a structural invariant (zero eigenvalue,
    unsorted input that cannot be repaired, bad growth constants, ...)."""


class InvalidTraceError(InvalidSpectrumError):
    """A trace exceeds what a unitary on a space of the stated dimension
    can produce (|trace| > multiplicity)."""


class DomainError(CyletaError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class QuadratureError(CyletaError, RuntimeError):
    """Adaptive quadrature failed to converge within its subdivision budget.

    Carries the partial estimate and the integrator's own error guess so a
    caller can still inspect how far the computation got.
    """

    def __init__(self, message: str, partial: complex = 0.0, est_error: float = float("inf")):
        super().__init__(message)
        self.partial = partial
        self.est_error = est_error


class VerificationError(CyletaError, RuntimeError):
    """A verified identity failed beyond its tolerance.

    Carries whatever structured evidence the verifier produced (a deviation
    report, the offending row) so callers can serialize it.
    """

    def __init__(self, message: str, evidence=None):
        super().__init__(message)
        self.evidence = evidence


class InstabilityError(CyletaError, RuntimeError):
    """A partial-sum sequence grew past its divergence guard instead of
    settling, so no limit can honestly be reported."""

    def __init__(self, message: str, partial_sums=()):
        super().__init__(message)
        self.partial_sums = tuple(partial_sums)
