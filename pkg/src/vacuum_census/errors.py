"""Exception hierarchy shared across the package."""


class VacuumCensusError(Exception):
    """Base class for all computational errors raised by this package."""


class DomainError(VacuumCensusError, ValueError):
    """An input lies outside the validity range of an operation."""


class PoleProximityError(VacuumCensusError):
    """The dielectric function was evaluated too close to a matter pole."""


class DegenerateDensityError(VacuumCensusError):
    """A spectral density degenerates to a delta distribution (zero width)."""


class DecoupledInputError(VacuumCensusError):
    """The light-matter coupling is zero and the requested quantity is
    trivial or ill-defined; the caller must use the analytic limit."""


class RootCountError(VacuumCensusError):
    """Symmetry reduction of the dispersion roots did not yield exactly two
    first-quadrant representatives."""


class ResidualError(VacuumCensusError):
    """A polished dispersion root fails its residual bound."""


class NonConvergenceError(VacuumCensusError):
    """A quadrature failed to reach the requested tolerance.

    Attributes
    ----------
    value : best available estimate of the integral
    estimate : achieved error estimate
    """

    def __init__(self, message, value=None, estimate=None):
        super().__init__(message)
        self.value = value
        self.estimate = estimate


class NaNFromIntegrandError(VacuumCensusError):
    """The integrand returned NaN inside the integration domain."""


class NonSimplePoleError(VacuumCensusError):
    """Principal-value estimates diverge under excision refinement; the
    singularity is not a simple pole."""


class SingularSystemError(VacuumCensusError):
    """The gauge-fixed mode-function system is singular at this frequency."""


class NegativeCoefficientError(VacuumCensusError):
    """A squared mode-function normalization came out negative (algebra bug)."""


class OracleValidationError(VacuumCensusError):
    """Neither prefactor variant of the closed-form population matches the
    quadrature oracle (signals an implementation bug)."""


class SweepPointError(VacuumCensusError):
    """A sweep grid point failed; carries the offending grid index.

    Attributes
    ----------
    index : position in the sweep grid
    """

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index
