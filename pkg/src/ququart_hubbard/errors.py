"""Exception types shared across the toolkit."""


class QuquartError(Exception):
    """Base class for all toolkit errors."""


class NonHermitianInput(QuquartError):
    """A generator expected to be Hermitian failed the tolerance check."""


class ConvergenceFailure(QuquartError):
    """A dense factorization (SVD, eigendecomposition) did not converge."""


class InvalidSubspace(QuquartError):
    """Two-level subspace indices are out of range or not ordered j < k."""


class SiteOutOfRange(QuquartError):
    """A site index does not exist in the register or lattice."""


class DimensionTooLarge(QuquartError):
    """Dense construction requested above the supported Hilbert dimension."""


class UnsupportedLattice(QuquartError):
    """Lattice is outside the supported chain / two-row ladder set."""


class SynthesisResidual(QuquartError):
    """Transpiled circuit failed to reproduce its target evolution."""


class ConfigInvalid(QuquartError):
    """Run configuration failed validation; message names the field."""


class EmptySeries(QuquartError):
    """A time series with no samples was passed to a transform."""
