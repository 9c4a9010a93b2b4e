"""Exception types shared across the package."""


class PeircelabError(Exception):
    """Base class for all errors raised by this package."""


class ShapeMismatch(PeircelabError):
    """Element shape does not match the model (or operands disagree)."""


class NotHermitian(PeircelabError):
    """Matrix fails the Hermitian precondition."""


class ConvergenceFailure(PeircelabError):
    """A dense factorization failed or missed its residual contract."""


class NotTripotent(PeircelabError):
    """Element fails the cubic tripotent identity at the requested tolerance."""


class NotInPeirce2(PeircelabError):
    """Element is not in the Peirce-2 subspace of the given tripotent."""


class NotUnitModulus(PeircelabError):
    """Scalar parameter is not on the unit circle."""


class NotNormOne(PeircelabError):
    """Element does not have norm one."""


class NotRegular(PeircelabError):
    """Element is not von Neumann regular."""


class NotOrthogonal(PeircelabError):
    """Operands fail the required orthogonality precondition."""


class NotInnerIdeal(PeircelabError):
    """Subspace is not an inner ideal (or not a hereditary subalgebra)."""


class NotMutuallyOrthogonal(PeircelabError):
    """A family of elements is not pairwise orthogonal."""


class NotPositive(PeircelabError):
    """Element fails the positivity (or self-adjointness) precondition."""


class NonPositiveEps(PeircelabError):
    """Approximation accuracy must be strictly positive."""


class UnknownProperty(PeircelabError):
    """Verification config names a property that is not registered."""


class VerificationFailed(PeircelabError):
    """An internal numerical verification of a constructed object failed."""


class FormatError(PeircelabError):
    """A JSON wire-format document is malformed."""
