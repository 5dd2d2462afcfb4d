"""Exception types shared across the package."""


class MacrootsError(Exception):
    """Base class for all package-specific errors."""


class BackendError(MacrootsError):
    """A dense linear-algebra backend routine failed (e.g. SVD non-convergence)."""


class GenericityError(MacrootsError):
    """The input system violates the genericity assumptions.

    Raised when a computation detects evidence that the system does not have
    the expected number of simple, finite roots: a rank/nullity mismatch
    against the closed-form count, or a singular block that should be
    invertible for generic systems.
    """


class SingularMatrixError(GenericityError):
    """A triangular factor that must be invertible has a (near-)zero diagonal."""
