"""Exception hierarchy.

Every error carries a ``contract`` tag naming the module whose contract
failed; the CLI prints it in front of the message.
"""

from __future__ import annotations


class DqLyapunovError(Exception):
    """Base class for all pydq-lyapunov errors."""

    contract = "pydq_lyapunov"


class ShapeError(DqLyapunovError, ValueError):
    """Operand dimensions are inconsistent."""

    contract = "linalg_core"


class NonFiniteError(DqLyapunovError, ValueError):
    """Matrix contains NaN or Inf."""

    contract = "linalg_core"


class SingularMatrixError(DqLyapunovError, ArithmeticError):
    """Pivot fell below the singularity tolerance."""

    contract = "linalg_core"


class ConvergenceError(DqLyapunovError, RuntimeError):
    """Francis QR iteration did not converge.

    Attributes:
        index: Row index of the subdiagonal entry that failed to deflate.
    """

    contract = "linalg_core"

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class ParameterError(DqLyapunovError, ValueError):
    """Scalar parameter outside its admissible range."""

    def __init__(self, message: str, contract: str | None = None):
        super().__init__(message)
        if contract is not None:
            self.contract = contract


class IllConditionedGridError(DqLyapunovError, ValueError):
    """Collocation points are (nearly) coincident."""

    contract = "dq_operators"


class UnsupportedBoundaryError(DqLyapunovError, ValueError):
    """Boundary-condition combination has no elimination recipe."""

    contract = "boundary_reduction"


class SingularEliminationError(DqLyapunovError, ArithmeticError):
    """Neumann elimination pivot is too small."""

    contract = "boundary_reduction"


class NoUniqueSolutionError(DqLyapunovError, ArithmeticError):
    """GX + XR = Q is singular: G and -R share an eigenvalue.

    Attributes:
        eigenvalues: The colliding pair ``(lambda_G, mu_R)`` as complex
            numbers when known, otherwise ``None``.
    """

    contract = "sylvester_solver"

    def __init__(self, message: str, eigenvalues: tuple[complex, complex] | None = None):
        super().__init__(message)
        self.eigenvalues = eigenvalues


class SymmetryError(DqLyapunovError, ValueError):
    """Operand lacks the centrosymmetric structure a fast path requires."""

    contract = "centrosym"


class ProblemTooLargeError(DqLyapunovError, ValueError):
    """Unknown count exceeds a configured cap."""

    def __init__(self, message: str, contract: str = "sylvester_solver"):
        super().__init__(message)
        self.contract = contract


class TransientStepError(NoUniqueSolutionError):
    """Backward-Euler step matrix is singular at the chosen time step.

    Attributes:
        dt: The offending time step.
        suggested_dt: A smaller step to retry with.
    """

    contract = "pde_problems"

    def __init__(self, message: str, dt: float, eigenvalues: tuple[complex, complex] | None = None):
        super().__init__(message, eigenvalues)
        self.dt = dt
        self.suggested_dt = dt / 2


class ConfigError(DqLyapunovError, ValueError):
    """Run configuration could not be parsed or validated."""

    contract = "cli"
