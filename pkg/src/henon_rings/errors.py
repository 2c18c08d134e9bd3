"""Error taxonomy shared by every module in the package.

Each failure mode that callers are expected to handle gets its own class, so
`except SmallDivisor` reads the same everywhere (CLI, service, tests). The
`kind` attribute is the stable machine name used in JSON error payloads.
"""


class HenonRingsError(Exception):
    """Base class for all domain errors raised by this package."""

    kind = "error"


class NoConvergence(HenonRingsError):
    """An iterative solve ran out of iterations before hitting tolerance."""

    kind = "no-convergence"

    def __init__(self, message, iterations=None, final_l1=None):
        super().__init__(message)
        self.iterations = iterations
        self.final_l1 = final_l1


class SmallDivisor(HenonRingsError):
    """A non-resonant cohomological divisor fell below the safety floor."""

    kind = "small-divisor"


class SelectionFailure(HenonRingsError):
    """Eigenvalue selection windows matched nothing (or were ambiguous)."""

    kind = "selection-failure"


class EigDivergence(HenonRingsError):
    """The dense eigensolver itself failed to converge."""

    kind = "eig-divergence"


class DominanceFailure(HenonRingsError):
    """Dominant-diagonal margin of the gauge determinant is non-positive."""

    kind = "dominance-failure"


class StepFailure(HenonRingsError):
    """Adaptive integrator drove the step size below its floor."""

    kind = "step-failure"


class BranchFailure(HenonRingsError):
    """No usable root branch for an initial-guess polynomial."""

    kind = "branch-failure"


class DegenerateMultipliers(HenonRingsError):
    """lambda1 and lambda2 coincide; the diagonalizing frame is singular."""

    kind = "degenerate-multipliers"


class TooShort(HenonRingsError):
    """Orbit classification needs at least 500 stored points."""

    kind = "too-short"


class DegreeMismatch(HenonRingsError):
    """Jet arithmetic on operands with different truncation degrees."""

    kind = "degree-mismatch"


class SingularJacobian(HenonRingsError):
    """Newton linear system was numerically singular."""

    kind = "singular-jacobian"
