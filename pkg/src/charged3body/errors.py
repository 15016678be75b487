"""Exception types shared by the library, the service layer, and the CLI.

Every error carries a stable machine-readable ``kind`` and the process exit
code the CLI maps it to (2 = input error, 3 = numerical degeneracy,
4 = verification failure).
"""


class Charged3BodyError(Exception):
    kind = "error"
    exit_code = 1


class InputError(Charged3BodyError):
    """Caller passed something the operation cannot accept."""

    kind = "input-error"
    exit_code = 2


class DegeneracyError(Charged3BodyError):
    """The computation hit a degenerate parameter or configuration."""

    kind = "degeneracy"
    exit_code = 3


class AllZeroError(DegeneracyError):
    """The reduced polynomial is identically zero (all couplings zero)."""

    kind = "all-zero"


class DegenerateAtCollisionError(DegeneracyError):
    """A root of the reduced polynomial sits exactly on a collision point."""

    kind = "degenerate-at-collision"


class OnDiscriminantError(DegeneracyError):
    """The polynomial has an interior multiple root (parameter on a fold)."""

    kind = "on-discriminant"


class BoundaryError(DegeneracyError):
    """The parameter point lies on a region boundary."""

    kind = "boundary"


class CollisionPointError(DegeneracyError):
    """Evaluation requested at a collision value of the reduced coordinate."""

    kind = "collision-point"


class CollisionError(DegeneracyError):
    """Two bodies coincide; distances vanish."""

    kind = "collision"


class ChartUndefinedError(InputError):
    """The beta chart needs a nonzero third coupling component."""

    kind = "chart-undefined"


class NotACuspError(InputError):
    """The given curve parameter is not a singular point of the curve."""

    kind = "not-a-cusp"


class CollisionInputError(InputError):
    """The reduced coordinate given is a collision value."""

    kind = "collision-input"


class NotACentralConfigurationError(DegeneracyError):
    """The configuration fails the central-configuration equation."""

    kind = "not-a-central-configuration"


class NonpositiveMultiplierError(DegeneracyError):
    """A relative equilibrium needs a strictly positive multiplier."""

    kind = "nonpositive-multiplier"


class NotRealizableError(InputError):
    """The given distances violate the triangle inequality strictly."""

    kind = "not-realizable"


class NoSuchRootError(InputError):
    """The requested root does not exist for these parameters."""

    kind = "no-such-root"


class VerificationError(Charged3BodyError):
    kind = "verification-failed"
    exit_code = 4
