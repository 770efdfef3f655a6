"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class KinematicsError(Exception):
    exit_code = 3


class InputError(KinematicsError, ValueError):
    """Malformed JSON, wrong schema, out-of-range option."""

    exit_code = 2


class InvariantViolation(KinematicsError, ValueError):
    """A value fails a type invariant (determinant, unitarity, norm, ...)."""

    exit_code = 3


class NonHermitian(InvariantViolation):
    pass


class SingularMatrix(InvariantViolation):
    pass


class NotInE2(KinematicsError):
    """Matrix is not upper triangular with unit-modulus diagonal."""

    exit_code = 4


class ChartViolation(KinematicsError):
    """Chart not admissible for the momentum it is attached to."""

    exit_code = 5


class NotInOverlap(ChartViolation):
    pass


class UnsupportedSpin(InputError):
    pass
