"""Exception hierarchy shared by every charderiv module.

Two families matter at the CLI boundary: ``PreconditionError`` (the caller
handed us something we cannot work with, exit code 1) and
``InvariantBreachError`` (an identity that must hold did not, exit code 2).
"""


class CharDerivError(Exception):
    """Root of all charderiv errors."""


class PreconditionError(CharDerivError, ValueError):
    """Input violates the preconditions of the requested operation."""


class RegistryMismatchError(PreconditionError):
    """Operands live over different variable registries."""


class InsufficientJetError(PreconditionError):
    """A jet does not carry enough Taylor coefficients."""


class InsufficientTruncationError(PreconditionError):
    """A truncated series is read beyond its caps."""


class ParityError(PreconditionError):
    """Pfaffian requested for an odd-dimensional matrix."""


class AntisymmetryError(PreconditionError):
    """Kernel data that must be antisymmetric is not."""


class CoincidentPointsError(PreconditionError):
    """Expansion points that must be distinct coincide."""


class UnsupportedFunctionError(PreconditionError):
    """Unknown special function name."""


class JobSpecError(PreconditionError):
    """Malformed job file or command-line parameters."""


class InvariantBreachError(CharDerivError, ArithmeticError):
    """An internal identity failed."""


class NotDivisibleError(InvariantBreachError):
    """Nonzero remainder when dividing by a linear Vandermonde factor."""


class CrossCheckError(InvariantBreachError):
    """Independent evaluation routes disagree."""
