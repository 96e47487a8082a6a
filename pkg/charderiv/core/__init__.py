from charderiv.core.errors import (
    AntisymmetryError,
    CharDerivError,
    CoincidentPointsError,
    CrossCheckError,
    InsufficientJetError,
    InsufficientTruncationError,
    InvariantBreachError,
    JobSpecError,
    NotDivisibleError,
    ParityError,
    PreconditionError,
    RegistryMismatchError,
    UnsupportedFunctionError,
)
from charderiv.core.polys import MultiPoly, Registry, divide_by_linear
from charderiv.core.prefactor import Prefactor
from charderiv.core.scalars import I, ONE, ZERO, ExactScalar, as_scalar
from charderiv.core.series import LinearCap, TruncatedSeries

__all__ = [
    "AntisymmetryError",
    "CharDerivError",
    "CoincidentPointsError",
    "CrossCheckError",
    "ExactScalar",
    "I",
    "InsufficientJetError",
    "InsufficientTruncationError",
    "InvariantBreachError",
    "JobSpecError",
    "LinearCap",
    "MultiPoly",
    "NotDivisibleError",
    "ONE",
    "ParityError",
    "Prefactor",
    "PreconditionError",
    "Registry",
    "RegistryMismatchError",
    "TruncatedSeries",
    "UnsupportedFunctionError",
    "ZERO",
    "as_scalar",
    "divide_by_linear",
]
