from charderiv.jets.borel import borel, borel_kernel, borel_weight
from charderiv.jets.jets import FunctionJet, KernelJet
from charderiv.jets.ktransform import KTransformBasis, basis_for, k_transform, weighted_monomials
from charderiv.jets.operators import DiffOperator, apply_operator, build_D
from charderiv.jets.spec import DerivativeSpec

__all__ = [
    "DerivativeSpec",
    "DiffOperator",
    "FunctionJet",
    "KTransformBasis",
    "KernelJet",
    "apply_operator",
    "basis_for",
    "borel",
    "borel_kernel",
    "borel_weight",
    "build_D",
    "k_transform",
    "weighted_monomials",
]
