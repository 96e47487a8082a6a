"""Derivatives of Pfaffian and determinant ratios through K-transforms.

Every route builds a matrix of truncated series in the auxiliary ``u`` (and
``v``) variables, takes its exact Pfaffian or determinant, applies the product
of ``D`` operators fixed by the derivative orders and sends ``u -> 0``.
"""

from __future__ import annotations

import logging
from typing import Mapping, Sequence

from charderiv.core.errors import PreconditionError
from charderiv.core.polys import Registry
from charderiv.core.scalars import ExactScalar
from charderiv.core.series import LinearCap, TruncatedSeries
from charderiv.evaluators.problems import PfaffianProblem, PointPair
from charderiv.jets.borel import borel, borel_kernel
from charderiv.jets.jets import FunctionJet, KernelJet
from charderiv.jets.ktransform import basis_for
from charderiv.jets.operators import DiffOperator, apply_operator, build_D
from charderiv.jets.spec import DerivativeSpec
from charderiv.linalg import AntisymMatrix, RingMatrix, det, pfaffian

logger = logging.getLogger(__name__)


def eval_main_theorem(problem: PfaffianProblem) -> ExactScalar:
    """``lim prod d^{n} Pf[[A, B], [-B^T, C]] / Delta_P`` for the problem's spec."""
    spec = problem.spec
    basis = basis_for(spec)
    registry = basis.registry
    p = spec.P

    def entry(i: int, j: int) -> TruncatedSeries:
        if j < p:
            if problem.a_jets is None:
                return TruncatedSeries.zero(registry, basis.caps)
            return basis.transform_kernel(problem.a_jets, i + 1, j + 1)
        if i < p:
            return basis.transform(problem.b_columns[j - p], i + 1)
        return TruncatedSeries.constant(registry, basis.caps, problem.c[i - p][j - p])

    matrix = AntisymMatrix.from_function(problem.size, entry)
    logger.debug("main-theorem matrix %dx%d over %s", problem.size, problem.size, registry.names)
    return apply_operator(spec.operator(registry), pfaffian(matrix))


def eval_det_corollary(columns: Sequence[Sequence[FunctionJet]], spec: DerivativeSpec) -> ExactScalar:
    """``lim prod d^{n} det[B_d(x_a)] / Delta_P(x)``; ``columns[d][l]`` is ``B_d`` at ``chi_l``."""
    if len(columns) != spec.P:
        raise PreconditionError(f"{len(columns)} columns for P={spec.P} variables")
    basis = basis_for(spec)
    matrix = RingMatrix.from_function(spec.P, spec.P, lambda a, d: basis.transform(columns[d], a + 1))
    return apply_operator(spec.operator(basis.registry), det(matrix))


def eval_det_corollary_two_sided(
    kernel_jets: Mapping[PointPair, KernelJet],
    spec_x: DerivativeSpec,
    spec_y: DerivativeSpec,
) -> ExactScalar:
    """``lim det[B(x_a, y_b)] / (Delta_P(x) Delta_P(y))`` with independent specs in ``x`` and ``y``.

    ``kernel_jets[(l, l2)]`` is the jet of ``B`` at ``(chi_l, xi_l2)``.
    """
    if spec_x.P != spec_y.P:
        raise PreconditionError(f"x and y sides need equal sizes, got {spec_x.P} and {spec_y.P}")
    registry = Registry(spec_x.all_u_names("u") + spec_y.all_u_names("v"))
    basis_u = basis_for(spec_x, "u", registry)
    basis_v = basis_for(spec_y, "v", registry)
    matrix = RingMatrix.from_function(
        spec_x.P,
        spec_x.P,
        lambda a, b: basis_u.transform_kernel(kernel_jets, a + 1, b + 1, other=basis_v),
    )
    op = spec_x.operator(registry, "u") * spec_y.operator(registry, "v")
    return apply_operator(op, det(matrix))


def eval_symplectic_first_order(
    a_jets: Mapping[PointPair, KernelJet], k: int, h: int
) -> ExactScalar:
    """Two points, ``k`` variables at each, ``h`` underived and ``k - h`` once-derived.

    ``a_jets`` holds the jets of ``A`` at ``(chi, chi)``, ``(chi, xi)`` and
    ``(xi, xi)`` under the keys ``(0, 0)``, ``(0, 1)`` and ``(1, 1)``.
    """
    if not 0 <= h <= k or k < 1:
        raise PreconditionError(f"need 0 <= h <= k and k >= 1, got h={h}, k={k}")
    for key in ((0, 0), (1, 1)):
        if key not in a_jets:
            raise PreconditionError(f"missing jet of A at point pair {(key[0] + 1, key[1] + 1)}")
    chi, xi = a_jets[(0, 0)].points[0], a_jets[(1, 1)].points[0]
    pattern = (0,) * h + (1,) * (k - h)
    spec = DerivativeSpec((chi, xi), (pattern, pattern))
    return eval_main_theorem(PfaffianProblem(spec, a_jets))


# -- Borel route (single point per side) ---------------------------------------


def _check_pattern(h: Sequence[int]) -> tuple[int, ...]:
    h = tuple(int(m) for m in h)
    if not h or any(m < 0 for m in h) or not sum(h):
        raise PreconditionError(f"derivative multiplicities must be non-negative and not all zero: {h}")
    return h


def _side(h: tuple[int, ...], prefix: str) -> tuple[tuple[str, ...], dict[str, int], int]:
    d = max(len(h) - 1, 1)
    names = tuple(f"{prefix}{j}" for j in range(1, d + 1))
    weights = {name: j for j, name in enumerate(names, start=1)}
    return names, weights, sum(j * m for j, m in enumerate(h))


def pattern_operator(registry: Registry, h: Sequence[int], prefix: str = "u") -> DiffOperator:
    """``prod_j D_{u,j}^{h_j}`` over ``prefix1..prefixd`` inside ``registry``."""
    op = DiffOperator.identity(registry)
    for j, m in enumerate(h):
        if j == 0 or m == 0:
            continue
        mapping = {f"u{i}": f"{prefix}{i}" for i in range(1, j + 1)}
        op = op * build_D(j).relabel(registry, mapping) ** m
    return op


def eval_borel_det(columns: Sequence[FunctionJet], h: Sequence[int]) -> ExactScalar:
    """``lim prod_j D_{u,j}^{h_j} det[d_{u_1}^{a-1} [B_{chi,d} B_b](u)]``.

    ``h[j]`` variables carry ``j`` derivatives; all columns sit at one point.
    """
    h = _check_pattern(h)
    k = sum(h)
    if len(columns) != k:
        raise PreconditionError(f"{len(columns)} columns for k={k}")
    names, weights, weight = _side(h, "u")
    registry = Registry(names)
    caps = (LinearCap.weighted(registry, weights, weight),)
    matrix = RingMatrix.from_function(
        k, k, lambda a, b: borel(columns[b], len(names), caps, names, registry, u1_derivative=a)
    )
    return apply_operator(pattern_operator(registry, h), det(matrix))


def eval_borel_det_two_sided(
    kernel: KernelJet, h_x: Sequence[int], h_y: Sequence[int]
) -> ExactScalar:
    """Two-variable Borel analogue with patterns ``h_x`` at ``chi`` and ``h_y`` at ``xi``."""
    h_x, h_y = _check_pattern(h_x), _check_pattern(h_y)
    k = sum(h_x)
    if sum(h_y) != k:
        raise PreconditionError(f"patterns {h_x} and {h_y} have different sizes")
    u_names, u_weights, u_bound = _side(h_x, "u")
    v_names, v_weights, v_bound = _side(h_y, "v")
    registry = Registry(u_names + v_names)
    caps = (
        LinearCap.weighted(registry, u_weights, u_bound),
        LinearCap.weighted(registry, v_weights, v_bound),
    )
    matrix = RingMatrix.from_function(
        k,
        k,
        lambda a, b: borel_kernel(
            kernel, len(u_names), len(v_names), caps, u_names, v_names, registry, derivatives=(a, b)
        ),
    )
    op = pattern_operator(registry, h_x, "u") * pattern_operator(registry, h_y, "v")
    return apply_operator(op, det(matrix))
