"""First-order derivative patterns as multinomial sums over compositions."""

from __future__ import annotations

from charderiv.combinatorics import first_order_row_weights
from charderiv.core.errors import PreconditionError
from charderiv.core.scalars import ZERO, ExactScalar
from charderiv.evaluators.problems import DetProblem
from charderiv.linalg import det


def _check_first_order(weights: tuple[int, ...], h: int, k: int, side: str) -> None:
    if not 0 <= h <= k:
        raise PreconditionError(f"need 0 <= h <= k on the {side} side, got h={h}, k={k}")
    if sorted(weights) != [0] * h + [1] * (k - h):
        raise PreconditionError(
            f"{side}-derivatives {weights} are not {h} zeros and {k - h} ones"
        )


def eval_first_order_multinomial(problem: DetProblem, h: int, h_y: int | None = None) -> ExactScalar:
    """``h`` underived and ``k - h`` once-derived variables (``h_y`` on the ``y`` side, default ``h``).

    Sums ``multinomial(k - h; r) det[c_{r_a + a - 1}]`` over compositions ``r``
    of ``k - h`` (and likewise ``s`` of ``k - h_y`` for the ``y`` side),
    collapsed onto increasing row sets by ``first_order_row_weights``.
    """
    k = problem.k
    _check_first_order(problem.alpha.padded(k), h, k, "x")
    problem.check_orders()
    m = k - h
    total = ZERO
    if problem.one_sided:
        for rows, weight in first_order_row_weights(m, k):
            value = det([[col.coefficient(row) for col in problem.columns] for row in rows])
            total = total + value * weight
        return total

    h_y = h if h_y is None else h_y
    _check_first_order(problem.beta.padded(k), h_y, k, "y")
    m_y = k - h_y
    jet = problem.kernel
    for rows, weight in first_order_row_weights(m, k):
        for cols, weight_y in first_order_row_weights(m_y, k):
            value = det([[jet.coefficient(row, col) for col in cols] for row in rows])
            total = total + value * (weight * weight_y)
    return total
