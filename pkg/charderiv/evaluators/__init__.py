from charderiv.evaluators.kostka_route import (
    a_multisum,
    a_tilde,
    eval_det_kostka,
    eval_pf_kostka,
    eval_pf_two_point,
    weighted_shapes,
)
from charderiv.evaluators.multinomial_route import eval_first_order_multinomial
from charderiv.evaluators.operator_route import (
    eval_borel_det,
    eval_borel_det_two_sided,
    eval_det_corollary,
    eval_det_corollary_two_sided,
    eval_main_theorem,
    eval_symplectic_first_order,
    pattern_operator,
)
from charderiv.evaluators.oracle import oracle_det, oracle_det_columns, oracle_eval, oracle_pf
from charderiv.evaluators.problems import DetProblem, PfaffianProblem

__all__ = [
    "DetProblem",
    "PfaffianProblem",
    "a_multisum",
    "a_tilde",
    "eval_borel_det",
    "eval_borel_det_two_sided",
    "eval_det_corollary",
    "eval_det_corollary_two_sided",
    "eval_det_kostka",
    "eval_first_order_multinomial",
    "eval_main_theorem",
    "eval_pf_kostka",
    "eval_pf_two_point",
    "eval_symplectic_first_order",
    "oracle_det",
    "oracle_det_columns",
    "oracle_eval",
    "oracle_pf",
    "pattern_operator",
    "weighted_shapes",
]
