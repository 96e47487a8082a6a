from charderiv.rmt.cue import (
    CUE_ROUTES,
    CircleConvergence,
    cue_borel_entries,
    cue_circle_convergence,
    cue_circle_finite,
    cue_circle_limit_d1,
    cue_circle_limit_d1_exact,
    cue_finite_moment,
    cue_inside_disc,
    cue_inside_disc_general,
    cue_jet,
    cue_kernel_polynomial,
)
from charderiv.rmt.ginibre import (
    check_top_coefficient,
    ginibre_finite_moment,
    ginibre_jet,
    ginibre_kernel_prefactor,
    ginibre_moment_first,
    ginibre_moment_from_kernel,
    ginibre_moment_general,
    ginibre_moment_grid,
    ginibre_moment_one_higher,
    ginibre_moment_two_higher,
    ginibre_top_coefficient,
)
from charderiv.rmt.results import CueMomentResult, ExactMoment, GinibreMomentResult, MomentResult
from charderiv.rmt.special import barnes_g, bessel_i, hermite, hermite_coefficients, laguerre, special, truncated_laguerre

__all__ = [
    "CUE_ROUTES",
    "CircleConvergence",
    "CueMomentResult",
    "ExactMoment",
    "GinibreMomentResult",
    "MomentResult",
    "barnes_g",
    "bessel_i",
    "check_top_coefficient",
    "cue_borel_entries",
    "cue_circle_convergence",
    "cue_circle_finite",
    "cue_circle_limit_d1",
    "cue_circle_limit_d1_exact",
    "cue_finite_moment",
    "cue_inside_disc",
    "cue_inside_disc_general",
    "cue_jet",
    "cue_kernel_polynomial",
    "ginibre_finite_moment",
    "ginibre_jet",
    "ginibre_kernel_prefactor",
    "ginibre_moment_first",
    "ginibre_moment_from_kernel",
    "ginibre_moment_general",
    "ginibre_moment_grid",
    "ginibre_moment_one_higher",
    "ginibre_moment_two_higher",
    "ginibre_top_coefficient",
    "hermite",
    "hermite_coefficients",
    "laguerre",
    "special",
    "truncated_laguerre",
]
