"""Complex Ginibre ensemble: kernel jets and mixed moments of derivatives.

Moments are normalized by ``prod_{j=N}^{N+k-1} pi j!``. In the large-N limit
they take the form ``(e^t / pi)^k * P(t)`` with ``t = |chi|^2`` and ``P`` an
exact polynomial; the ``e^t`` and ``pi`` factors travel in the prefactor.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Sequence

from charderiv.combinatorics import (
    WeightVector,
    factorial_schur,
    kostka,
    kostka_ones,
    partitions_of,
    shifted,
)
from charderiv.core.errors import CrossCheckError, PreconditionError
from charderiv.core.prefactor import Prefactor
from charderiv.core.scalars import ExactScalar, ScalarLike
from charderiv.evaluators.kostka_route import eval_det_kostka
from charderiv.evaluators.problems import DetProblem
from charderiv.jets.jets import KernelJet
from charderiv.rmt.results import ExactMoment, GinibreMomentResult
from charderiv.rmt.special import barnes_g, poly_in_t, truncated_laguerre_coefficients

logger = logging.getLogger(__name__)


def _weights(alpha: WeightVector | Sequence[int]) -> WeightVector:
    return alpha if isinstance(alpha, WeightVector) else WeightVector(tuple(alpha))


def _limit_prefactor(k: int) -> Prefactor:
    return Prefactor(exp_coeff=k, pi_power=-k)


def _binom(n: int, r: int) -> int:
    return math.comb(n, r) if 0 <= r else 0


# -- kernel -----------------------------------------------------------------------


def ginibre_kernel_prefactor(N: int | None) -> Prefactor:
    """Factor stripped from the kernel by ``ginibre_jet``: ``e^t / pi``, or ``1 / pi`` at finite N."""
    return Prefactor(exp_coeff=1 if N is None else 0, pi_power=-1)


def ginibre_coefficient(a: int, b: int, u: ExactScalar, v: ExactScalar, N: int | None = None) -> ExactScalar:
    """``d_u^a d_v^b K(u, v) / (a! b!)`` with the kernel prefactor removed.

    ``N=None`` is the limit kernel ``e^{uv}``; otherwise the truncated
    exponential ``sum_{j<N} (uv)^j / j!``.
    """
    out = ExactScalar(0)
    if N is None:
        for r in range(min(a, b) + 1):
            weight = Fraction(1, math.factorial(a - r) * math.factorial(b - r) * math.factorial(r))
            out = out + u ** (b - r) * v ** (a - r) * weight
        return out
    for j in range(max(a, b), N):
        weight = Fraction(math.comb(j, a) * math.comb(j, b), math.factorial(j))
        out = out + u ** (j - a) * v ** (j - b) * weight
    return out


def ginibre_jet(N: int | None, chi: ScalarLike, order: int, order_v: int | None = None) -> KernelJet:
    """Jet of the Ginibre kernel at ``(chi, conj(chi))`` without ``ginibre_kernel_prefactor(N)``."""
    if N is not None and N < 1:
        raise PreconditionError(f"matrix size must be positive, got N={N}")
    if order < 0:
        raise PreconditionError(f"jet order must be non-negative, got {order}")
    order_v = order if order_v is None else order_v
    u = ExactScalar.coerce(chi)
    v = u.conjugate()
    rows = tuple(
        tuple(ginibre_coefficient(a, b, u, v, N) for b in range(order_v + 1)) for a in range(order + 1)
    )
    return KernelJet((u, v), rows)


# -- closed forms ------------------------------------------------------------------


def ginibre_moment_general(k: int, alpha: WeightVector | Sequence[int]) -> GinibreMomentResult:
    """``alpha!^2 sum_m t^m sum_nu (1/hat-nu!) (sum_lam K Delta(hat-lam)/hat-lam! t_nu(hat-lam))^2``."""
    alpha = _weights(alpha)
    if k < 1 or alpha.length > k:
        raise PreconditionError(f"need k >= 1 and l(alpha) <= k, got k={k}, alpha={alpha.entries}")
    size = alpha.weight
    shapes = []
    for lam in partitions_of(size, k):
        count = kostka(lam, alpha.padded(k))
        if count:
            lam_hat = shifted(lam, k)
            shapes.append((Fraction(count * lam_hat.vandermonde(), lam_hat.factorial()), lam_hat))
    coeffs = []
    for m in range(size + 1):
        total = Fraction(0)
        for nu in partitions_of(size - m, k):
            inner = sum(
                (weight * factorial_schur(nu, lam_hat, k).re for weight, lam_hat in shapes),
                Fraction(0),
            )
            total += inner * inner / shifted(nu, k).factorial()
        coeffs.append(total * alpha.factorial() ** 2)
    logger.debug("Ginibre general moment k=%d alpha=%s: %d shapes", k, alpha.entries, len(shapes))
    return GinibreMomentResult(poly_in_t(coeffs), _limit_prefactor(k), k, alpha.padded(k))


def ginibre_moment_first(k: int, h: int) -> GinibreMomentResult:
    """``h`` underived and ``k - h`` once-derived characteristic polynomials."""
    if k < 1 or not 0 <= h <= k:
        raise PreconditionError(f"need 0 <= h <= k and k >= 1, got h={h}, k={k}")
    l = k - h
    alpha = (1,) * l + (0,) * h
    g = barnes_g(k + 1)
    if l == 0:
        return GinibreMomentResult(poly_in_t([Fraction(1, g)]), _limit_prefactor(k), k, alpha)
    coeffs = [Fraction(0)] * (l + 1)
    # shapes and factorial Schur polynomials shifted by l, not k
    shapes = [(kostka_ones(lam).hook_formula ** 2, shifted(lam, l)) for lam in partitions_of(l, l)]
    scale = Fraction(1, math.factorial(l) ** 2 * barnes_g(h + 1))
    for m in range(l - 1):
        total = Fraction(0)
        for nu in partitions_of(l - m, l):
            bracket = sum((f2 * factorial_schur(nu, lam_hat, l).re for f2, lam_hat in shapes), Fraction(0))
            weight = math.prod(math.factorial(part + k - j) for j, part in enumerate(nu.parts, start=1))
            total += bracket * bracket / weight
        coeffs[m] = total * scale
    coeffs[l - 1] += Fraction(l * l, k * g)
    coeffs[l] += Fraction(1, g)
    return GinibreMomentResult(poly_in_t(coeffs), _limit_prefactor(k), k, alpha)


def ginibre_moment_one_higher(k: int, n: int) -> GinibreMomentResult:
    """``n!^2 / ((n+k-1)! G(k)) L_{n+k-1,n}(-t)``."""
    if k < 1 or n < 0:
        raise PreconditionError(f"need k >= 1 and n >= 0, got k={k}, n={n}")
    scale = Fraction(math.factorial(n) ** 2, math.factorial(n + k - 1) * barnes_g(k))
    coeffs = [c * scale for c in truncated_laguerre_coefficients(n + k - 1, n)]
    return GinibreMomentResult(poly_in_t(coeffs, -1), _limit_prefactor(k), k, (n,) + (0,) * (k - 1))


def ginibre_moment_two_higher(k: int, n1: int, n2: int) -> GinibreMomentResult:
    if k < 2 or not n1 >= n2 >= 0:
        raise PreconditionError(f"need k >= 2 and n1 >= n2 >= 0, got k={k}, n1={n1}, n2={n2}")
    n = n1 + n2
    scale = Fraction(math.factorial(n1) ** 2 * math.factorial(n2) ** 2, barnes_g(k - 1))
    coeffs = []
    for m in range(n + 1):
        total = Fraction(0)
        for r in range((n - m) // 2 + 1):
            bracket = sum(_binom(m, s - r) - _binom(m, n - s - r + 1) for s in range(n2 + 1))
            total += Fraction(bracket * bracket, math.factorial(r + k - 2) * math.factorial(n - m - r + k - 1))
        coeffs.append(total * scale / math.factorial(m) ** 2)
    alpha = (n1, n2) + (0,) * (k - 2)
    return GinibreMomentResult(poly_in_t(coeffs), _limit_prefactor(k), k, alpha)


# -- evaluator route ---------------------------------------------------------------


def _kernel_moment(N: int | None, k: int, alpha: WeightVector, chi: ScalarLike) -> ExactScalar:
    order = alpha.weight + k - 1
    jet = ginibre_jet(N, chi, order)
    return eval_det_kostka(DetProblem(k, alpha, alpha, kernel=jet))


def ginibre_moment_from_kernel(k: int, alpha: WeightVector | Sequence[int], chi: ScalarLike) -> ExactMoment:
    """Large-N moment at ``chi`` from the kernel jet through the Kostka evaluator."""
    alpha = _weights(alpha)
    chi = ExactScalar.coerce(chi)
    value = _kernel_moment(None, k, alpha, chi)
    return ExactMoment(value, _limit_prefactor(k), ExactScalar(chi.abs2()))


def ginibre_finite_moment(N: int, k: int, alpha: WeightVector | Sequence[int], chi: ScalarLike) -> ExactMoment:
    """Exact finite-N moment at ``chi``; the prefactor is ``pi^{-k}`` alone."""
    if N < 1:
        raise PreconditionError(f"matrix size must be positive, got N={N}")
    alpha = _weights(alpha)
    chi = ExactScalar.coerce(chi)
    value = _kernel_moment(N + k, k, alpha, chi)
    return ExactMoment(value, Prefactor(pi_power=-k), ExactScalar(chi.abs2()))


def ginibre_top_coefficient(k: int) -> Fraction:
    """Coefficient of ``t^{|alpha|}`` in every large-N moment with ``k`` factors: ``1 / G(k + 1)``."""
    return Fraction(1, barnes_g(k + 1))


def check_top_coefficient(result: GinibreMomentResult) -> GinibreMomentResult:
    coeffs = result.coefficients()
    weight = sum(result.alpha)
    top = coeffs[weight] if weight < len(coeffs) else Fraction(0)
    if top != ginibre_top_coefficient(result.k):
        raise CrossCheckError(
            f"k={result.k} alpha={result.alpha}: coefficient of t^{weight} is {top}, "
            f"expected {ginibre_top_coefficient(result.k)}"
        )
    return result


def ginibre_moment_grid(max_k: int) -> list[GinibreMomentResult]:
    """``ginibre_moment_first(k, h)`` for ``k = 1..max_k`` and ``h = 0..k``, top coefficients checked."""
    if max_k < 1:
        raise PreconditionError(f"max_k must be >= 1, got {max_k}")
    return [
        check_top_coefficient(ginibre_moment_first(k, h))
        for k in range(1, max_k + 1)
        for h in range(k + 1)
    ]

