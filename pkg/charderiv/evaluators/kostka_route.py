"""Closed combinatorial sums over partitions weighted by Kostka numbers.

All determinants and Pfaffians here are over exact scalars built from the
normalized Taylor coefficients ``c_{a,b} = d^a d^b B / (a! b!)``, which absorbs
the ``1 / hat-mu!`` factors of the derivative form.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from charderiv.combinatorics import (
    ShiftedSequence,
    WeightVector,
    kostka,
    partitions_of,
    shifted,
    signed_permutations,
    weak_compositions,
)
from charderiv.core.errors import CoincidentPointsError, PreconditionError
from charderiv.core.scalars import ZERO, ExactScalar
from charderiv.evaluators.problems import DetProblem
from charderiv.jets.jets import KernelJet
from charderiv.linalg import AntisymMatrix, det, pfaffian

logger = logging.getLogger(__name__)


def weighted_shapes(alpha: WeightVector, size: int) -> list[tuple[int, ShiftedSequence]]:
    """``(K_{mu,alpha}, hat-mu)`` for ``mu |- |alpha|`` with ``l(mu) <= size`` and ``K != 0``."""
    weights = alpha.padded(size)
    out = []
    for mu in partitions_of(alpha.weight, size):
        count = kostka(mu, weights)
        if count:
            out.append((count, shifted(mu, size)))
    return out


def eval_det_kostka(problem: DetProblem) -> ExactScalar:
    problem.check_orders()
    k = problem.k
    rows = weighted_shapes(problem.alpha, k)
    total = ZERO
    if problem.one_sided:
        for count, mu_hat in rows:
            value = det([[col.coefficient(mu_hat[a]) for col in problem.columns] for a in range(k)])
            total = total + value * count
        return total * problem.alpha.factorial()

    jet = problem.kernel
    cols = weighted_shapes(problem.beta, k)
    for count_mu, mu_hat in rows:
        for count_lam, lam_hat in cols:
            value = det([[jet.coefficient(mu_hat[a], lam_hat[b]) for b in range(k)] for a in range(k)])
            total = total + value * (count_mu * count_lam)
    return total * (problem.alpha.factorial() * problem.beta.factorial())


def eval_pf_kostka(jet: KernelJet, alpha: WeightVector | Sequence[int], k: int) -> ExactScalar:
    """``lim prod d^{alpha_j} Pf[A(x_a, x_b)]_{2k x 2k} / Delta_{2k}`` at one point."""
    alpha = alpha if isinstance(alpha, WeightVector) else WeightVector(tuple(alpha))
    n = 2 * k
    if k < 1:
        raise PreconditionError(f"Pfaffian half-size must be >= 1, got {k}")
    if alpha.length > n:
        raise PreconditionError(f"weight {alpha.entries} longer than {n}")
    if not jet.coincident:
        raise PreconditionError("the one-point Pfaffian formula needs a jet at (chi, chi)")
    jet.check_antisymmetric()
    order = alpha.weight + n - 1
    jet.require(order, order)
    total = ZERO
    for count, mu_hat in weighted_shapes(alpha, n):
        matrix = AntisymMatrix.from_function(n, lambda a, b: jet.coefficient(mu_hat[a], mu_hat[b]))
        total = total + pfaffian(matrix) * count
    return total * alpha.factorial()


# -- two limiting points -----------------------------------------------------------


def _compositions_direct(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    yield from weak_compositions(total, parts)


def _bounded_vectors(bounds: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    return product(*(range(b + 1) for b in bounds))


@lru_cache(maxsize=None)
def _a_rows(x: tuple[int, ...], remaining: tuple[int, ...]) -> int:
    # Rows of S' are filled one at a time; each row's r-composition sums to a binomial.
    n = len(remaining)
    if not x:
        return 0 if any(remaining) else 1
    first, rest = x[0], x[1:]
    if not rest:
        return math.comb(first + sum(remaining) + n - 1, first)
    total = 0
    for row in _bounded_vectors(remaining):
        left = tuple(r - s for r, s in zip(remaining, row))
        sub = _a_rows(rest, left)
        if sub:
            total += math.comb(first + sum(row) + n - 1, first) * sub
    return total


def _a_direct(x: tuple[int, ...], y: tuple[int, ...]) -> int:
    m, n = len(x), len(y)
    total = 0
    for rs in product(*(list(_compositions_direct(xl, n)) for xl in x)):
        for ss in product(*(list(_compositions_direct(yj, m)) for yj in y)):
            term = 1
            for j in range(n):
                for l in range(m):
                    term *= math.comb(rs[l][j] + ss[j][l], rs[l][j])
            total += term
    return total


def a_multisum(x: Sequence[int], y: Sequence[int], route: str = "rows") -> int:
    """The binomial multi-sum over compositions ``r^{(l)}`` of ``x_l`` and ``s^{(j)}`` of ``y_j``.

    Any negative argument makes the sum empty. ``route="direct"`` enumerates
    every pair of composition families; ``"rows"`` sums the ``r`` side in
    closed form.
    """
    x, y = tuple(int(v) for v in x), tuple(int(v) for v in y)
    if any(v < 0 for v in x + y):
        return 0
    if route == "direct":
        return _a_direct(x, y)
    if route != "rows":
        raise PreconditionError(f"unknown multi-sum route {route!r}")
    if not y:
        return 0 if any(x) else 1
    # symmetric in each tuple separately
    return _a_rows(tuple(sorted(x)), tuple(sorted(y)))


@lru_cache(maxsize=None)
def _a_tilde(
    lam_hat: tuple[int, ...], nu_hat: tuple[int, ...], mu_hat: tuple[int, ...], eta_hat: tuple[int, ...]
) -> int:
    upper = [(s, [lam_hat[i] - nu_hat[p[i]] for i in range(len(lam_hat))]) for s, p in signed_permutations(len(lam_hat))]
    lower = [(s, [mu_hat[i] - eta_hat[p[i]] for i in range(len(mu_hat))]) for s, p in signed_permutations(len(mu_hat))]
    total = 0
    for s_up, x in upper:
        if any(v < 0 for v in x):
            continue
        for s_low, y in lower:
            if any(v < 0 for v in y):
                continue
            total += s_up * s_low * a_multisum(x, y)
    return total


def a_tilde(
    lam_hat: Sequence[int], nu_hat: Sequence[int], mu_hat: Sequence[int], eta_hat: Sequence[int]
) -> int:
    """Signed double permutation sum of ``a_multisum``; antisymmetric in each tuple."""
    lam_hat, nu_hat, mu_hat, eta_hat = (tuple(int(v) for v in t) for t in (lam_hat, nu_hat, mu_hat, eta_hat))
    if len(lam_hat) != len(nu_hat) or len(mu_hat) != len(eta_hat):
        raise PreconditionError(
            f"upper tuples have lengths {len(lam_hat)}, {len(nu_hat)} and lower tuples "
            f"{len(mu_hat)}, {len(eta_hat)}; each pair must match"
        )
    return _a_tilde(lam_hat, nu_hat, mu_hat, eta_hat)


def eval_pf_two_point(
    chi_chi: KernelJet,
    chi_xi: KernelJet,
    xi_xi: KernelJet,
    alpha: WeightVector | Sequence[int],
    k: int,
    extra_q: int = 0,
) -> ExactScalar:
    """``lim prod_j (d_{x_{1,j}} d_{x_{2,j}})^{alpha_j} Pf / Delta_{2k}`` with ``k`` variables at each point.

    The sums over ``q`` and ``q'`` run to ``|alpha| + extra_q``; every term past
    ``|alpha|`` vanishes.
    """
    alpha = alpha if isinstance(alpha, WeightVector) else WeightVector(tuple(alpha))
    if k < 1:
        raise PreconditionError(f"need k >= 1, got {k}")
    if alpha.length > k:
        raise PreconditionError(f"weight {alpha.entries} longer than k={k}")
    chi, xi = chi_xi.points
    if chi == xi:
        raise CoincidentPointsError("the two-point formula needs chi != xi")
    if chi_chi.points != (chi, chi) or xi_xi.points != (xi, xi):
        raise PreconditionError("jets must sit at (chi, chi), (chi, xi) and (xi, xi)")
    chi_chi.check_antisymmetric()
    xi_xi.check_antisymmetric()
    order = alpha.weight + k - 1
    for jet in (chi_chi, chi_xi, xi_xi):
        jet.require(order, order)

    delta = xi - chi
    shapes = weighted_shapes(alpha, k)
    top = alpha.weight + extra_q
    total = ZERO
    for q in range(top + 1):
        for q2 in range(top + 1):
            for nu in partitions_of(q, k):
                nu_hat = shifted(nu, k)
                for eta in partitions_of(q2, k):
                    eta_hat = shifted(eta, k)
                    weight = sum(
                        c1 * c2 * _a_tilde(lam_hat.values, nu_hat.values, mu_hat.values, eta_hat.values)
                        for c1, lam_hat in shapes
                        for c2, mu_hat in shapes
                    )
                    if not weight:
                        continue

                    def entry(a: int, b: int) -> ExactScalar:
                        if b < k:
                            return chi_chi.coefficient(nu_hat[a], nu_hat[b])
                        if a < k:
                            return chi_xi.coefficient(nu_hat[a], eta_hat[b - k])
                        return xi_xi.coefficient(eta_hat[a - k], eta_hat[b - k])

                    pf = pfaffian(AntisymMatrix.from_function(2 * k, entry))
                    total = total + pf * delta ** (q + q2) * ((-1) ** q2 * weight)
    prefactor = Fraction(alpha.factorial() ** 2 * (-1) ** alpha.weight)
    logger.debug("two-point Pfaffian sum: %d shapes, q up to %d", len(shapes), top)
    return total * prefactor / delta ** (2 * alpha.weight + k * k)
