"""Circular unitary ensemble: finite-N moments, inside-disc limits, unit-circle limit."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

from charderiv.combinatorics import inv_factorial_or_zero
from charderiv.core.errors import InsufficientTruncationError, PreconditionError
from charderiv.core.polys import MultiPoly, Registry
from charderiv.core.prefactor import Prefactor
from charderiv.core.scalars import ONE, ZERO, ExactScalar, ScalarLike
from charderiv.core.series import LinearCap, TruncatedSeries
from charderiv.evaluators.operator_route import eval_borel_det_two_sided, pattern_operator
from charderiv.jets.borel import borel_kernel
from charderiv.jets.jets import KernelJet
from charderiv.jets.operators import DiffOperator, apply_operator
from charderiv.linalg import RingMatrix, det
from charderiv.rmt.results import CueMomentResult
from charderiv.rmt.special import T, hermite_coefficients, laguerre_coefficients, poly_in_t

logger = logging.getLogger(__name__)


# -- kernel ----------------------------------------------------------------------


def cue_kernel_polynomial(N: int, u: str = "u", v: str = "v") -> MultiPoly:
    """``sum_{j<N} (uv)^j`` over the registry ``(u, v)``."""
    registry = Registry.of(u, v)
    return MultiPoly(registry, {(j, j): 1 for j in range(N)})


def cue_jet(N: int, chi: ScalarLike, order: int, order_v: int | None = None) -> KernelJet:
    """Jet of ``sum_{j<N} (uv)^j`` at ``(chi, conj(chi))``."""
    if N < 0 or order < 0:
        raise PreconditionError(f"need N >= 0 and order >= 0, got N={N}, order={order}")
    order_v = order if order_v is None else order_v
    u = ExactScalar.coerce(chi)
    v = u.conjugate()
    u_pows, v_pows = [ONE], [ONE]
    for _ in range(max(N, 1)):
        u_pows.append(u_pows[-1] * u)
        v_pows.append(v_pows[-1] * v)
    rows = []
    for a in range(order + 1):
        row = []
        for b in range(order_v + 1):
            total = ZERO
            for j in range(max(a, b), N):
                total = total + u_pows[j - a] * v_pows[j - b] * (math.comb(j, a) * math.comb(j, b))
            row.append(total)
        rows.append(tuple(row))
    return KernelJet((u, v), tuple(rows))


def _pattern(k: int, h1: int, h2: int) -> tuple[int, ...]:
    if k < 1 or h1 < 0 or h2 < 0 or h1 + h2 > k:
        raise PreconditionError(f"need k >= 1 and 0 <= h1 + h2 <= k, got k={k}, h1={h1}, h2={h2}")
    return (k - h1 - h2, h1, h2) if h2 else (k - h1, h1)


CUE_ROUTES = ("laguerre", "jet")


@dataclass(frozen=True)
class BorelLayout:
    """Variables ``u1..ud, v1..vd`` and the weighted caps for a pattern ``h``."""

    h: tuple[int, ...]
    registry: Registry
    caps: tuple[LinearCap, LinearCap]
    d: int
    bound: int

    @classmethod
    def of(cls, h: Sequence[int]) -> BorelLayout:
        h = tuple(h)
        d = max(len(h) - 1, 1)
        u_names = tuple(f"u{j}" for j in range(1, d + 1))
        v_names = tuple(f"v{j}" for j in range(1, d + 1))
        registry = Registry(u_names + v_names)
        bound = sum(j * m for j, m in enumerate(h))
        caps = (
            LinearCap.weighted(registry, {name: j for j, name in enumerate(u_names, start=1)}, bound),
            LinearCap.weighted(registry, {name: j for j, name in enumerate(v_names, start=1)}, bound),
        )
        return cls(h, registry, caps, d, bound)

    @property
    def u_names(self) -> tuple[str, ...]:
        return self.registry.names[: self.d]

    @property
    def v_names(self) -> tuple[str, ...]:
        return self.registry.names[self.d :]

    def operator(self) -> DiffOperator:
        return pattern_operator(self.registry, self.h, "u") * pattern_operator(self.registry, self.h, "v")


def _laguerre_side(point: ExactScalar, r: int, l: int, bound: int) -> dict[tuple[int, ...], ExactScalar]:
    """``point^p L_p^{(r)}(-u/point)`` with ``p = l - r``, expanded in ``u`` up to ``u^bound``."""
    p = l - r
    coeffs = laguerre_coefficients(p, r, max_power=bound)
    return {(m,): point ** (p - m) * (c * (-1) ** m) for m, c in enumerate(coeffs) if c}


@lru_cache(maxsize=None)
def _hermite_pair(n: int) -> dict[tuple[int, int], Fraction]:
    """``(-i sqrt(u2))^n H_n(i u1 / (2 sqrt(u2)))`` as a polynomial in ``(u1, u2)``."""
    return {
        (p, (n - p) // 2): Fraction(c * (-1) ** ((n - p) // 2), 2**p)
        for p, c in enumerate(hermite_coefficients(n))
        if c
    }


def _hermite_side(point: ExactScalar, r: int, l: int, bound: int) -> dict[tuple[int, ...], ExactScalar]:
    """``sum_j l! point^{l-j} G_{j-r}(u1, u2) / (j! (l-j)! (j-r)!)``, loads up to ``bound``."""
    out: dict[tuple[int, ...], ExactScalar] = {}
    for j in range(r, min(l, r + bound) + 1):
        scale = point ** (l - j) * Fraction(math.comb(l, j), math.factorial(j - r))
        for exps, c in _hermite_pair(j - r).items():
            out[exps] = out.get(exps, ZERO) + scale * c
    return out


def _laguerre_entries(N: int, k: int, chi: ExactScalar, layout: BorelLayout) -> list[list[TruncatedSeries]]:
    side = _laguerre_side if layout.d == 1 else _hermite_side
    xi = chi.conjugate()
    left = [[side(chi, r, l, layout.bound) if l >= r else {} for l in range(N)] for r in range(k)]
    right = [[side(xi, s, l, layout.bound) if l >= s else {} for l in range(N)] for s in range(k)]
    rows = []
    for r in range(k):
        row = []
        for s in range(k):
            terms: dict[tuple[int, ...], ExactScalar] = {}
            for l in range(max(r, s), N):
                for m, x in left[r][l].items():
                    for n, y in right[s][l].items():
                        terms[m + n] = terms.get(m + n, ZERO) + x * y
            row.append(TruncatedSeries.from_terms(layout.registry, layout.caps, terms))
        rows.append(row)
    return rows


def cue_borel_entries(
    N: int, k: int, h1: int, h2: int = 0, *, chi: ScalarLike, route: str = "laguerre"
) -> list[list[TruncatedSeries]]:
    """``d_{u1}^r d_{v1}^s [B_chi (x) B_conj(chi) K_{N+k}](u, v)`` for ``r, s < k``.

    ``route="laguerre"`` sums products of generalized Laguerre polynomials
    (Hermite-type polynomials in ``(u1, u2)`` when ``h2 > 0``) over the
    kernel's terms; ``route="jet"`` reads the same entries off the kernel jet.
    """
    h = _pattern(k, h1, h2)
    if N < 0:
        raise PreconditionError(f"need N >= 0, got N={N}")
    if route not in CUE_ROUTES:
        raise PreconditionError(f"unknown CUE route {route!r}; expected one of {', '.join(CUE_ROUTES)}")
    chi = ExactScalar.coerce(chi)
    layout = BorelLayout.of(h)
    if route == "laguerre":
        return _laguerre_entries(N + k, k, chi, layout)
    jet = cue_jet(N + k, chi, layout.bound + k - 1)
    return [
        [
            borel_kernel(
                jet, layout.d, layout.d, layout.caps, layout.u_names, layout.v_names, layout.registry,
                derivatives=(r, s),
            )
            for s in range(k)
        ]
        for r in range(k)
    ]


def cue_finite_moment(
    N: int, k: int, h1: int, h2: int = 0, *, chi: ScalarLike, route: str = "laguerre"
) -> ExactScalar:
    """``<|D|^{2h_0} |D'|^{2h_1} |D''|^{2h_2}>`` over ``U(N)`` at ``chi``, exactly.

    The pattern operators on both sides applied to the determinant of
    ``cue_borel_entries`` and sent to zero. The ``jet`` route goes through
    the generic two-sided Borel evaluator instead.
    """
    h = _pattern(k, h1, h2)
    if N < 0:
        raise PreconditionError(f"need N >= 0, got N={N}")
    if route == "jet":
        return eval_borel_det_two_sided(cue_jet(N + k, chi, h1 + 2 * h2 + k - 1), h, h)
    entries = cue_borel_entries(N, k, h1, h2, chi=chi, route=route)
    layout = BorelLayout.of(h)
    value = apply_operator(layout.operator(), det(RingMatrix.from_rows(entries)))
    logger.debug("CUE finite moment N=%d k=%d h=%s by %s entries", N, k, h, route)
    return value


# -- inside the unit disc ------------------------------------------------------------


def cue_inside_disc(k: int, h1: int) -> CueMomentResult:
    """``h1! L_{h1}(-k^2 t) / (1 - t)^{k^2 + 2 h1}``."""
    _pattern(k, h1, 0)
    coeffs = [c * math.factorial(h1) for c in laguerre_coefficients(h1, 0)]
    prefactor = Prefactor(one_minus_t_power=-(k * k + 2 * h1))
    return CueMomentResult(poly_in_t(coeffs, -(k * k)), prefactor, k, (k - h1, h1))


def cue_inside_disc_general(k: int, h: Sequence[int]) -> CueMomentResult:
    """Limit with ``h[j]`` factors carrying ``j`` derivatives, any depth.

    Builds ``P_j(t; u) = j! [z^j] (1 + t z)^{k+j-1} exp(sum_l (l-1)! u_l (1+z)^l)``
    as truncated series in ``u`` with polynomial coefficients in ``t`` and
    applies ``prod_j D_{u,j}^{h_j}`` to ``prod_j P_j^{h_j}``.
    """
    h = tuple(int(m) for m in h)
    if not h or any(m < 0 for m in h) or sum(h) != k or k < 1:
        raise PreconditionError(f"multiplicities {h} must be non-negative and sum to k={k}")
    d = max(len(h) - 1, 1)
    weight = sum(j * m for j, m in enumerate(h))
    u_names = tuple(f"u{j}" for j in range(1, d + 1))
    registry = Registry(("t", "z") + u_names)
    caps = (
        LinearCap.weighted(registry, {name: j for j, name in enumerate(u_names, start=1)}, weight),
        LinearCap.per_variable(registry, "z", d),
    )
    z = TruncatedSeries(MultiPoly.variable(registry, "z"), caps)
    one_plus_z = z + 1
    exponent = TruncatedSeries.zero(registry, caps)
    for l, name in enumerate(u_names, start=1):
        u_l = TruncatedSeries(MultiPoly.variable(registry, name), caps)
        exponent = exponent + u_l * one_plus_z**l * math.factorial(l - 1)
    generator = exponent.exp()

    z_index = registry.index("z")
    by_z: dict[int, dict[tuple[int, ...], ExactScalar]] = {}
    for exps, coeff in generator.terms.items():
        stripped = exps[:z_index] + (0,) + exps[z_index + 1 :]
        by_z.setdefault(exps[z_index], {})[stripped] = coeff
    t = MultiPoly.variable(registry, "t")

    product = TruncatedSeries.constant(registry, caps, 1)
    for j, m in enumerate(h):
        if not m:
            continue
        poly = MultiPoly.zero(registry)
        for i in range(j + 1):
            part = MultiPoly(registry, by_z.get(i, {}))
            poly = poly + part * t ** (j - i) * math.comb(k + j - 1, j - i)
        factor = TruncatedSeries(poly * math.factorial(j), caps)
        product = product * factor**m

    op = pattern_operator(registry, h, "u")
    value = apply_operator(op, product, keep=("t", "z"))
    t_index = registry.index("t")
    payload = MultiPoly(T, {(exps[t_index],): coeff for exps, coeff in value.terms.items()})
    logger.debug("inside-disc limit k=%d h=%s: degree %d in t", k, h, payload.degree("t") if payload else 0)
    prefactor = Prefactor(one_minus_t_power=-(k * k + 2 * weight))
    return CueMomentResult(payload, prefactor, k, h)


# -- unit circle ----------------------------------------------------------------------


def _circle_operator(h1: int, c: ExactScalar) -> list[ExactScalar]:
    """Coefficients of ``(c(c+1) + d - d^2)^{h1}`` as a polynomial in ``d``."""
    base = [c * (c + 1), ONE, -ONE]
    out = [ONE]
    for _ in range(h1):
        nxt = [ZERO] * (len(out) + 2)
        for i, a in enumerate(out):
            for j, b in enumerate(base):
                nxt[i + j] = nxt[i + j] + a * b
        out = nxt
    return out


def bessel_entry_series(k: int, a: int, b: int, registry: Registry, caps: Sequence[LinearCap]) -> TruncatedSeries:
    """``u^{(b-a-k)/2} I_{k+a-b}(2 sqrt(u)) = sum_m u^m / (m! (m+k+a-b)!)``; ``a, b`` are 1-based."""
    nu = k + a - b
    bound = min(cap.bound for cap in caps)
    terms = {(m,): inv_factorial_or_zero(m) * inv_factorial_or_zero(m + nu) for m in range(bound + 1)}
    return TruncatedSeries.from_terms(registry, caps, terms)


def cue_circle_limit_d1_exact(k: int, h1: int, c: ScalarLike = 0, truncation: int | None = None) -> ExactScalar:
    """``lim_{u->0} (c(c+1) + d_u - d_u^2)^{h1} det[u^{(b-a-k)/2} I_{k+a-b}(2 sqrt u)]``."""
    _pattern(k, h1, 0)
    c = ExactScalar.coerce(c)
    needed = 2 * h1
    truncation = needed if truncation is None else truncation
    if truncation < needed:
        raise InsufficientTruncationError(
            f"the operator reads u^{needed}; truncation {truncation} is too low"
        )
    registry = Registry.of("u")
    caps = (LinearCap.total(registry, ["u"], truncation),)
    matrix = [[bessel_entry_series(k, a, b, registry, caps) for b in range(1, k + 1)] for a in range(1, k + 1)]
    series = det(matrix)
    total = ZERO
    for e, coeff in enumerate(_circle_operator(h1, c)):
        if coeff:
            total = total + series.coefficient((e,)) * (coeff * math.factorial(e))
    return total


def cue_circle_limit_d1(k: int, h1: int, c: ScalarLike = 0) -> float:
    return float(cue_circle_limit_d1_exact(k, h1, c))


def cue_circle_finite(N: int, k: int, h1: int, c: ScalarLike = 0) -> ExactScalar:
    """``lim prod (x d_x + Nc)(y d_y + Nc) Z_0`` at ``chi = 1`` for finite N.

    Each ``(x d_x + Nc)`` factor acts on one once-derived variable; at ``x = 1``
    it expands into patterns with ``i`` derivatives weighted ``C(h1, i) (Nc)^{h1-i}``.
    """
    _pattern(k, h1, 0)
    if N < 1:
        raise PreconditionError(f"matrix size must be positive, got N={N}")
    nc = ExactScalar.coerce(c) * N
    jet = cue_jet(N + k, 1, k - 1 + h1)
    total = ZERO
    for i in range(h1 + 1):
        for i2 in range(h1 + 1):
            weight = nc ** (2 * h1 - i - i2) * (math.comb(h1, i) * math.comb(h1, i2))
            if weight:
                total = total + eval_borel_det_two_sided(jet, (k - i, i), (k - i2, i2)) * weight
    return total


@dataclass(frozen=True)
class CircleConvergence:
    """Rescaled finite-N circle values against the large-N limit."""

    k: int
    h1: int
    c: ExactScalar
    sizes: tuple[int, ...]
    rescaled: tuple[float, ...]
    limit: float

    @property
    def errors(self) -> tuple[float, ...]:
        return tuple(abs(v / self.limit - 1.0) for v in self.rescaled)

    @property
    def monotone(self) -> bool:
        errs = self.errors
        return all(b <= a for a, b in zip(errs, errs[1:]))

    @property
    def richardson(self) -> float:
        """``2 f(2N) - f(N)`` from the last two sizes."""
        return 2 * self.rescaled[-1] - self.rescaled[-2]

    @property
    def richardson_error(self) -> float:
        return abs(self.richardson / self.limit - 1.0)

    def passes(self, tolerance: float) -> bool:
        return self.monotone and self.richardson_error < tolerance


def cue_circle_convergence(
    k: int, h1: int, c: ScalarLike = 0, sizes: Sequence[int] = (40, 80, 160)
) -> CircleConvergence:
    sizes = tuple(int(n) for n in sizes)
    if len(sizes) < 2 or any(b != 2 * a for a, b in zip(sizes, sizes[1:])):
        raise PreconditionError(f"circle sizes must double at each step, got {sizes}")
    scale = k * k + 2 * h1
    rescaled = tuple(float(Fraction(cue_circle_finite(n, k, h1, c).re) / n**scale) for n in sizes)
    limit = cue_circle_limit_d1(k, h1, c)
    logger.debug("circle k=%d h1=%d: rescaled %s, limit %.12g", k, h1, rescaled, limit)
    return CircleConvergence(k, h1, ExactScalar.coerce(c), sizes, rescaled, limit)
