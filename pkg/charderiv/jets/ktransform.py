"""The K-transform as formal residue extraction on jets.

Around ``chi_l`` write ``w = zeta - chi_l``, ``M_l = P_l + W_l`` and
``delta_m = chi_l - chi_m``. The integrand of ``K_alpha f`` is
``f(zeta) * H_{alpha,l}(w) * w^{-M_l}`` with

    H = (chi_l + w)^{P - alpha} * prod_{m != l} (delta_m + w)^{-P_m}
        * prod_{m != l} exp F(u_m; delta_m + w) * w^{W_l} exp F(u_l; w)

where ``F(u; y) = sum_j (j-1)! u_j y^{-j}``. Under the caps the last factor is
a polynomial in ``w``, so the residue is the finite sum
``sum_a c^{(l)}_a H[M_l - 1 - a]``. Only the scalar first line depends on
``alpha``; the series part is built once per point.
"""

from __future__ import annotations

import logging
import math
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from charderiv.core.errors import PreconditionError
from charderiv.core.polys import Exponents, MultiPoly, Registry
from charderiv.core.scalars import ZERO, ExactScalar
from charderiv.core.series import TruncatedSeries
from charderiv.jets.borel import borel_weight
from charderiv.jets.jets import FunctionJet, KernelJet
from charderiv.jets.spec import DerivativeSpec

logger = logging.getLogger(__name__)


def weighted_monomials(d: int, weight: int) -> Iterator[tuple[int, ...]]:
    """Exponents ``(e_1..e_d)`` with ``sum_j j e_j == weight``."""
    if d == 0:
        if weight == 0:
            yield ()
        return
    for e_d in range(weight // d + 1):
        for rest in weighted_monomials(d - 1, weight - d * e_d):
            yield rest + (e_d,)


def _inverse_power_series(delta: ExactScalar, p: int, order: int) -> list[ExactScalar]:
    """``(delta + w)^{-p}`` up to ``w^order``."""
    inv = delta.inverse()
    base = inv**p
    out = []
    for n in range(order + 1):
        out.append(base * (math.comb(p + n - 1, n) * (-1) ** n))
        base = base * inv
    return out


def _binomial_series(chi: ExactScalar, p: int, order: int) -> list[ExactScalar]:
    """``(chi + w)^p`` for ``p >= 0`` up to ``w^order``."""
    return [
        chi ** (p - i) * math.comb(p, i) if i <= p else ZERO
        for i in range(order + 1)
    ]


def _mul_scalar_series(a: list[ExactScalar], b: list[ExactScalar], order: int) -> list[ExactScalar]:
    out = [ZERO] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if not x:
            continue
        for j in range(order + 1 - i):
            if b[j]:
                out[i + j] = out[i + j] + x * b[j]
    return out


class KTransformBasis:
    """Per-spec cache of ``tau_{alpha,l,a}`` with ``K_alpha f = sum c^{(l)}_a tau_{alpha,l,a}``."""

    def __init__(self, spec: DerivativeSpec, prefix: str = "u", registry: Registry | None = None):
        self.spec = spec
        self.prefix = prefix
        self.registry = registry or spec.u_registry(prefix)
        self.caps = spec.caps(self.registry, prefix)
        self._u_parts: dict[int, list[TruncatedSeries]] = {}
        self._taus: dict[tuple[int, int], list[TruncatedSeries]] = {}

    def pole_order(self, l: int) -> int:
        return self.spec.P_l(l) + self.spec.weight(l)

    # -- series part ---------------------------------------------------------

    def _series_const(self, value) -> TruncatedSeries:
        return TruncatedSeries.constant(self.registry, self.caps, value)

    def _variable(self, name: str) -> MultiPoly:
        return MultiPoly.variable(self.registry, name)

    def _mul_w(self, a: list[TruncatedSeries], b: list[TruncatedSeries], order: int) -> list[TruncatedSeries]:
        out = [self._series_const(0) for _ in range(order + 1)]
        for i, x in enumerate(a[: order + 1]):
            if x.is_zero:
                continue
            for j in range(order + 1 - i):
                if not b[j].is_zero:
                    out[i + j] = out[i + j] + x * b[j]
        return out

    def _remote_exp(self, l: int, m: int, order: int) -> list[TruncatedSeries]:
        """``exp F(u_m; delta + w)`` as a ``w``-series, ``delta = chi_l - chi_m``."""
        names = self.spec.u_names(m, self.prefix)
        delta = self.spec.points[l] - self.spec.points[m]
        inv = delta.inverse()
        g = []
        for n in range(order + 1):
            poly = MultiPoly.zero(self.registry)
            for j, name in enumerate(names, start=1):
                coeff = inv ** (j + n) * (math.factorial(j - 1) * math.comb(j + n - 1, n) * (-1) ** n)
                poly = poly + self._variable(name) * coeff
            g.append(TruncatedSeries(poly, self.caps))
        e = [g[0].exp()]
        for n in range(1, order + 1):
            acc = self._series_const(0)
            for i in range(1, n + 1):
                if not g[i].is_zero and not e[n - i].is_zero:
                    acc = acc + (g[i] * e[n - i]) * i
            e.append(acc / n)
        return e

    def _local_exp(self, l: int) -> list[TruncatedSeries]:
        """``w^{W_l} exp F(u_l; w)``, a polynomial of degree ``W_l`` in ``w``."""
        names = self.spec.u_names(l, self.prefix)
        weight = self.spec.weight(l)
        positions = [self.registry.index(name) for name in names]
        out = []
        for p in range(weight + 1):
            terms: dict[Exponents, ExactScalar] = {}
            for local in weighted_monomials(len(names), weight - p):
                exps = [0] * len(self.registry)
                for i, e in zip(positions, local):
                    exps[i] = e
                terms[tuple(exps)] = ExactScalar.coerce(borel_weight(local))
            out.append(TruncatedSeries.from_terms(self.registry, self.caps, terms))
        return out

    def u_part(self, l: int) -> list[TruncatedSeries]:
        if l not in self._u_parts:
            order = self.pole_order(l) - 1
            part = self._local_exp(l)[: order + 1]
            part += [self._series_const(0) for _ in range(order + 1 - len(part))]
            for m in range(self.spec.L):
                if m == l or not self.spec.u_names(m, self.prefix):
                    continue
                part = self._mul_w(part, self._remote_exp(l, m, order), order)
            self._u_parts[l] = part
            logger.debug("u-part at point %d: %d w-coefficients", l + 1, len(part))
        return self._u_parts[l]

    # -- scalar part and taus ------------------------------------------------

    def _scalar_part(self, alpha: int, l: int) -> list[ExactScalar]:
        spec = self.spec
        order = self.pole_order(l) - 1
        s = _binomial_series(spec.points[l], spec.P - alpha, order)
        for m in range(spec.L):
            if m == l:
                continue
            delta = spec.points[l] - spec.points[m]
            s = _mul_scalar_series(s, _inverse_power_series(delta, spec.P_l(m), order), order)
        return s

    def _check_alpha(self, alpha: int) -> None:
        if not 1 <= alpha <= self.spec.P:
            raise PreconditionError(f"transform index alpha={alpha} outside 1..{self.spec.P}")

    def taus(self, alpha: int, l: int) -> list[TruncatedSeries]:
        """``tau_{alpha,l,a}`` for ``a = 0..M_l - 1``."""
        self._check_alpha(alpha)
        key = (alpha, l)
        if key not in self._taus:
            top = self.pole_order(l) - 1
            scalar = self._scalar_part(alpha, l)
            u = self.u_part(l)
            out = []
            for a in range(top + 1):
                acc = self._series_const(0)
                for i in range(top - a + 1):
                    if scalar[i] and not u[top - a - i].is_zero:
                        acc = acc + u[top - a - i] * scalar[i]
                out.append(acc)
            self._taus[key] = out
        return self._taus[key]

    def tau(self, alpha: int, l: int, a: int) -> TruncatedSeries:
        return self.taus(alpha, l)[a]

    def _check_jet(self, l: int, point: ExactScalar) -> None:
        if point != self.spec.points[l]:
            raise PreconditionError(
                f"jet at {point} supplied for limiting point {self.spec.points[l]}"
            )

    def transform(self, jets: Sequence[FunctionJet], alpha: int) -> TruncatedSeries:
        """``[K_alpha f](u)`` from one jet of ``f`` per limiting point."""
        self._check_alpha(alpha)
        if len(jets) != self.spec.L:
            raise PreconditionError(f"need {self.spec.L} jets, got {len(jets)}")
        result = self._series_const(0)
        for l, jet in enumerate(jets):
            self._check_jet(l, jet.point)
            jet.require(self.pole_order(l) - 1)
            for a, tau in enumerate(self.taus(alpha, l)):
                c = jet.coefficient(a)
                if c and not tau.is_zero:
                    result = result + tau * c
        return result

    def transform_kernel(
        self,
        jets: Mapping[tuple[int, int], KernelJet],
        alpha: int,
        gamma: int,
        other: KTransformBasis | None = None,
    ) -> TruncatedSeries:
        """``[K_alpha (x) K'_gamma B]``; ``jets[(l, l')]`` is the jet at ``(chi_l, xi_l')``.

        With ``other=None`` both slots use this basis (the Pfaffian case).
        """
        other = other or self
        if other.registry != self.registry:
            raise PreconditionError("both transform slots must share one registry")
        result = self._series_const(0)
        for l in range(self.spec.L):
            taus_u = self.taus(alpha, l)
            for l2 in range(other.spec.L):
                jet = jets.get((l, l2))
                if jet is None:
                    raise PreconditionError(f"missing kernel jet for point pair {(l + 1, l2 + 1)}")
                self._check_jet(l, jet.points[0])
                other._check_jet(l2, jet.points[1])
                jet.require(self.pole_order(l) - 1, other.pole_order(l2) - 1)
                taus_v = other.taus(gamma, l2)
                for a, tau_u in enumerate(taus_u):
                    if tau_u.is_zero:
                        continue
                    inner = self._series_const(0)
                    for b, tau_v in enumerate(taus_v):
                        c = jet.coefficient(a, b)
                        if c and not tau_v.is_zero:
                            inner = inner + tau_v * c
                    if not inner.is_zero:
                        result = result + tau_u * inner
        return result


@lru_cache(maxsize=64)
def basis_for(spec: DerivativeSpec, prefix: str = "u", registry: Registry | None = None) -> KTransformBasis:
    return KTransformBasis(spec, prefix, registry)


def k_transform(
    jets: Sequence[FunctionJet], spec: DerivativeSpec, alpha: int, prefix: str = "u"
) -> TruncatedSeries:
    """``[K_{chi,alpha} f](u)`` over ``spec.u_registry(prefix)`` with the spec's caps."""
    return basis_for(spec, prefix).transform(jets, alpha)
