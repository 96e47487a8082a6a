"""Polynomials in commuting derivative symbols and the ``D_{u,k}`` family.

A ``DiffOperator`` is an integer polynomial whose indeterminates stand for
``d/du_j``; it lives over the same ``Registry`` as the series it acts on, so
applying it is a coefficient lookup rather than repeated differentiation.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from charderiv.core.errors import PreconditionError, RegistryMismatchError
from charderiv.core.polys import Exponents, MultiPoly, Registry
from charderiv.core.scalars import ZERO, ExactScalar, ScalarLike
from charderiv.core.series import TruncatedSeries

logger = logging.getLogger(__name__)

DERIVATIVE_SYMBOL = "∂"


def canonical_registry(k: int, prefix: str = "u") -> Registry:
    return Registry(tuple(f"{prefix}{j}" for j in range(1, k + 1)))


class DiffOperator:
    """Normal-ordered derivative polynomial with integer coefficients."""

    __slots__ = ("poly",)

    def __init__(self, poly: MultiPoly):
        for exps, coeff in poly.terms.items():
            if not coeff.is_real or coeff.re.denominator != 1:
                raise PreconditionError(
                    f"derivative operators carry integer coefficients, got {coeff}"
                )
        object.__setattr__(self, "poly", poly)

    def __setattr__(self, name, value):
        raise AttributeError("DiffOperator is immutable")

    @classmethod
    def identity(cls, registry: Registry) -> DiffOperator:
        return cls(MultiPoly.constant(registry, 1))

    @classmethod
    def partial(cls, registry: Registry, name: str, times: int = 1) -> DiffOperator:
        return cls(MultiPoly.variable(registry, name, times))

    @property
    def registry(self) -> Registry:
        return self.poly.registry

    @property
    def terms(self) -> Mapping[Exponents, ExactScalar]:
        return self.poly.terms

    def coefficient(self, powers: Mapping[str, int]) -> int:
        exps = [0] * len(self.registry)
        for name, e in powers.items():
            exps[self.registry.index(name)] = e
        return int(self.poly.coefficient(tuple(exps)).re)

    def weighted_degrees(self, weights: Mapping[str, int] | None = None) -> set[int]:
        """Set of ``sum_j w_j e_j`` over the support; default weight of ``u<j>`` is ``j``."""
        if weights is None:
            w = [_trailing_index(name) for name in self.registry.names]
        else:
            w = [weights.get(name, 0) for name in self.registry.names]
        return {sum(a * b for a, b in zip(w, exps)) for exps in self.poly.terms}

    def max_orders(self) -> dict[str, int]:
        return {name: self.poly.degree(name) for name in self.registry.names}

    def __mul__(self, other: DiffOperator) -> DiffOperator:
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return DiffOperator(self.poly * other.poly)

    def __pow__(self, exponent: int) -> DiffOperator:
        return DiffOperator(self.poly**exponent)

    def __eq__(self, other) -> bool:
        if isinstance(other, DiffOperator):
            return self.poly == other.poly
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.poly)

    def relabel(self, target: Registry, mapping: Mapping[str, str] | None = None) -> DiffOperator:
        return DiffOperator(self.poly.relabel(target, mapping))

    def scaled(self, s: ScalarLike) -> MultiPoly:
        """Coefficient polynomial after ``u_j -> s^j u_j`` (each ``d/du_j`` picks up ``s^-j``)."""
        s = ExactScalar.coerce(s)
        weights = [_trailing_index(name) for name in self.registry.names]
        terms = {}
        for exps, coeff in self.poly.terms.items():
            load = sum(w * e for w, e in zip(weights, exps))
            terms[exps] = coeff * s ** (-load)
        return MultiPoly(self.registry, terms)

    def render(self) -> str:
        """Human form, e.g. ``∂u1^2 + ∂u2``; highest index written first in each term."""
        if not self.poly.terms:
            return "0"
        names = self.registry.names
        ordered = sorted(self.poly.terms.items(), key=lambda item: tuple(reversed(item[0])))
        pieces: list[str] = []
        for exps, coeff in ordered:
            factors = []
            for i in range(len(names) - 1, -1, -1):
                e = exps[i]
                if not e:
                    continue
                symbol = f"{DERIVATIVE_SYMBOL}{names[i]}"
                factors.append(symbol if e == 1 else f"{symbol}^{e}")
            value = int(coeff.re)
            magnitude = abs(value)
            body = "".join(factors)
            if not body:
                body = str(magnitude)
            elif magnitude != 1:
                body = f"{magnitude}{body}"
            if not pieces:
                pieces.append(body if value > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if value > 0 else f"- {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"DiffOperator({self.render()})"


def _trailing_index(name: str) -> int:
    """``u3 -> 3``, ``u1_3 -> 3``."""
    digits = ""
    for ch in reversed(name):
        if not ch.isdigit():
            break
        digits = ch + digits
    if not digits:
        raise PreconditionError(f"variable {name!r} carries no derivative order")
    return int(digits)


@lru_cache(maxsize=None)
def _build_D_terms(k: int) -> tuple[tuple[Exponents, int], ...]:
    if k == 1:
        return (((1,), 1),)
    previous = dict(_build_D_terms(k - 1))
    out: dict[Exponents, int] = {}

    def add(exps: list[int], coeff: int) -> None:
        key = tuple(exps)
        out[key] = out.get(key, 0) + coeff

    for exps, coeff in previous.items():
        padded = list(exps) + [0]
        # D_{k-1} * d_1
        bumped = padded.copy()
        bumped[0] += 1
        add(bumped, coeff)
        # commutator of D_{k-1} with u_l d_{l+1}, read at u = 0
        for l in range(k - 1):
            e = padded[l]
            if not e:
                continue
            moved = padded.copy()
            moved[l] -= 1
            moved[l + 1] += 1
            add(moved, coeff * e)
    return tuple(sorted((e, c) for e, c in out.items() if c))


def build_D(k: int, prefix: str = "u") -> DiffOperator:
    """``D_{u,k}`` over ``prefix1 .. prefixk`` from the commutator recurrence."""
    if k < 1:
        raise PreconditionError(f"D_(u,k) needs k >= 1, got {k}")
    registry = canonical_registry(k, prefix)
    op = DiffOperator(MultiPoly(registry, dict(_build_D_terms(k))))
    logger.debug("built D_(u,%d) with %d terms", k, len(op.terms))
    return op


def apply_operator(
    op: DiffOperator, s: TruncatedSeries, keep: Iterable[str] | None = None
) -> ExactScalar | MultiPoly:
    """``lim_{u -> 0} op s``.

    Every monomial ``d^e`` of ``op`` reads ``e! * [u^e] s``; reading outside the
    caps of ``s`` raises. Variables listed in ``keep`` are neither
    differentiated nor sent to zero and the result is a polynomial in them.
    """
    if op.registry != s.registry:
        raise RegistryMismatchError(
            f"operator over {op.registry.names} applied to a series over {s.registry.names}"
        )
    if keep is None:
        total = ZERO
        for exps, coeff in op.terms.items():
            weight = math.prod(math.factorial(e) for e in exps)
            total = total + s.coefficient(exps) * (coeff * weight)
        return total

    registry = s.registry
    kept = {registry.index(name) for name in keep}
    for exps in op.terms:
        if any(exps[i] for i in kept):
            raise PreconditionError("operator differentiates a variable marked as kept")
        if not s.admits(exps):
            s.coefficient(exps)
    by_pattern: dict[Exponents, list[tuple[Exponents, ExactScalar]]] = {}
    for exps, coeff in s.terms.items():
        pattern = tuple(0 if i in kept else e for i, e in enumerate(exps))
        rest = tuple(e if i in kept else 0 for i, e in enumerate(exps))
        by_pattern.setdefault(pattern, []).append((rest, coeff))
    out: dict[Exponents, ExactScalar] = {}
    for exps, coeff in op.terms.items():
        weight = Fraction(math.prod(math.factorial(e) for e in exps))
        factor = coeff * weight
        for rest, c in by_pattern.get(exps, ()):
            out[rest] = out.get(rest, ZERO) + c * factor
    return MultiPoly(registry, out)
