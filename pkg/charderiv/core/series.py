"""Truncated multivariate power series.

A ``TruncatedSeries`` is a ``MultiPoly`` together with linear caps
``sum_i w_i * e_i <= bound``; a monomial is stored only if every cap admits
it. Products keep the union of both operands' caps, which is the tighter
truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from charderiv.core.errors import (
    InsufficientTruncationError,
    PreconditionError,
    RegistryMismatchError,
)
from charderiv.core.polys import Exponents, MultiPoly, Registry
from charderiv.core.scalars import ONE, ZERO, ExactScalar, ScalarLike


@dataclass(frozen=True, order=True)
class LinearCap:
    """Keep monomials with ``sum(weights[i] * e[i]) <= bound``."""

    weights: tuple[int, ...]
    bound: int

    def __post_init__(self):
        if any(w < 0 for w in self.weights):
            raise PreconditionError(f"cap weights must be non-negative: {self.weights}")
        if self.bound < 0:
            raise PreconditionError(f"cap bound must be non-negative: {self.bound}")

    @classmethod
    def weighted(cls, registry: Registry, weights: Mapping[str, int], bound: int) -> LinearCap:
        w = [0] * len(registry)
        for name, weight in weights.items():
            w[registry.index(name)] = weight
        return cls(tuple(w), bound)

    @classmethod
    def total(cls, registry: Registry, names: Iterable[str], bound: int) -> LinearCap:
        return cls.weighted(registry, {name: 1 for name in names}, bound)

    @classmethod
    def per_variable(cls, registry: Registry, name: str, bound: int) -> LinearCap:
        return cls.weighted(registry, {name: 1}, bound)

    def load(self, exps: Exponents) -> int:
        return sum(w * e for w, e in zip(self.weights, exps))

    def admits(self, exps: Exponents) -> bool:
        return self.load(exps) <= self.bound


def _normalize_caps(registry: Registry, caps: Iterable[LinearCap]) -> tuple[LinearCap, ...]:
    caps = tuple(sorted(set(caps)))
    for cap in caps:
        if len(cap.weights) != len(registry):
            raise RegistryMismatchError(
                f"cap with {len(cap.weights)} weights used over registry {registry.names}"
            )
    return caps


class TruncatedSeries:
    """Immutable truncated series; arithmetic re-truncates eagerly."""

    __slots__ = ("poly", "caps")

    def __init__(self, poly: MultiPoly, caps: Iterable[LinearCap]):
        caps = _normalize_caps(poly.registry, caps)
        kept = {
            e: c
            for e, c in poly.terms.items()
            if all(cap.admits(e) for cap in caps)
        }
        object.__setattr__(self, "poly", MultiPoly._raw(poly.registry, kept))
        object.__setattr__(self, "caps", caps)

    @classmethod
    def _raw(cls, poly: MultiPoly, caps: tuple[LinearCap, ...]) -> TruncatedSeries:
        obj = object.__new__(cls)
        object.__setattr__(obj, "poly", poly)
        object.__setattr__(obj, "caps", caps)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def zero(cls, registry: Registry, caps: Iterable[LinearCap]) -> TruncatedSeries:
        return cls(MultiPoly.zero(registry), caps)

    @classmethod
    def constant(
        cls, registry: Registry, caps: Iterable[LinearCap], value: ScalarLike
    ) -> TruncatedSeries:
        return cls(MultiPoly.constant(registry, value), caps)

    @classmethod
    def from_terms(
        cls,
        registry: Registry,
        caps: Iterable[LinearCap],
        terms: Mapping[Exponents, ScalarLike],
    ) -> TruncatedSeries:
        return cls(MultiPoly(registry, terms), caps)

    # -- inspection --------------------------------------------------------

    @property
    def registry(self) -> Registry:
        return self.poly.registry

    @property
    def terms(self) -> Mapping[Exponents, ExactScalar]:
        return self.poly.terms

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def __bool__(self) -> bool:
        return not self.poly.is_zero

    def admits(self, exps: Exponents) -> bool:
        return all(cap.admits(exps) for cap in self.caps)

    def coefficient(self, exps: Iterable[int]) -> ExactScalar:
        """Exact coefficient; asking for a monomial outside the caps raises."""
        exps = tuple(exps)
        if not self.admits(exps):
            raise InsufficientTruncationError(
                f"monomial {exps} lies outside the truncation caps of this series"
            )
        return self.poly.coefficient(exps)

    def max_degrees(self) -> tuple[int | None, ...]:
        """Largest admitted exponent per variable, ``None`` when uncapped."""
        out: list[int | None] = []
        for i in range(len(self.registry)):
            bounds = [cap.bound // cap.weights[i] for cap in self.caps if cap.weights[i]]
            out.append(min(bounds) if bounds else None)
        return tuple(out)

    def admitted_monomials(self) -> Iterator[Exponents]:
        """Every exponent vector the caps admit, in lexicographic order."""
        limits = self.max_degrees()
        if any(limit is None for limit in limits):
            raise InsufficientTruncationError(
                "cannot enumerate monomials of a series with an uncapped variable"
            )
        n = len(limits)

        def walk(prefix: list[int]) -> Iterator[Exponents]:
            i = len(prefix)
            if i == n:
                yield tuple(prefix)
                return
            for e in range(limits[i] + 1):
                candidate = prefix + [e] + [0] * (n - i - 1)
                if not self.admits(tuple(candidate)):
                    break
                yield from walk(prefix + [e])

        return walk([])

    # -- arithmetic --------------------------------------------------------

    def _merge_caps(self, other: TruncatedSeries) -> tuple[LinearCap, ...]:
        if other.registry != self.registry:
            raise RegistryMismatchError(
                f"registry {self.registry.names} does not match {other.registry.names}"
            )
        if other.caps == self.caps:
            return self.caps
        return _normalize_caps(self.registry, self.caps + other.caps)

    def _lift(self, other) -> TruncatedSeries | None:
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, MultiPoly):
            return TruncatedSeries(other, self.caps)
        if isinstance(other, (ExactScalar, int, Fraction)):
            return TruncatedSeries(MultiPoly.constant(self.registry, other), self.caps)
        return None

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries._raw(-self.poly, self.caps)

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        caps = self._merge_caps(other)
        total = self.poly + other.poly
        if caps == self.caps == other.caps:
            return TruncatedSeries._raw(total, caps)
        return TruncatedSeries(total, caps)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (ExactScalar, int, Fraction)):
            return TruncatedSeries._raw(self.poly.scale(other), self.caps)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        caps = self._merge_caps(other)
        terms: dict[Exponents, ExactScalar] = {}
        mine = [(e, c) for e, c in self.poly.terms.items()]
        for e2, c2 in other.poly.terms.items():
            for e1, c1 in mine:
                exps = tuple(a + b for a, b in zip(e1, e2))
                if not all(cap.admits(exps) for cap in caps):
                    continue
                terms[exps] = terms.get(exps, ZERO) + c1 * c2
        poly = MultiPoly._raw(self.registry, {e: c for e, c in terms.items() if c})
        return TruncatedSeries._raw(poly, caps)

    def __rmul__(self, other):
        if isinstance(other, (ExactScalar, int, Fraction)):
            return self * other
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other * self

    def __truediv__(self, other):
        if isinstance(other, (ExactScalar, int, Fraction)):
            return self * ExactScalar.coerce(other).inverse()
        return NotImplemented

    def __pow__(self, exponent: int) -> TruncatedSeries:
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = TruncatedSeries.constant(self.registry, self.caps, ONE)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def exp(self) -> TruncatedSeries:
        """``exp`` of a series without constant term, summed until truncation kills it."""
        if self.poly.constant_term():
            raise PreconditionError("exp needs a series with zero constant term")
        for exps in self.poly.terms:
            if not any(cap.load(exps) for cap in self.caps):
                raise InsufficientTruncationError(
                    f"term {exps} is not reduced by any cap; exp would not terminate"
                )
        result = TruncatedSeries.constant(self.registry, self.caps, ONE)
        term = result
        r = 0
        while True:
            r += 1
            term = (term * self) / r
            if term.is_zero:
                return result
            result = result + term

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            return self.caps == other.caps and self.poly == other.poly
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.poly}, caps={list(self.caps)})"
