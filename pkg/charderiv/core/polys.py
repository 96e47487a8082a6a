"""Sparse multivariate polynomials over Gaussian rationals.

A polynomial is a map ``exponent tuple -> ExactScalar`` over a ``Registry`` of
named indeterminates. Registries are compared by value: two registries with the
same names in the same order index variables identically, anything else is a
mismatch and raises instead of re-indexing.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping

from charderiv.core.errors import NotDivisibleError, PreconditionError, RegistryMismatchError
from charderiv.core.scalars import ONE, ZERO, ExactScalar, ScalarLike

logger = logging.getLogger(__name__)

Exponents = tuple[int, ...]
_SCALAR_TYPES = (ExactScalar, int, Fraction)


@dataclass(frozen=True)
class Registry:
    """Ordered, immutable set of variable names."""

    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise PreconditionError(f"duplicate variable names in registry {self.names}")
        for name in self.names:
            if not isinstance(name, str) or not name:
                raise PreconditionError(f"invalid variable name {name!r}")

    @classmethod
    def of(cls, *names: str) -> Registry:
        return cls(tuple(names))

    @cached_property
    def _positions(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._positions[name]
        except KeyError:
            raise PreconditionError(
                f"variable {name!r} is not in registry {self.names}"
            ) from None

    def extend(self, *names: str) -> Registry:
        return Registry(self.names + tuple(names))

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._positions

    def __iter__(self):
        return iter(self.names)


def _is_scalar(value: object) -> bool:
    return isinstance(value, _SCALAR_TYPES)


def _add_exps(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


class MultiPoly:
    """Immutable sparse polynomial; no zero coefficient is ever stored."""

    __slots__ = ("registry", "_terms")

    def __init__(
        self,
        registry: Registry,
        terms: Mapping[Exponents, ScalarLike] | None = None,
    ):
        n = len(registry)
        clean: dict[Exponents, ExactScalar] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise PreconditionError(
                    f"exponent vector {exps} does not fit registry {registry.names}"
                )
            value = ExactScalar.coerce(coeff)
            if value:
                clean[exps] = clean.get(exps, ZERO) + value
        object.__setattr__(self, "registry", registry)
        object.__setattr__(self, "_terms", {e: c for e, c in clean.items() if c})

    @classmethod
    def _raw(cls, registry: Registry, terms: dict[Exponents, ExactScalar]) -> MultiPoly:
        obj = object.__new__(cls)
        object.__setattr__(obj, "registry", registry)
        object.__setattr__(obj, "_terms", terms)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, registry: Registry) -> MultiPoly:
        return cls._raw(registry, {})

    @classmethod
    def constant(cls, registry: Registry, value: ScalarLike) -> MultiPoly:
        value = ExactScalar.coerce(value)
        if not value:
            return cls.zero(registry)
        return cls._raw(registry, {(0,) * len(registry): value})

    @classmethod
    def variable(cls, registry: Registry, name: str, power: int = 1) -> MultiPoly:
        exps = [0] * len(registry)
        exps[registry.index(name)] = power
        return cls._raw(registry, {tuple(exps): ONE})

    @classmethod
    def monomial(
        cls, registry: Registry, powers: Mapping[str, int], coeff: ScalarLike = 1
    ) -> MultiPoly:
        exps = [0] * len(registry)
        for name, power in powers.items():
            exps[registry.index(name)] += power
        return cls(registry, {tuple(exps): coeff})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponents, ExactScalar]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, exps: Iterable[int]) -> ExactScalar:
        return self._terms.get(tuple(exps), ZERO)

    def constant_term(self) -> ExactScalar:
        return self._terms.get((0,) * len(self.registry), ZERO)

    def degree(self, name: str) -> int:
        i = self.registry.index(name)
        return max((e[i] for e in self._terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: MultiPoly) -> None:
        if other.registry != self.registry:
            raise RegistryMismatchError(
                f"registry {self.registry.names} does not match {other.registry.names}"
            )

    def _lift(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if _is_scalar(other):
            return MultiPoly.constant(self.registry, other)
        return None

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self.registry, {e: -c for e, c in self._terms.items()})

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            value = terms.get(exps, ZERO) + coeff
            if value:
                terms[exps] = value
            else:
                terms.pop(exps, None)
        return MultiPoly._raw(self.registry, terms)

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

    def scale(self, factor: ScalarLike) -> MultiPoly:
        factor = ExactScalar.coerce(factor)
        if not factor:
            return MultiPoly.zero(self.registry)
        return MultiPoly._raw(self.registry, {e: c * factor for e, c in self._terms.items()})

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        terms: dict[Exponents, ExactScalar] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = _add_exps(e1, e2)
                terms[exps] = terms.get(exps, ZERO) + c1 * c2
        return MultiPoly._raw(self.registry, {e: c for e, c in terms.items() if c})

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.scale(ExactScalar.coerce(other).inverse())
        return NotImplemented

    def __pow__(self, exponent: int) -> MultiPoly:
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = MultiPoly.constant(self.registry, ONE)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.registry == other.registry and self._terms == other._terms
        if _is_scalar(other):
            return self == MultiPoly.constant(self.registry, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.registry, frozenset(self._terms.items())))

    # -- calculus and substitution ----------------------------------------

    def diff(self, name: str, times: int = 1) -> MultiPoly:
        """Formal partial derivative of order ``times``."""
        if times < 0:
            raise PreconditionError(f"derivative order must be >= 0, got {times}")
        if times == 0:
            return self
        i = self.registry.index(name)
        terms: dict[Exponents, ExactScalar] = {}
        for exps, coeff in self._terms.items():
            e = exps[i]
            if e < times:
                continue
            falling = 1
            for j in range(times):
                falling *= e - j
            new = exps[:i] + (e - times,) + exps[i + 1 :]
            terms[new] = coeff * falling
        return MultiPoly._raw(self.registry, terms)

    def univariate_coefficients(self, name: str) -> dict[int, MultiPoly]:
        """Split into ``{d: a_d}`` with ``self = sum a_d * name**d``."""
        i = self.registry.index(name)
        buckets: dict[int, dict[Exponents, ExactScalar]] = {}
        for exps, coeff in self._terms.items():
            stripped = exps[:i] + (0,) + exps[i + 1 :]
            buckets.setdefault(exps[i], {})[stripped] = coeff
        return {d: MultiPoly._raw(self.registry, t) for d, t in buckets.items()}

    def shift_power(self, name: str, power: int) -> MultiPoly:
        """Multiply by ``name**power``."""
        i = self.registry.index(name)
        return MultiPoly._raw(
            self.registry,
            {e[:i] + (e[i] + power,) + e[i + 1 :]: c for e, c in self._terms.items()},
        )

    def substitute(self, name: str, value: ScalarLike | MultiPoly) -> MultiPoly:
        """Replace one variable by a scalar or a polynomial over the same registry."""
        coeffs = self.univariate_coefficients(name)
        if not coeffs:
            return self
        if not isinstance(value, MultiPoly):
            value = MultiPoly.constant(self.registry, value)
        else:
            self._check(value)
        result = MultiPoly.zero(self.registry)
        power = MultiPoly.constant(self.registry, ONE)
        for d in range(max(coeffs) + 1):
            if d in coeffs:
                result = result + coeffs[d] * power
            if d < max(coeffs):
                power = power * value
        return result

    def evaluate(self, values: Mapping[str, ScalarLike]) -> ExactScalar:
        """Evaluate at a point; every variable that occurs must be given."""
        points: list[ExactScalar | None] = [None] * len(self.registry)
        for name, value in values.items():
            points[self.registry.index(name)] = ExactScalar.coerce(value)
        powers: list[dict[int, ExactScalar]] = [{0: ONE} for _ in points]
        total = ZERO
        for exps, coeff in self._terms.items():
            term = coeff
            for i, e in enumerate(exps):
                if not e:
                    continue
                if points[i] is None:
                    raise PreconditionError(
                        f"no value given for variable {self.registry.names[i]!r}"
                    )
                cache = powers[i]
                if e not in cache:
                    cache[e] = points[i] ** e
                term = term * cache[e]
            total = total + term
        return total

    def relabel(self, target: Registry, mapping: Mapping[str, str] | None = None) -> MultiPoly:
        """Move into ``target``, renaming variables through ``mapping``.

        Unmapped variables keep their name. Two variables mapped onto the same
        target multiply, so ``B(x, y)`` relabelled with ``{x: x1, y: x1}`` is
        ``B(x1, x1)``.
        """
        mapping = mapping or {}
        slots = [target.index(mapping.get(name, name)) for name in self.registry.names]
        n = len(target)
        terms: dict[Exponents, ExactScalar] = {}
        for exps, coeff in self._terms.items():
            new = [0] * n
            for slot, e in zip(slots, exps):
                new[slot] += e
            key = tuple(new)
            terms[key] = terms.get(key, ZERO) + coeff
        return MultiPoly._raw(target, {e: c for e, c in terms.items() if c})

    # -- display -----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponents, ExactScalar]]:
        return sorted(self._terms.items())

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exps, coeff in self.sorted_terms():
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.registry.names, exps)
                if e
            ]
            pieces.append("*".join([f"({coeff})"] + factors))
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"MultiPoly({self.registry.names}, {self})"


def divide_by_linear(p: MultiPoly, i: str, j: str) -> MultiPoly:
    """Return ``q`` with ``q * (x_j - x_i) == p``.

    Synthetic division in ``x_i`` by ``x_i - x_j``; the remainder is exactly
    ``p`` with ``x_i := x_j`` and must vanish.
    """
    registry = p.registry
    zero = MultiPoly.zero(registry)
    coeffs = p.univariate_coefficients(i)
    if not coeffs:
        return zero
    xj = MultiPoly.variable(registry, j)
    top = max(coeffs)
    quotient = zero
    carry = zero
    for d in range(top, 0, -1):
        carry = coeffs.get(d, zero) + carry * xj
        quotient = quotient + carry.shift_power(i, d - 1)
    remainder = coeffs.get(0, zero) + carry * xj
    if remainder:
        raise NotDivisibleError(
            f"polynomial is not divisible by ({j} - {i}); remainder has "
            f"{len(remainder)} terms"
        )
    logger.debug("divided by (%s - %s): %d -> %d terms", j, i, len(p), len(quotient))
    return -quotient
