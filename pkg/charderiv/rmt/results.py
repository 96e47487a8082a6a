"""Moment results: an exact polynomial in ``t = |chi|^2`` times a symbolic prefactor."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from charderiv.core.polys import MultiPoly
from charderiv.core.prefactor import Prefactor
from charderiv.core.scalars import ExactScalar, ScalarLike
from charderiv.rmt.special import T


@dataclass(frozen=True)
class MomentResult:
    poly: MultiPoly
    prefactor: Prefactor

    def __post_init__(self):
        if self.poly.registry != T:
            raise ValueError(f"moment payloads are polynomials in t, got {self.poly.registry.names}")

    @property
    def degree(self) -> int:
        return self.poly.degree("t") if self.poly else 0

    def coefficients(self) -> list[Fraction]:
        """Rational coefficient of ``t^m`` for ``m = 0..degree``."""
        out = []
        for m in range(self.degree + 1):
            c = self.poly.coefficient((m,))
            if c.im:
                raise ValueError(f"coefficient of t^{m} is not real: {c}")
            out.append(c.re)
        return out

    def payload(self, t: ScalarLike) -> ExactScalar:
        return self.poly.evaluate({"t": t})

    def numeric(self, t: float) -> float:
        value = 0.0
        for c in reversed(self.coefficients()):
            value = value * t + float(c)
        return value * self.prefactor.numeric(t)

    def poly_t(self) -> list[list[str]]:
        return [[str(m), str(ExactScalar(c))] for m, c in enumerate(self.coefficients()) if c]

    def _body(self) -> dict[str, Any]:
        return {"prefactor": self.prefactor.to_json(), "poly_t": self.poly_t()}


@dataclass(frozen=True)
class GinibreMomentResult(MomentResult):
    """Large-N Ginibre mixed moment divided by ``prod_{j=N}^{N+k-1} pi j!``."""

    k: int = 1
    alpha: tuple[int, ...] = ()

    def to_json(self) -> dict[str, Any]:
        return {"k": self.k, "alpha": list(self.alpha), **self._body()}


@dataclass(frozen=True)
class CueMomentResult(MomentResult):
    """Inside-disc CUE limit; ``h[j]`` factors carry ``j`` derivatives."""

    k: int = 1
    h: tuple[int, ...] = ()

    def to_json(self) -> dict[str, Any]:
        return {"k": self.k, "h": list(self.h), **self._body()}


@dataclass(frozen=True)
class ExactMoment:
    """Finite-N moment value at a concrete point, with its prefactor."""

    value: ExactScalar
    prefactor: Prefactor
    t: ExactScalar

    def numeric(self) -> float | complex:
        return self.value.numeric() * self.prefactor.numeric(float(self.t))

    def to_json(self) -> dict[str, Any]:
        return {"value": str(self.value), "t": str(self.t), "prefactor": self.prefactor.to_json()}
