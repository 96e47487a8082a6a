"""Where and how often each merged variable is differentiated."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from charderiv.core.errors import CoincidentPointsError, PreconditionError
from charderiv.core.polys import MultiPoly, Registry
from charderiv.core.scalars import ExactScalar, ScalarLike
from charderiv.core.series import LinearCap
from charderiv.jets.operators import DiffOperator, build_D

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DerivativeSpec:
    """Limiting points ``chi_1..chi_L`` and per-point derivative orders.

    ``exponents[l]`` lists ``n_{l,1..P_l}``: the ``P_l`` variables merging into
    ``chi_l`` are differentiated ``n_{l,i}`` times each. Variables are ordered
    point by point, which fixes the sign of the Vandermonde.
    """

    points: tuple[ExactScalar, ...]
    exponents: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        points = tuple(ExactScalar.coerce(p) for p in self.points)
        exponents = tuple(tuple(int(n) for n in ns) for ns in self.exponents)
        if not points:
            raise PreconditionError("a derivative spec needs at least one point")
        if len(points) != len(exponents):
            raise PreconditionError(
                f"{len(points)} points but {len(exponents)} exponent lists"
            )
        if len(set(points)) != len(points):
            raise CoincidentPointsError(f"limiting points must be distinct: {[str(p) for p in points]}")
        for l, ns in enumerate(exponents):
            if not ns:
                raise PreconditionError(f"point {l + 1} has no variables (P_l must be >= 1)")
            if any(n < 0 for n in ns):
                raise PreconditionError(f"negative derivative order at point {l + 1}: {ns}")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "exponents", exponents)

    @classmethod
    def single(cls, point: ScalarLike, exponents: Sequence[int]) -> DerivativeSpec:
        return cls((ExactScalar.coerce(point),), (tuple(exponents),))

    @classmethod
    def from_multiplicities(
        cls, points: Sequence[ScalarLike], multiplicities: Sequence[Sequence[int]]
    ) -> DerivativeSpec:
        """``multiplicities[l][d]`` variables at point ``l`` get ``d`` derivatives."""
        exponents = []
        for ms in multiplicities:
            ns: list[int] = []
            for d, m in enumerate(ms):
                if m < 0:
                    raise PreconditionError(f"negative multiplicity in {list(ms)}")
                ns.extend([d] * m)
            exponents.append(tuple(ns))
        return cls(tuple(ExactScalar.coerce(p) for p in points), tuple(exponents))

    @classmethod
    def pattern(cls, point: ScalarLike, h: int, k: int) -> DerivativeSpec:
        """``h`` underived and ``k - h`` once-derived variables at one point."""
        if not 0 <= h <= k or k < 1:
            raise PreconditionError(f"need 0 <= h <= k and k >= 1, got h={h}, k={k}")
        return cls.single(point, [0] * h + [1] * (k - h))

    @property
    def L(self) -> int:
        return len(self.points)

    def P_l(self, l: int) -> int:
        return len(self.exponents[l])

    @property
    def P(self) -> int:
        return sum(len(ns) for ns in self.exponents)

    def weight(self, l: int) -> int:
        """``W_l = sum_i n_{l,i}``."""
        return sum(self.exponents[l])

    def max_order(self, l: int) -> int:
        return max(self.exponents[l])

    def multiplicities(self, l: int) -> tuple[int, ...]:
        """``m_{l,d}`` for ``d = 0..max_order(l)``."""
        ns = self.exponents[l]
        return tuple(ns.count(d) for d in range(max(ns) + 1))

    def jet_order(self, l: int) -> int:
        """Taylor order at ``chi_l`` the transform reads: ``P_l + W_l - 1``."""
        return self.P_l(l) + self.weight(l) - 1

    def flat_exponents(self) -> tuple[int, ...]:
        return tuple(n for ns in self.exponents for n in ns)

    def point_of(self) -> tuple[int, ...]:
        """Point index of each of the ``P`` merged variables, in order."""
        return tuple(l for l, ns in enumerate(self.exponents) for _ in ns)

    # -- u variables -------------------------------------------------------

    def u_names(self, l: int, prefix: str = "u") -> tuple[str, ...]:
        return tuple(f"{prefix}{l + 1}_{j}" for j in range(1, self.max_order(l) + 1))

    def all_u_names(self, prefix: str = "u") -> tuple[str, ...]:
        return tuple(name for l in range(self.L) for name in self.u_names(l, prefix))

    def u_registry(self, prefix: str = "u") -> Registry:
        return Registry(self.all_u_names(prefix))

    def caps(self, registry: Registry, prefix: str = "u") -> tuple[LinearCap, ...]:
        """One weighted cap per point: ``sum_j j * e_{l,j} <= W_l``."""
        caps = []
        for l in range(self.L):
            names = self.u_names(l, prefix)
            if not names:
                continue
            weights = {name: j for j, name in enumerate(names, start=1)}
            caps.append(LinearCap.weighted(registry, weights, self.weight(l)))
        logger.debug("caps for %s: %s", self.exponents, caps)
        return tuple(caps)

    def operator(self, registry: Registry, prefix: str = "u") -> DiffOperator:
        """``prod_l prod_k D_{u_l,k}^{m_{l,k}}`` relabelled into ``registry``."""
        op = DiffOperator(MultiPoly.constant(registry, 1))
        for l in range(self.L):
            for k, m in enumerate(self.multiplicities(l)):
                if k == 0 or m == 0:
                    continue
                d = build_D(k)
                mapping = {f"u{j}": f"{prefix}{l + 1}_{j}" for j in range(1, k + 1)}
                op = op * d.relabel(registry, mapping) ** m
        return op

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        return {
            "points": [str(p) for p in self.points],
            "exponents": [list(ns) for ns in self.exponents],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> DerivativeSpec:
        if "points" not in data:
            raise PreconditionError("derivative spec needs 'points'")
        points = tuple(ExactScalar.parse(str(p)) for p in data["points"])
        if "exponents" in data:
            return cls(points, tuple(tuple(ns) for ns in data["exponents"]))
        if "multiplicities" in data:
            return cls.from_multiplicities(points, data["multiplicities"])
        raise PreconditionError("derivative spec needs 'exponents' or 'multiplicities'")
