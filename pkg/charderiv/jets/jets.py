"""Taylor jets of functions and kernels: the only way analytic data enters.

Coefficients are normalized, ``c_j = f^(j)(chi)/j!`` and
``c_ab = d_u^a d_v^b B(chi, xi)/(a! b!)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

from charderiv.core.errors import AntisymmetryError, InsufficientJetError, PreconditionError
from charderiv.core.polys import MultiPoly
from charderiv.core.scalars import ExactScalar, ScalarLike


def _scalars(values: Sequence[ScalarLike]) -> tuple[ExactScalar, ...]:
    return tuple(ExactScalar.coerce(v) for v in values)


@dataclass(frozen=True)
class FunctionJet:
    point: ExactScalar
    coeffs: tuple[ExactScalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "point", ExactScalar.coerce(self.point))
        object.__setattr__(self, "coeffs", _scalars(self.coeffs))
        if not self.coeffs:
            raise PreconditionError("a jet needs at least the order-0 coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, j: int) -> ExactScalar:
        if j > self.order:
            raise InsufficientJetError(
                f"jet at {self.point} has order {self.order}, coefficient {j} requested"
            )
        return self.coeffs[j]

    def derivative(self, j: int) -> ExactScalar:
        return self.coefficient(j) * math.factorial(j)

    def require(self, order: int) -> None:
        if order > self.order:
            raise InsufficientJetError(
                f"jet at {self.point} has order {self.order}, {order} required"
            )

    @classmethod
    def from_derivatives(cls, point: ScalarLike, derivatives: Sequence[ScalarLike]) -> FunctionJet:
        return cls(
            ExactScalar.coerce(point),
            tuple(ExactScalar.coerce(d) / math.factorial(j) for j, d in enumerate(derivatives)),
        )

    @classmethod
    def of_polynomial(cls, poly: MultiPoly, var: str, point: ScalarLike, order: int) -> FunctionJet:
        point = ExactScalar.coerce(point)
        coeffs = []
        current = poly
        for j in range(order + 1):
            coeffs.append(current.evaluate({var: point}) / math.factorial(j))
            current = current.diff(var)
        return cls(point, tuple(coeffs))

    def to_json(self) -> dict[str, Any]:
        return {
            "point": [str(self.point)],
            "order": self.order,
            "coeffs": [str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> FunctionJet:
        point = data["point"]
        if isinstance(point, list):
            if len(point) != 1:
                raise PreconditionError(f"function jet needs one point, got {point}")
            point = point[0]
        coeffs = data["coeffs"]
        if "order" in data and len(coeffs) != int(data["order"]) + 1:
            raise PreconditionError("jet order does not match the number of coefficients")
        return cls(ExactScalar.parse(str(point)), _scalars([ExactScalar.parse(str(c)) for c in coeffs]))


@dataclass(frozen=True)
class KernelJet:
    """Mixed Taylor table of ``B(u, v)`` at ``(chi, xi)``.

    With ``antisymmetric=True`` the kernel satisfies ``B(u, v) = -B(v, u)``;
    at coincident points this forces ``c_ab == -c_ba`` and is checked.
    """

    points: tuple[ExactScalar, ExactScalar]
    coeffs: tuple[tuple[ExactScalar, ...], ...]
    antisymmetric: bool = False

    def __post_init__(self):
        chi, xi = self.points
        object.__setattr__(self, "points", (ExactScalar.coerce(chi), ExactScalar.coerce(xi)))
        rows = tuple(_scalars(row) for row in self.coeffs)
        if not rows or not rows[0] or len({len(r) for r in rows}) != 1:
            raise PreconditionError("kernel jet coefficients must form a nonempty rectangle")
        object.__setattr__(self, "coeffs", rows)
        if self.antisymmetric and self.points[0] == self.points[1]:
            self.check_antisymmetric()

    @property
    def order_u(self) -> int:
        return len(self.coeffs) - 1

    @property
    def order_v(self) -> int:
        return len(self.coeffs[0]) - 1

    @property
    def coincident(self) -> bool:
        return self.points[0] == self.points[1]

    def check_antisymmetric(self) -> None:
        n = min(self.order_u, self.order_v)
        for a in range(n + 1):
            for b in range(a, n + 1):
                if self.coeffs[a][b] != -self.coeffs[b][a]:
                    raise AntisymmetryError(
                        f"kernel jet at {self.points[0]} is not antisymmetric: "
                        f"c[{a}][{b}]={self.coeffs[a][b]}, c[{b}][{a}]={self.coeffs[b][a]}"
                    )

    def coefficient(self, a: int, b: int) -> ExactScalar:
        if a > self.order_u or b > self.order_v:
            raise InsufficientJetError(
                f"kernel jet has orders ({self.order_u}, {self.order_v}), "
                f"coefficient ({a}, {b}) requested"
            )
        return self.coeffs[a][b]

    def derivative(self, a: int, b: int) -> ExactScalar:
        return self.coefficient(a, b) * (math.factorial(a) * math.factorial(b))

    def require(self, order_u: int, order_v: int) -> None:
        if order_u > self.order_u or order_v > self.order_v:
            raise InsufficientJetError(
                f"kernel jet has orders ({self.order_u}, {self.order_v}), "
                f"({order_u}, {order_v}) required"
            )

    def swapped(self) -> KernelJet:
        """Jet of ``B(v, u)`` at ``(xi, chi)``, negated for antisymmetric kernels."""
        sign = -1 if self.antisymmetric else 1
        table = tuple(
            tuple(self.coeffs[a][b] * sign for a in range(self.order_u + 1))
            for b in range(self.order_v + 1)
        )
        return KernelJet((self.points[1], self.points[0]), table, self.antisymmetric)

    def column(self, b: int) -> FunctionJet:
        """Jet in ``u`` of the ``v``-coefficient ``b``, i.e. ``d_v^b B(u, xi)/b!`` at ``chi``."""
        return FunctionJet(self.points[0], tuple(row[b] for row in self.coeffs))

    @classmethod
    def of_polynomial(
        cls,
        poly: MultiPoly,
        u: str,
        v: str,
        points: tuple[ScalarLike, ScalarLike],
        order_u: int,
        order_v: int | None = None,
        antisymmetric: bool = False,
    ) -> KernelJet:
        order_v = order_u if order_v is None else order_v
        chi, xi = (ExactScalar.coerce(p) for p in points)
        rows = []
        du = poly
        for a in range(order_u + 1):
            row = []
            dv = du
            for b in range(order_v + 1):
                value = dv.evaluate({u: chi, v: xi})
                row.append(value / (math.factorial(a) * math.factorial(b)))
                dv = dv.diff(v)
            rows.append(tuple(row))
            du = du.diff(u)
        return cls((chi, xi), tuple(rows), antisymmetric)

    def to_json(self) -> dict[str, Any]:
        square = self.order_u == self.order_v
        return {
            "point": [str(self.points[0]), str(self.points[1])],
            "order": self.order_u if square else [self.order_u, self.order_v],
            "coeffs": [[str(c) for c in row] for row in self.coeffs],
            "antisymmetric": self.antisymmetric,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> KernelJet:
        point = data["point"]
        if not isinstance(point, list) or len(point) != 2:
            raise PreconditionError(f"kernel jet needs two points, got {point}")
        rows = tuple(
            tuple(ExactScalar.parse(str(c)) for c in row) for row in data["coeffs"]
        )
        return cls(
            (ExactScalar.parse(str(point[0])), ExactScalar.parse(str(point[1]))),
            rows,
            bool(data.get("antisymmetric", False)),
        )
