"""Inputs of the evaluators, validated once at construction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from charderiv.combinatorics import WeightVector
from charderiv.core.errors import AntisymmetryError, ParityError, PreconditionError
from charderiv.core.polys import MultiPoly
from charderiv.core.scalars import ZERO, ExactScalar, ScalarLike
from charderiv.jets.jets import FunctionJet, KernelJet
from charderiv.jets.spec import DerivativeSpec

PointPair = tuple[int, int]


def _as_weights(value: WeightVector | Sequence[int]) -> WeightVector:
    return value if isinstance(value, WeightVector) else WeightVector(tuple(value))


@dataclass(frozen=True)
class PfaffianProblem:
    """``Pf[[A(x_a, x_c), B_d(x_a)], [-B_b(x_c), C_bd]] / Delta_P(x)`` and its derivatives.

    ``a_jets[(l, l2)]`` is the jet of ``A`` at ``(chi_l, chi_l2)``; a missing
    ``(l2, l)`` entry is filled from the swapped ``(l, l2)`` jet. ``a_jets=None``
    means ``A = 0``. ``b_columns[d][l]`` is the jet of ``B_d`` at ``chi_l``.
    """

    spec: DerivativeSpec
    a_jets: Mapping[PointPair, KernelJet] | None = None
    b_columns: tuple[tuple[FunctionJet, ...], ...] = ()
    c: tuple[tuple[ExactScalar, ...], ...] = field(default=())

    def __post_init__(self):
        spec = self.spec
        q = len(self.b_columns)
        if (spec.P + q) % 2:
            raise ParityError(f"P + Q = {spec.P} + {q} must be even")
        columns = tuple(tuple(col) for col in self.b_columns)
        for d, col in enumerate(columns):
            if len(col) != spec.L:
                raise PreconditionError(f"column {d + 1} has {len(col)} jets for {spec.L} points")
        object.__setattr__(self, "b_columns", columns)

        c = tuple(tuple(ExactScalar.coerce(x) for x in row) for row in self.c) if self.c else ()
        if not c:
            c = tuple(tuple(ZERO for _ in range(q)) for _ in range(q))
        if len(c) != q or any(len(row) != q for row in c):
            raise PreconditionError(f"C must be {q}x{q}")
        for i in range(q):
            if c[i][i]:
                raise AntisymmetryError(f"C has nonzero diagonal entry at {i + 1}")
            for j in range(i + 1, q):
                if c[i][j] != -c[j][i]:
                    raise AntisymmetryError(f"C entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are not opposite")
        object.__setattr__(self, "c", c)

        if self.a_jets is not None:
            jets = dict(self.a_jets)
            for (l, l2), jet in list(jets.items()):
                if not jet.antisymmetric:
                    raise AntisymmetryError(f"jet of A at point pair {(l + 1, l2 + 1)} is not marked antisymmetric")
                if (l2, l) not in jets:
                    jets[(l2, l)] = jet.swapped()
            for l in range(spec.L):
                for l2 in range(spec.L):
                    if (l, l2) not in jets:
                        raise PreconditionError(f"missing jet of A at point pair {(l + 1, l2 + 1)}")
            object.__setattr__(self, "a_jets", jets)

    @property
    def Q(self) -> int:
        return len(self.b_columns)

    @property
    def size(self) -> int:
        return self.spec.P + self.Q

    @classmethod
    def from_polynomials(
        cls,
        spec: DerivativeSpec,
        a: MultiPoly | None,
        u: str = "u",
        v: str = "v",
        b: Sequence[MultiPoly] = (),
        var: str = "x",
        c: Sequence[Sequence[ScalarLike]] = (),
    ) -> PfaffianProblem:
        """Jets of exactly the orders the transform reads, taken from polynomials."""
        a_jets = None
        if a is not None:
            a_jets = {
                (l, l2): KernelJet.of_polynomial(
                    a, u, v, (spec.points[l], spec.points[l2]),
                    spec.jet_order(l), spec.jet_order(l2), antisymmetric=True,
                )
                for l in range(spec.L)
                for l2 in range(spec.L)
            }
        columns = tuple(
            tuple(FunctionJet.of_polynomial(poly, var, spec.points[l], spec.jet_order(l)) for l in range(spec.L))
            for poly in b
        )
        return cls(spec, a_jets, columns, tuple(tuple(row) for row in c))


@dataclass(frozen=True)
class DetProblem:
    """``det[B(x_a, y_b)] / (Delta_k(x) Delta_k(y))`` with all ``x -> chi``, ``y -> xi``.

    The one-sided form gives ``columns`` (jets of ``B_b`` at ``chi``) instead
    of a kernel and has no ``y`` variables.
    """

    k: int
    alpha: WeightVector = WeightVector()
    beta: WeightVector = WeightVector()
    kernel: KernelJet | None = None
    columns: tuple[FunctionJet, ...] = ()

    def __post_init__(self):
        if self.k < 1:
            raise PreconditionError(f"determinant size must be >= 1, got {self.k}")
        alpha, beta = _as_weights(self.alpha), _as_weights(self.beta)
        if alpha.length > self.k or beta.length > self.k:
            raise PreconditionError(f"weights {alpha.entries}, {beta.entries} longer than k={self.k}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        columns = tuple(self.columns)
        object.__setattr__(self, "columns", columns)
        if (self.kernel is None) == (not columns):
            raise PreconditionError("give either a kernel jet or column jets, not both")
        if columns:
            if len(columns) != self.k:
                raise PreconditionError(f"{len(columns)} column jets for k={self.k}")
            if len({col.point for col in columns}) != 1:
                raise PreconditionError("all column jets must sit at the same point")
            if beta.weight:
                raise PreconditionError("a one-sided problem has no y-derivatives")

    @property
    def one_sided(self) -> bool:
        return self.kernel is None

    @property
    def chi(self) -> ExactScalar:
        return self.columns[0].point if self.one_sided else self.kernel.points[0]

    @property
    def xi(self) -> ExactScalar | None:
        return None if self.one_sided else self.kernel.points[1]

    def required_orders(self) -> tuple[int, int]:
        """Taylor orders in ``u`` and ``v`` the combinatorial formula reads."""
        return self.alpha.weight + self.k - 1, self.beta.weight + self.k - 1

    def check_orders(self) -> None:
        order_u, order_v = self.required_orders()
        if self.one_sided:
            for col in self.columns:
                col.require(order_u)
        else:
            self.kernel.require(order_u, order_v)

    @classmethod
    def from_polynomial(
        cls,
        kernel: MultiPoly,
        k: int,
        alpha: WeightVector | Sequence[int],
        beta: WeightVector | Sequence[int],
        chi: ScalarLike,
        xi: ScalarLike,
        u: str = "u",
        v: str = "v",
        extra_order: int = 0,
    ) -> DetProblem:
        alpha, beta = _as_weights(alpha), _as_weights(beta)
        jet = KernelJet.of_polynomial(
            kernel, u, v, (chi, xi),
            alpha.weight + k - 1 + extra_order, beta.weight + k - 1 + extra_order,
        )
        return cls(k, alpha, beta, kernel=jet)

    @classmethod
    def from_columns(
        cls,
        columns: Sequence[MultiPoly],
        alpha: WeightVector | Sequence[int],
        chi: ScalarLike,
        var: str = "x",
        extra_order: int = 0,
    ) -> DetProblem:
        alpha = _as_weights(alpha)
        k = len(columns)
        order = alpha.weight + k - 1 + extra_order
        jets = tuple(FunctionJet.of_polynomial(poly, var, chi, order) for poly in columns)
        return cls(k, alpha, columns=jets)
