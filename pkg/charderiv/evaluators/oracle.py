"""Brute-force reference values from exact polynomial entries.

The determinant or Pfaffian is expanded symbolically, divided by the
Vandermonde one linear factor at a time, differentiated formally and
evaluated at the limiting points. Slow, but it shares no code with the
transform or combinatorial routes.
"""

from __future__ import annotations

import logging
from typing import Sequence

from charderiv.core.errors import PreconditionError
from charderiv.core.polys import MultiPoly, Registry, divide_by_linear
from charderiv.core.scalars import ExactScalar, ScalarLike
from charderiv.jets.spec import DerivativeSpec
from charderiv.linalg import AntisymMatrix, RingMatrix, det, pfaffian

logger = logging.getLogger(__name__)


def _names(spec: DerivativeSpec, prefix: str) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, spec.P + 1))


def _limit(numerator: MultiPoly, sides: Sequence[tuple[tuple[str, ...], DerivativeSpec]]) -> ExactScalar:
    for names, _ in sides:
        for j in range(len(names)):
            for i in range(j):
                numerator = divide_by_linear(numerator, names[i], names[j])
    logger.debug("oracle quotient has %d terms", len(numerator))
    values: dict[str, ExactScalar] = {}
    for names, spec in sides:
        for name, n in zip(names, spec.flat_exponents()):
            numerator = numerator.diff(name, n)
        for name, l in zip(names, spec.point_of()):
            values[name] = spec.points[l]
    return numerator.evaluate(values)


def oracle_det(
    kernel: MultiPoly, spec_x: DerivativeSpec, spec_y: DerivativeSpec, u: str = "u", v: str = "v"
) -> ExactScalar:
    """``lim det[B(x_a, y_b)] / (Delta(x) Delta(y))`` for a polynomial kernel ``B(u, v)``."""
    if spec_x.P != spec_y.P:
        raise PreconditionError(f"x and y sides need equal sizes, got {spec_x.P} and {spec_y.P}")
    xs, ys = _names(spec_x, "x"), _names(spec_y, "y")
    registry = Registry(xs + ys)
    matrix = RingMatrix.from_function(
        len(xs), len(ys), lambda a, b: kernel.relabel(registry, {u: xs[a], v: ys[b]})
    )
    return _limit(det(matrix), [(xs, spec_x), (ys, spec_y)])


def oracle_det_columns(columns: Sequence[MultiPoly], spec: DerivativeSpec, var: str = "x") -> ExactScalar:
    """``lim det[B_d(x_a)] / Delta(x)`` for polynomial columns in ``var``."""
    if len(columns) != spec.P:
        raise PreconditionError(f"{len(columns)} columns for P={spec.P} variables")
    xs = _names(spec, "x")
    registry = Registry(xs)
    matrix = RingMatrix.from_function(
        len(xs), len(xs), lambda a, d: columns[d].relabel(registry, {var: xs[a]})
    )
    return _limit(det(matrix), [(xs, spec)])


def oracle_pf(
    a: MultiPoly | None,
    spec: DerivativeSpec,
    b: Sequence[MultiPoly] = (),
    c: Sequence[Sequence[ScalarLike]] = (),
    u: str = "u",
    v: str = "v",
    var: str = "x",
) -> ExactScalar:
    """``lim Pf[[A(x_a, x_c), B_d(x_a)], [-B_b(x_c), C]] / Delta(x)``."""
    xs = _names(spec, "x")
    registry = Registry(xs)
    p, q = len(xs), len(b)
    if c and (len(c) != q or any(len(row) != q for row in c)):
        raise PreconditionError(f"C must be {q}x{q}")

    def entry(i: int, j: int) -> MultiPoly:
        if j < p:
            if a is None:
                return MultiPoly.zero(registry)
            return a.relabel(registry, {u: xs[i], v: xs[j]})
        if i < p:
            return b[j - p].relabel(registry, {var: xs[i]})
        value = c[i - p][j - p] if c else 0
        return MultiPoly.constant(registry, value)

    matrix = AntisymMatrix.from_function(p + q, entry)
    return _limit(pfaffian(matrix), [(xs, spec)])


def oracle_eval(
    kind: str,
    spec: DerivativeSpec,
    kernel: MultiPoly | None = None,
    columns: Sequence[MultiPoly] = (),
    c: Sequence[Sequence[ScalarLike]] = (),
    spec_y: DerivativeSpec | None = None,
    u: str = "u",
    v: str = "v",
    var: str = "x",
) -> ExactScalar:
    """Dispatch on ``kind``: ``"det"`` (kernel with ``spec_y``, or columns) or ``"pf"``."""
    if kind == "det":
        if kernel is not None:
            if spec_y is None:
                raise PreconditionError("a two-sided determinant needs spec_y")
            return oracle_det(kernel, spec, spec_y, u, v)
        return oracle_det_columns(columns, spec, var)
    if kind == "pf":
        return oracle_pf(kernel, spec, columns, c, u, v, var)
    raise PreconditionError(f"unknown oracle kind {kind!r}; expected 'det' or 'pf'")
