"""Exact determinants, Pfaffians and Vandermonde products over any exact ring.

Entries may be ``int``, ``Fraction``, ``ExactScalar``, ``MultiPoly`` or
``TruncatedSeries``. Scalar matrices go through fraction-free Bareiss
elimination; everything else through memoized Laplace expansion, which only
needs ring operations.

Pfaffian sign convention: ``Pf([[0, a], [-a, 0]]) == a``, expansion along the
first row.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from charderiv.core.errors import AntisymmetryError, ParityError, PreconditionError
from charderiv.core.scalars import ONE, ZERO, ExactScalar

logger = logging.getLogger(__name__)

_SCALARS = (int, Fraction, ExactScalar)


def _zero_like(x: Any) -> Any:
    return x * 0


@dataclass(frozen=True)
class RingMatrix:
    """Rectangular matrix of ring elements (row-major tuples)."""

    rows: tuple[tuple[Any, ...], ...]

    def __post_init__(self):
        widths = {len(row) for row in self.rows}
        if len(widths) > 1:
            raise PreconditionError(f"ragged matrix with row lengths {sorted(widths)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> RingMatrix:
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def from_function(cls, n_rows: int, n_cols: int, fn: Callable[[int, int], Any]) -> RingMatrix:
        return cls(tuple(tuple(fn(i, j) for j in range(n_cols)) for i in range(n_rows)))

    @classmethod
    def identity(cls, n: int) -> RingMatrix:
        return cls.from_function(n, n, lambda i, j: ONE if i == j else ZERO)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def is_square(self) -> bool:
        n, m = self.shape
        return n == m

    def __getitem__(self, index: tuple[int, int]) -> Any:
        i, j = index
        return self.rows[i][j]

    def transpose(self) -> RingMatrix:
        n, m = self.shape
        return RingMatrix.from_function(m, n, lambda i, j: self.rows[j][i])

    def __matmul__(self, other: RingMatrix) -> RingMatrix:
        n, inner = self.shape
        inner2, m = other.shape
        if inner != inner2:
            raise PreconditionError(f"cannot multiply {self.shape} by {other.shape}")

        def entry(i: int, j: int) -> Any:
            total = self.rows[i][0] * other.rows[0][j]
            for p in range(1, inner):
                total = total + self.rows[i][p] * other.rows[p][j]
            return total

        return RingMatrix.from_function(n, m, entry)


class AntisymMatrix:
    """Antisymmetric matrix stored by its strict upper triangle."""

    __slots__ = ("n", "_upper")

    def __init__(self, n: int, upper: dict[tuple[int, int], Any]):
        for (i, j) in upper:
            if not 0 <= i < j < n:
                raise PreconditionError(f"upper-triangle index {(i, j)} invalid for n={n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_upper", dict(upper))

    def __setattr__(self, name, value):
        raise AttributeError("AntisymMatrix is immutable")

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], Any]) -> AntisymMatrix:
        """Build from ``fn(i, j)`` evaluated for ``i < j`` only."""
        return cls(n, {(i, j): fn(i, j) for i in range(n) for j in range(i + 1, n)})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> AntisymMatrix:
        n = len(rows)
        for i in range(n):
            if len(rows[i]) != n:
                raise PreconditionError("antisymmetric matrix must be square")
            if rows[i][i]:
                raise AntisymmetryError(f"diagonal entry ({i}, {i}) is nonzero")
            for j in range(i + 1, n):
                if rows[i][j] != -rows[j][i]:
                    raise AntisymmetryError(f"entries ({i}, {j}) and ({j}, {i}) are not opposite")
        return cls.from_function(n, lambda i, j: rows[i][j])

    @property
    def is_even(self) -> bool:
        return self.n % 2 == 0

    def __getitem__(self, index: tuple[int, int]) -> Any:
        i, j = index
        if i == j:
            return 0
        if i < j:
            return self._upper[(i, j)]
        return -self._upper[(j, i)]

    def to_matrix(self) -> RingMatrix:
        return RingMatrix.from_function(self.n, self.n, lambda i, j: self[i, j])

    def congruence(self, b: RingMatrix) -> AntisymMatrix:
        """``B^T A B``, again antisymmetric."""
        full = b.transpose() @ self.to_matrix() @ b
        return AntisymMatrix.from_function(full.shape[0], lambda i, j: full[i, j])


def _bareiss(rows: Sequence[Sequence[Any]]) -> ExactScalar:
    a = [[ExactScalar.coerce(x) for x in row] for row in rows]
    n = len(a)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not a[k][k]:
            pivot = next((r for r in range(k + 1, n) if a[r][k]), None)
            if pivot is None:
                return ZERO
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) / prev
        prev = akk
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def _laplace(rows: Sequence[Sequence[Any]]) -> Any:
    n = len(rows)
    if n == 0:
        return ONE
    zero = _zero_like(rows[0][0])
    memo: dict[tuple[int, ...], Any] = {}

    def minor(cols: tuple[int, ...]) -> Any:
        if not cols:
            return zero + 1
        if cols in memo:
            return memo[cols]
        r = n - len(cols)
        total = zero
        for pos, c in enumerate(cols):
            entry = rows[r][c]
            if not entry:
                continue
            rest = minor(cols[:pos] + cols[pos + 1 :])
            if not rest:
                continue
            term = entry * rest
            total = total - term if pos % 2 else total + term
        memo[cols] = total
        return total

    return minor(tuple(range(n)))


def det(matrix: RingMatrix | Sequence[Sequence[Any]], method: str = "auto") -> Any:
    """Exact determinant of a square matrix.

    ``method`` is ``"bareiss"``, ``"cofactor"`` or ``"auto"``; auto picks
    Bareiss when every entry is a scalar.
    """
    rows = matrix.rows if isinstance(matrix, RingMatrix) else tuple(tuple(r) for r in matrix)
    if any(len(row) != len(rows) for row in rows):
        raise PreconditionError("determinant of a non-square matrix")
    if method == "auto":
        scalar = all(isinstance(x, _SCALARS) for row in rows for x in row)
        method = "bareiss" if scalar else "cofactor"
    if method == "bareiss":
        return _bareiss(rows)
    if method == "cofactor":
        return _laplace(rows)
    raise PreconditionError(f"unknown determinant method {method!r}")


def pfaffian(matrix: AntisymMatrix) -> Any:
    """Pfaffian by first-row expansion, memoized on the surviving index set."""
    n = matrix.n
    if n % 2:
        raise ParityError(f"Pfaffian of an odd {n}x{n} matrix")
    if n == 0:
        return ONE
    zero = _zero_like(matrix[0, 1])
    memo: dict[tuple[int, ...], Any] = {}

    def pf(idx: tuple[int, ...]) -> Any:
        if not idx:
            return zero + 1
        if idx in memo:
            return memo[idx]
        first = idx[0]
        total = zero
        for pos in range(1, len(idx)):
            entry = matrix[first, idx[pos]]
            if not entry:
                continue
            rest = pf(idx[1:pos] + idx[pos + 1 :])
            if not rest:
                continue
            term = entry * rest
            total = total + term if pos % 2 else total - term
        memo[idx] = total
        return total

    result = pf(tuple(range(n)))
    logger.debug("pfaffian of %dx%d matrix used %d sub-Pfaffians", n, n, len(memo))
    return result


def vandermonde(points: Sequence[Any]) -> Any:
    """``prod_{k<j} (z_j - z_k)``; the empty product is 1."""
    result: Any = ONE
    for j in range(len(points)):
        for k in range(j):
            result = (points[j] - points[k]) * result
    return result
