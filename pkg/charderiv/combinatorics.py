"""Partitions, shifted sequences, Kostka numbers and (factorial) Schur polynomials.

Ordering conventions used everywhere a sum runs over these objects:

* partitions of ``m`` are listed in reverse lexicographic order,
  ``(3), (2, 1), (1, 1, 1)``;
* weak compositions are listed in lexicographic order,
  ``(0, 2), (1, 1), (2, 0)``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from sympy.combinatorics import Permutation
from sympy.utilities.iterables import partitions as _sympy_partitions

from charderiv.core.errors import CoincidentPointsError, CrossCheckError, PreconditionError
from charderiv.core.scalars import ONE, ZERO, ExactScalar, ScalarLike
from charderiv.linalg import det, vandermonde

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive parts; trailing zeros are dropped."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise PreconditionError(f"partition parts must be positive: {self.parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise PreconditionError(f"partition parts must be weakly decreasing: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> Partition:
        return cls(tuple(parts))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, j: int) -> int:
        """1-based part, zero beyond the length."""
        return self.parts[j - 1] if j <= len(self.parts) else 0

    def padded(self, k: int) -> tuple[int, ...]:
        return self.parts + (0,) * (k - len(self.parts))

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class WeightVector:
    """A weak composition; order of entries matters."""

    entries: tuple[int, ...] = ()

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if any(e < 0 for e in entries):
            raise PreconditionError(f"weights must be non-negative: {self.entries}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *entries: int) -> WeightVector:
        return cls(tuple(entries))

    @property
    def weight(self) -> int:
        return sum(self.entries)

    @property
    def length(self) -> int:
        return len(self.entries)

    def factorial(self) -> int:
        """``alpha! = prod alpha_j!``."""
        return math.prod(math.factorial(e) for e in self.entries)

    def padded(self, k: int) -> tuple[int, ...]:
        if len(self.entries) > k:
            raise PreconditionError(f"weight {self.entries} longer than {k}")
        return self.entries + (0,) * (k - len(self.entries))

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class ShiftedSequence:
    """Strictly increasing ``values[j] = j + lambda_{k-j}`` (0-based j)."""

    k: int
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.values)
        if len(values) != self.k:
            raise PreconditionError(f"shifted sequence needs {self.k} values, got {values}")
        for j, v in enumerate(values):
            if v < j or (j and v <= values[j - 1]):
                raise PreconditionError(f"not a shifted sequence: {values}")
        object.__setattr__(self, "values", values)

    def factorial(self) -> int:
        """``hat-lambda! = prod hat-lambda_j!``."""
        return math.prod(math.factorial(v) for v in self.values)

    def vandermonde(self) -> int:
        return math.prod(
            self.values[b] - self.values[a]
            for b in range(self.k)
            for a in range(b)
        )

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, j: int) -> int:
        return self.values[j]

    def __len__(self) -> int:
        return self.k


def _as_partition(value: Partition | Sequence[int]) -> Partition:
    return value if isinstance(value, Partition) else Partition(tuple(value))


def _as_weights(value: WeightVector | Sequence[int]) -> tuple[int, ...]:
    return value.entries if isinstance(value, WeightVector) else WeightVector(tuple(value)).entries


@lru_cache(maxsize=None)
def _partitions(m: int, max_len: int) -> tuple[Partition, ...]:
    if m == 0:
        return (Partition(),)
    found = []
    for multiplicities in _sympy_partitions(m, m=max_len):
        parts: list[int] = []
        for part, count in multiplicities.items():
            if part > 0:
                parts.extend([part] * count)
        found.append(tuple(sorted(parts, reverse=True)))
    return tuple(Partition(p) for p in sorted(found, reverse=True))


def partitions_of(m: int, max_len: int | None = None) -> list[Partition]:
    """All partitions of ``m`` with at most ``max_len`` parts, reverse lexicographic."""
    if m < 0:
        raise PreconditionError(f"cannot partition a negative integer {m}")
    max_len = m if max_len is None else max_len
    if max_len < 1:
        return [Partition()] if m == 0 else []
    return list(_partitions(m, min(max_len, m) if m else 1))


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ``parts``-tuples of non-negative integers summing to ``total``, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def shifted(lam: Partition | Sequence[int], k: int) -> ShiftedSequence:
    """``hat-lambda_j = j - 1 + lambda_{k-j+1}``."""
    lam = _as_partition(lam)
    if lam.length > k:
        raise PreconditionError(f"partition {lam} has more than {k} parts")
    return ShiftedSequence(k, tuple(j + lam.part(k - j) for j in range(k)))


def unshift(seq: ShiftedSequence) -> Partition:
    k = seq.k
    return Partition(tuple(seq.values[k - 1 - i] - (k - 1 - i) for i in range(k)))


def _horizontal_strips(shape: tuple[int, ...], size: int) -> Iterator[tuple[int, ...]]:
    """Inner shapes ``mu`` with ``shape / mu`` a horizontal strip of ``size`` boxes."""
    n = len(shape)

    def walk(i: int, remaining: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if i == n:
            if remaining == 0:
                yield tuple(p for p in acc if p)
            return
        lower = shape[i + 1] if i + 1 < n else 0
        for mu_i in range(shape[i], lower - 1, -1):
            removed = shape[i] - mu_i
            if removed > remaining:
                break
            yield from walk(i + 1, remaining - removed, acc + [mu_i])

    return walk(0, size, [])


@lru_cache(maxsize=None)
def count_tableaux(shape: tuple[int, ...], weights: tuple[int, ...]) -> int:
    """Semistandard tableaux of ``shape`` whose content is ``weights``, in order.

    Backtracks by peeling off the boxes holding the largest entry, which in a
    column-strict row-weak filling always form a horizontal strip.
    """
    if sum(shape) != sum(weights):
        return 0
    if not weights:
        return 1 if not shape else 0
    *rest, last = weights
    rest = tuple(rest)
    if last == 0:
        return count_tableaux(shape, rest)
    return sum(count_tableaux(inner, rest) for inner in _horizontal_strips(shape, last))


def kostka(lam: Partition | Sequence[int], alpha: WeightVector | Sequence[int]) -> int:
    """Kostka number ``K_{lambda, alpha}``; zero when the weights differ."""
    lam = _as_partition(lam)
    weights = _as_weights(alpha)
    if lam.weight != sum(weights):
        return 0
    key = tuple(sorted((w for w in weights if w), reverse=True))
    return count_tableaux(lam.parts, key)


def hook_length(lam: Partition | Sequence[int], row: int, col: int) -> int:
    """Hook length of the box in ``row``, ``col`` (1-based)."""
    lam = _as_partition(lam)
    if not (1 <= row <= lam.length and 1 <= col <= lam.part(row)):
        raise PreconditionError(f"box ({row}, {col}) is not in {lam}")
    arm = lam.part(row) - col
    leg = sum(1 for r in range(row + 1, lam.length + 1) if lam.part(r) >= col)
    return arm + leg + 1


@dataclass(frozen=True)
class StandardTableauxCount:
    hook_formula: int
    shifted_formula: int


def kostka_ones(lam: Partition | Sequence[int]) -> StandardTableauxCount:
    """``K_{lambda,(1,...,1)}`` by the hook-length and the shifted-Vandermonde forms."""
    lam = _as_partition(lam)
    if not lam.length:
        raise PreconditionError("kostka_ones needs a nonempty partition")
    m = lam.weight
    hooks = math.prod(
        hook_length(lam, r, c)
        for r in range(1, lam.length + 1)
        for c in range(1, lam.part(r) + 1)
    )
    seq = shifted(lam, m)
    by_shift = Fraction(math.factorial(m) * seq.vandermonde(), seq.factorial())
    if by_shift.denominator != 1:
        raise CrossCheckError(f"shifted form of K_{lam},1 is not an integer: {by_shift}")
    return StandardTableauxCount(math.factorial(m) // hooks, int(by_shift))


def permutation_sign(perm: Sequence[int]) -> int:
    return Permutation(list(perm)).signature()


def signed_permutations(n: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    for perm in permutations(range(n)):
        yield permutation_sign(perm), perm


def schur_bialternant(lam: Partition | Sequence[int], points: Sequence[ScalarLike]) -> ExactScalar:
    """``det[u_a^{hat-lambda_b}] / Delta_k(u)`` for pairwise distinct points."""
    lam = _as_partition(lam)
    u = [ExactScalar.coerce(p) for p in points]
    seq = shifted(lam, len(u))
    denominator = vandermonde(u)
    if not denominator:
        raise CoincidentPointsError("bialternant route needs pairwise distinct points")
    numerator = det([[ua**v for v in seq.values] for ua in u])
    return numerator / denominator


def schur_monomial(lam: Partition | Sequence[int], points: Sequence[ScalarLike]) -> ExactScalar:
    """``sum_alpha K_{lambda,alpha} prod u_a^{alpha_a}``."""
    lam = _as_partition(lam)
    u = [ExactScalar.coerce(p) for p in points]
    if lam.length > len(u):
        return ZERO
    total = ZERO
    for alpha in weak_compositions(lam.weight, len(u)):
        coeff = kostka(lam, alpha)
        if not coeff:
            continue
        term = ExactScalar.coerce(coeff)
        for ua, e in zip(u, alpha):
            if e:
                term = term * ua**e
        total = total + term
    return total


def schur_eval(
    lam: Partition | Sequence[int], points: Sequence[ScalarLike], route: str = "both"
) -> ExactScalar:
    """Schur polynomial at ``points``.

    ``route="both"`` uses the monomial sum and, when the points are distinct,
    checks it against the bialternant.
    """
    lam = _as_partition(lam)
    if lam.length > len(points):
        raise PreconditionError(f"{lam} has more parts than there are points")
    if route == "det":
        return schur_bialternant(lam, points)
    monomial = schur_monomial(lam, points)
    if route == "monomial":
        return monomial
    if route != "both":
        raise PreconditionError(f"unknown Schur route {route!r}")
    u = [ExactScalar.coerce(p) for p in points]
    if len(set(u)) == len(u):
        bialternant = schur_bialternant(lam, u)
        if bialternant != monomial:
            raise CrossCheckError(
                f"Schur routes disagree for {lam}: {bialternant} != {monomial}"
            )
    return monomial


def inv_factorial_or_zero(n: int) -> Fraction:
    """``1/n!`` with ``1/(negative)! = 0``."""
    if n < 0:
        return Fraction(0)
    return Fraction(1, math.factorial(n))


def falling_factorial_ratio(x: int, n: int) -> int:
    """``x!/(x-n)!``, zero when ``x - n`` is negative."""
    if n < 0 or x - n < 0:
        return 0
    return math.factorial(x) // math.factorial(x - n)


def factorial_schur(
    nu: Partition | Sequence[int], points: ShiftedSequence | Sequence[int], k: int | None = None
) -> ExactScalar:
    """Factorial Schur ``t_nu(x) = det[x_a!/(x_a - hat-nu_b)!] / Delta_k(x)``."""
    nu = _as_partition(nu)
    x = tuple(points.values if isinstance(points, ShiftedSequence) else points)
    k = len(x) if k is None else k
    if len(x) != k:
        raise PreconditionError(f"factorial Schur needs {k} points, got {len(x)}")
    if any(x[a] >= x[a + 1] for a in range(k - 1)):
        raise PreconditionError(f"points must be strictly increasing: {x}")
    nu_hat = shifted(nu, k)
    numerator = det([[falling_factorial_ratio(xa, v) for v in nu_hat.values] for xa in x])
    return numerator / vandermonde(list(x))


def multinomial(m: int, parts: Iterable[int]) -> int:
    parts = tuple(parts)
    if any(p < 0 for p in parts) or sum(parts) != m:
        raise PreconditionError(f"parts {parts} do not form a composition of {m}")
    result = math.factorial(m)
    for p in parts:
        result //= math.factorial(p)
    return result


@lru_cache(maxsize=None)
def first_order_row_weights(m: int, k: int) -> tuple[tuple[ShiftedSequence, int], ...]:
    """Collapse ``sum_r multinomial(m; r) det[c_{r_a + a}]`` onto increasing row sets.

    Compositions whose rows ``r_a + a`` collide drop out; the others are
    sorted and pick up the sign of the sort. The surviving weight of
    ``shifted(lambda, k)`` is ``K_{lambda, 1^m}``, which is checked here.
    """
    if m < 0 or k < 1:
        raise PreconditionError(f"need m >= 0 and k >= 1, got m={m}, k={k}")
    collapsed: dict[ShiftedSequence, int] = {}
    for r in weak_compositions(m, k):
        rows = [r[a] + a for a in range(k)]
        if len(set(rows)) < k:
            continue
        order = sorted(range(k), key=rows.__getitem__)
        key = ShiftedSequence(k, tuple(rows[i] for i in order))
        collapsed[key] = collapsed.get(key, 0) + permutation_sign(order) * multinomial(m, r)
    collapsed = {key: w for key, w in collapsed.items() if w}
    expected = {shifted(lam, k): kostka(lam, (1,) * m) for lam in partitions_of(m, k)}
    if collapsed != expected:
        raise CrossCheckError(f"multinomial weights for m={m}, k={k} disagree with K_(lambda, 1^m)")
    logger.debug("first-order weights m=%d k=%d: %d row sets", m, k, len(collapsed))
    return tuple(sorted(collapsed.items(), key=lambda item: item[0].values))
