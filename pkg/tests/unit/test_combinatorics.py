import math
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charderiv.combinatorics import (
    Partition,
    ShiftedSequence,
    factorial_schur,
    first_order_row_weights,
    hook_length,
    kostka,
    kostka_ones,
    multinomial,
    partitions_of,
    schur_eval,
    shifted,
    unshift,
    weak_compositions,
)
from charderiv.core import CoincidentPointsError, ExactScalar, PreconditionError
from charderiv.linalg import det, vandermonde


@st.composite
def partitions(draw, max_weight=6, max_len=4):
    m = draw(st.integers(0, max_weight))
    options = partitions_of(m, max_len)
    return draw(st.sampled_from(options))


def test_partitions_small_cases():
    assert partitions_of(0, 3) == [Partition()]
    assert partitions_of(3, 2) == [Partition.of(3), Partition.of(2, 1)]
    assert len(partitions_of(6, 3)) == 7


def test_partitions_are_reverse_lexicographic_and_unique():
    found = partitions_of(7, 7)
    assert len(found) == 15
    assert [p.parts for p in found] == sorted((p.parts for p in found), reverse=True)


def test_weak_compositions_order():
    assert list(weak_compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert list(weak_compositions(0, 0)) == [()]
    assert len(list(weak_compositions(3, 3))) == math.comb(5, 2)


def test_shifted_sequences():
    assert shifted(Partition(), 3).values == (0, 1, 2)
    assert shifted(Partition.of(5), 4).values == (0, 1, 2, 8)
    n1, n2, s, k = 4, 3, 2, 4
    assert shifted(Partition.of(n1 + n2 - s, s), k).values == (0, 1, s + k - 2, n1 + n2 - s + k - 1)
    with pytest.raises(PreconditionError):
        shifted(Partition.of(1, 1, 1), 2)


@settings(max_examples=50, deadline=None)
@given(partitions(max_len=4), st.integers(4, 6))
def test_shift_round_trip(lam, k):
    assert unshift(shifted(lam, k)) == lam


def test_kostka_examples():
    assert kostka(Partition.of(3, 1), (2, 1, 1)) == 2
    assert kostka(Partition.of(3, 1), (2, 1)) == 0
    assert kostka(Partition.of(3, 2, 1), (3, 2, 1)) == 1
    assert kostka(Partition.of(5), (5, 0, 0)) == 1


def test_kostka_ones_routes_agree():
    for m in range(1, 7):
        for lam in partitions_of(m):
            count = kostka_ones(lam)
            assert count.hook_formula == count.shifted_formula == kostka(lam, (1,) * m)
    assert kostka_ones(Partition.of(4)).hook_formula == 1
    assert kostka_ones(Partition.of(2, 1)).hook_formula == 2


def test_hook_length_of_marked_box():
    assert hook_length(Partition.of(4, 3, 1), 1, 2) == 4


def test_kostka_is_symmetric_in_the_weight():
    for m in range(6):
        for alpha in weak_compositions(m, 3):
            for lam in partitions_of(m, 3):
                values = {kostka(lam, perm) for perm in permutations(alpha)}
                assert len(values) == 1


def test_schur_examples():
    pts = [ExactScalar(2), ExactScalar(Fraction(1, 3)), ExactScalar(-1)]
    assert schur_eval(Partition(), pts) == 1
    assert schur_eval(Partition.of(1), pts) == sum(pts, ExactScalar(0))
    total = sum(kostka(Partition.of(3, 1), a) for a in weak_compositions(4, 3))
    assert schur_eval(Partition.of(3, 1), [1, 1, 1], route="monomial") == total


def test_schur_bialternant_needs_distinct_points():
    with pytest.raises(CoincidentPointsError):
        schur_eval(Partition.of(1), [1, 1], route="det")


def test_schur_routes_agree_on_random_points():
    rng = np.random.default_rng(3)
    for m in range(6):
        for lam in partitions_of(m, 3):
            pts = set()
            while len(pts) < 3:
                pts.add(Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5))))
            points = sorted(pts)
            assert schur_eval(lam, points, route="det") == schur_eval(lam, points, route="monomial")


def test_factorial_schur():
    lam_hat = shifted(Partition.of(2, 1), 3)
    assert factorial_schur(Partition(), lam_hat) == 1
    for l in range(1, 5):
        for lam in partitions_of(l, l):
            assert factorial_schur(Partition.of(1), shifted(lam, l)) == l


def test_factorial_schur_matches_direct_determinant():
    x = (0, 2, 5)
    nu = Partition.of(2, 1)
    nu_hat = shifted(nu, 3).values
    matrix = [
        [Fraction(math.factorial(xa), math.factorial(xa - v)) if xa >= v else 0 for v in nu_hat]
        for xa in x
    ]
    assert factorial_schur(nu, x) == det(matrix) / vandermonde(list(x))


def test_multinomial():
    assert multinomial(4, (1, 1, 1, 1)) == 24
    assert multinomial(0, ()) == 1
    assert multinomial(4, (2, 1, 1)) == 12
    with pytest.raises(PreconditionError):
        multinomial(3, (1, 1))


def _multinomial_side(u, k):
    total = Fraction(0)
    for r in weak_compositions(k, k):
        rows = [r[a] + a for a in range(k)]
        matrix = [[u[b][rows[a]] for b in range(k)] for a in range(k)]
        weight = Fraction(multinomial(k, r), math.prod(math.factorial(x) for x in rows))
        total += weight * det(matrix).re
    return total


def _collapsed_side(u, k):
    total = Fraction(0)
    for rows, weight in first_order_row_weights(k, k):
        matrix = [[u[b][rows[a]] for b in range(k)] for a in range(k)]
        total += Fraction(weight, rows.factorial()) * det(matrix).re
    return total


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_first_order_multinomial_sum_collapses_onto_row_sets(k):
    rng = np.random.default_rng(50 + k)
    for _ in range(50):
        u = [
            [Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4))) for _ in range(2 * k)]
            for _ in range(k)
        ]
        assert _multinomial_side(u, k) == _collapsed_side(u, k)


@pytest.mark.parametrize("m,k", [(0, 3), (1, 1), (2, 2), (3, 2), (3, 3), (4, 3)])
def test_first_order_row_weights_are_kostka_numbers(m, k):
    weights = dict(first_order_row_weights(m, k))
    assert weights == {shifted(lam, k): kostka(lam, (1,) * m) for lam in partitions_of(m, k)}


def test_first_order_row_weights_small_case():
    # (d1 + d2)^2 on rows (0, 1): (0, 3) once, (1, 2) once
    assert first_order_row_weights(2, 2) == (
        (ShiftedSequence(2, (0, 3)), 1),
        (ShiftedSequence(2, (1, 2)), 1),
    )
    with pytest.raises(PreconditionError):
        first_order_row_weights(1, 0)


def test_shifted_sequence_rejects_non_increasing():
    with pytest.raises(PreconditionError):
        ShiftedSequence(3, (0, 2, 2))
