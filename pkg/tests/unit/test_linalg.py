from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charderiv.core import MultiPoly, ParityError, Registry
from charderiv.linalg import AntisymMatrix, RingMatrix, det, pfaffian, vandermonde


def _random_antisym(rng, n):
    return AntisymMatrix.from_function(
        n, lambda i, j: Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
    )


@st.composite
def rational_matrices(draw, n):
    entry = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 5))
    return RingMatrix.from_rows([[draw(entry) for _ in range(n)] for _ in range(n)])


def test_identity_determinant():
    assert det(RingMatrix.identity(3)) == 1


def test_pfaffian_convention_anchor():
    a = Fraction(7, 3)
    assert pfaffian(AntisymMatrix.from_rows([[0, a], [-a, 0]])) == a


def test_pfaffian_block_decomposition():
    p, q = Fraction(2), Fraction(-5, 2)
    m = AntisymMatrix(4, {(0, 1): p, (2, 3): q, (0, 2): 0, (0, 3): 0, (1, 2): 0, (1, 3): 0})
    assert pfaffian(m) == p * q


def test_pfaffian_of_empty_and_odd():
    assert pfaffian(AntisymMatrix(0, {})) == 1
    with pytest.raises(ParityError):
        pfaffian(AntisymMatrix.from_function(3, lambda i, j: 1))


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_pfaffian_squared_is_determinant(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(50 if n <= 6 else 10):
        a = _random_antisym(rng, n)
        assert pfaffian(a) ** 2 == det(a.to_matrix())


@pytest.mark.parametrize("n", [2, 4, 6])
def test_pfaffian_congruence(n):
    rng = np.random.default_rng(n)
    a = _random_antisym(rng, n)
    b = RingMatrix.from_function(n, n, lambda i, j: Fraction(int(rng.integers(-3, 4))))
    assert pfaffian(a.congruence(b)) == det(b) * pfaffian(a)


@settings(max_examples=25, deadline=None)
@given(rational_matrices(4))
def test_bareiss_matches_cofactor(m):
    assert det(m, method="bareiss") == det(m, method="cofactor")


@settings(max_examples=25, deadline=None)
@given(rational_matrices(3), st.integers(-3, 3))
def test_determinant_is_alternating_and_multilinear(m, c):
    rows = [list(r) for r in m.rows]
    swapped = [rows[1], rows[0], rows[2]]
    assert det(swapped) == -det(rows)
    added = [rows[0], [x + c * y for x, y in zip(rows[1], rows[0])], rows[2]]
    assert det(added) == det(rows)


def test_vandermonde_small_cases():
    assert vandermonde([]) == 1
    assert vandermonde([Fraction(5)]) == 1
    assert vandermonde([1, 2, 4]) == 6


def test_symbolic_vandermonde_equals_determinant():
    reg = Registry.of("x1", "x2", "x3")
    xs = [MultiPoly.variable(reg, n) for n in reg.names]
    matrix = RingMatrix.from_function(3, 3, lambda i, j: xs[i] ** j)
    assert det(matrix) == vandermonde(xs)


def test_pfaffian_over_polynomials():
    reg = Registry.of("a", "b", "c")
    a, b, c = (MultiPoly.variable(reg, n) for n in reg.names)
    m = AntisymMatrix.from_function(4, lambda i, j: {(0, 1): a, (0, 2): b, (0, 3): c}.get((i, j), a * 0 + 1))
    # Pf = m01 m23 - m02 m13 + m03 m12
    assert pfaffian(m) == a - b + c
