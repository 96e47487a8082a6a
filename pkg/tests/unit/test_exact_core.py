from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charderiv.core import (
    ExactScalar,
    I,
    InsufficientTruncationError,
    LinearCap,
    MultiPoly,
    NotDivisibleError,
    Prefactor,
    Registry,
    RegistryMismatchError,
    TruncatedSeries,
    divide_by_linear,
)

X = Registry.of("x1", "x2")


def _x(name):
    return MultiPoly.variable(X, name)


@st.composite
def small_polys(draw, registry=X, max_terms=4, max_degree=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        exps = tuple(draw(st.integers(0, max_degree)) for _ in registry.names)
        terms[exps] = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 4)))
    return MultiPoly(registry, terms)


def test_scalar_text_form_round_trips():
    assert str(ExactScalar(Fraction(3, 2))) == "3/2"
    assert str(ExactScalar(1, Fraction(-1, 3))) == "1/1-1/3*i"
    for text in ("3/2", "0/1", "-7/5+2/3*i", "1/2*i", "i"):
        assert ExactScalar.parse(text) == ExactScalar.parse(str(ExactScalar.parse(text)))
    assert ExactScalar.parse("i") == I
    assert ExactScalar.parse("-2/4") == ExactScalar(Fraction(-1, 2))


def test_scalar_arithmetic_is_exact():
    z = ExactScalar(1, 2)
    assert z * z.conjugate() == ExactScalar(5)
    assert z * z.inverse() == ExactScalar(1)
    assert I**2 == ExactScalar(-1)
    assert z**-1 == z.inverse()
    assert hash(ExactScalar(Fraction(1, 3))) == hash(Fraction(1, 3))


def test_invalid_scalar_literal_raises():
    with pytest.raises(ValueError):
        ExactScalar.parse("1/0")
    with pytest.raises(ValueError):
        ExactScalar.parse("")


def test_difference_of_squares():
    p = (_x("x1") + _x("x2")) * (_x("x1") - _x("x2"))
    assert p == _x("x1") ** 2 - _x("x2") ** 2


def test_zero_absorbs_and_stores_nothing():
    p = MultiPoly.zero(X) * (_x("x1") + 3)
    assert p.is_zero
    assert dict(p.terms) == {}
    assert MultiPoly(X, {(1, 0): 0}).is_zero


def test_registry_mismatch_raises():
    other = Registry.of("x2", "x1")
    with pytest.raises(RegistryMismatchError):
        _x("x1") + MultiPoly.variable(other, "x1")


def test_truncated_product_drops_high_terms():
    reg = Registry.of("u1")
    cap = LinearCap.total(reg, ["u1"], 2)
    u = MultiPoly.variable(reg, "u1")
    a = TruncatedSeries(1 + u + u**2, [cap])
    b = TruncatedSeries(1 + u, [cap])
    assert (a * b).poly == 1 + 2 * u + 2 * u**2


def test_reading_outside_caps_raises():
    reg = Registry.of("u1")
    s = TruncatedSeries(MultiPoly.variable(reg, "u1"), [LinearCap.total(reg, ["u1"], 1)])
    assert s.coefficient((1,)) == 1
    with pytest.raises(InsufficientTruncationError):
        s.coefficient((2,))


def test_series_exp_matches_factorials():
    reg = Registry.of("u1")
    u = MultiPoly.variable(reg, "u1")
    s = TruncatedSeries(u, [LinearCap.total(reg, ["u1"], 4)]).exp()
    assert [s.coefficient((m,)) for m in range(5)] == [
        ExactScalar(Fraction(1, f)) for f in (1, 1, 2, 6, 24)
    ]


def test_divide_by_linear_examples():
    assert divide_by_linear(_x("x2") ** 2 - _x("x1") ** 2, "x1", "x2") == _x("x1") + _x("x2")
    assert divide_by_linear(_x("x2") - _x("x1"), "x1", "x2") == MultiPoly.constant(X, 1)


def test_divide_by_linear_two_by_two_kernel_determinant():
    reg = Registry.of("x1", "x2", "y1", "y2")
    x1, x2, y1, y2 = (MultiPoly.variable(reg, n) for n in reg.names)

    def kernel(x, y):
        return 1 + 2 * x * y + x**2 * y

    p = kernel(x1, y1) * kernel(x2, y2) - kernel(x1, y2) * kernel(x2, y1)
    q = divide_by_linear(p, "x1", "x2")
    assert q * (x2 - x1) == p
    # kernel is 1 + y * g(x) with g(x) = 2x + x^2, so det = (y2 - y1)(g(x2) - g(x1))
    assert q == (y2 - y1) * (2 + x1 + x2)


def test_divide_by_linear_rejects_remainder():
    with pytest.raises(NotDivisibleError):
        divide_by_linear(_x("x1") + _x("x2"), "x1", "x2")


@settings(max_examples=40, deadline=None)
@given(small_polys(), small_polys(), small_polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == MultiPoly.zero(X)


@settings(max_examples=40, deadline=None)
@given(small_polys(), small_polys())
def test_division_inverts_multiplication(a, b):
    p = a * (_x("x2") - _x("x1"))
    assert divide_by_linear(p, "x1", "x2") == a


@settings(max_examples=30, deadline=None)
@given(small_polys(max_degree=2), small_polys(max_degree=2), st.integers(0, 4))
def test_truncated_product_agrees_with_truncating_the_product(a, b, bound):
    caps = [LinearCap.weighted(X, {"x1": 1, "x2": 2}, bound)]
    truncated = TruncatedSeries(a, caps) * TruncatedSeries(b, caps)
    assert truncated == TruncatedSeries(a * b, caps)


def test_prefactor_multiplies_exponents():
    g = Prefactor(exp_coeff=1, pi_power=-1)
    assert g**3 == Prefactor(3, -3, 0)
    assert (g * Prefactor(one_minus_t_power=-2)).to_json() == {
        "exp_coeff": 1,
        "pi_power": -1,
        "one_minus_t_power": -2,
    }
    assert Prefactor.unit().is_unit
