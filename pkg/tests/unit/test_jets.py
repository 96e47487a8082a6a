import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from charderiv.core import (
    AntisymmetryError,
    CoincidentPointsError,
    ExactScalar,
    InsufficientJetError,
    InsufficientTruncationError,
    LinearCap,
    MultiPoly,
    PreconditionError,
    Registry,
    TruncatedSeries,
)
from charderiv.jets import (
    DerivativeSpec,
    DiffOperator,
    FunctionJet,
    KernelJet,
    apply_operator,
    borel,
    build_D,
    k_transform,
)


def _q(value):
    return Fraction(str(sp.nsimplify(value)))


def _sympy_jet(expr, var, point, order):
    return FunctionJet(
        ExactScalar(point),
        tuple(
            ExactScalar(_q(sp.diff(expr, var, j).subs(var, sp.Rational(point.numerator, point.denominator)) / math.factorial(j)))
            for j in range(order + 1)
        ),
    )


# -- operators ----------------------------------------------------------------


def test_operator_table():
    reg = Registry.of("u1", "u2", "u3", "u4")
    d = {name: MultiPoly.variable(reg, name) for name in reg.names}

    def expect(k, poly):
        mapping = {f"u{j}": f"u{j}" for j in range(1, k + 1)}
        assert build_D(k).relabel(reg, mapping).poly == poly

    expect(1, d["u1"])
    expect(2, d["u1"] ** 2 + d["u2"])
    expect(3, d["u1"] ** 3 + 3 * d["u2"] * d["u1"] + d["u3"])
    expect(4, d["u1"] ** 4 + 6 * d["u2"] * d["u1"] ** 2 + 3 * d["u2"] ** 2 + 4 * d["u3"] * d["u1"] + d["u4"])


def test_operator_rendering():
    assert build_D(1).render() == "∂u1"
    assert build_D(2).render() == "∂u1^2 + ∂u2"
    assert build_D(4).render() == "∂u1^4 + 6∂u2∂u1^2 + 3∂u2^2 + 4∂u3∂u1 + ∂u4"


def test_operator_rejects_k_zero():
    with pytest.raises(PreconditionError):
        build_D(0)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_operator_scaling(k):
    s = Fraction(3, 2)
    op = build_D(k)
    assert op.scaled(s) == op.poly * ExactScalar(s) ** (-k)
    assert op.weighted_degrees() == {k}


def test_apply_operator_examples():
    reg = Registry.of("u1", "u2")
    caps = [LinearCap.weighted(reg, {"u1": 1, "u2": 2}, 2)]
    u1 = MultiPoly.variable(reg, "u1")
    s = TruncatedSeries(3 + 5 * u1, caps)
    assert apply_operator(DiffOperator.partial(reg, "u1"), s) == 5
    s = TruncatedSeries(u1**2 / 2, caps)
    d2 = build_D(2).relabel(reg)
    assert apply_operator(d2, s) == 1


def test_apply_operator_never_reads_past_the_caps():
    reg = Registry.of("u1")
    s = TruncatedSeries(MultiPoly.variable(reg, "u1"), [LinearCap.total(reg, ["u1"], 1)])
    with pytest.raises(InsufficientTruncationError):
        apply_operator(DiffOperator.partial(reg, "u1", 2), s)


def test_apply_operator_keeps_marked_variables():
    reg = Registry.of("u1", "t")
    caps = [LinearCap.total(reg, ["u1"], 2)]
    u, t = MultiPoly.variable(reg, "u1"), MultiPoly.variable(reg, "t")
    s = TruncatedSeries(t + u * t**2 + u**2 * (1 + t), caps)
    result = apply_operator(DiffOperator.partial(reg, "u1", 2), s, keep=("t",))
    assert result == 2 * (1 + t)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_operator_differentiates_rational_products(k):
    x0 = Fraction(1, 3)
    zs = (Fraction(2), Fraction(-1, 2))
    zetas = (Fraction(5, 4), Fraction(-3))
    reg = Registry(tuple(f"u{j}" for j in range(1, k + 1)))
    caps = [LinearCap.weighted(reg, {f"u{j}": j for j in range(1, k + 1)}, k)]
    exponent = MultiPoly.zero(reg)
    for z, zeta in zip(zs, zetas):
        for l in range(1, k + 1):
            term = Fraction(math.factorial(l - 1)) * (Fraction(1) / (zeta - x0) ** l - Fraction(1) / (z - x0) ** l)
            exponent = exponent + MultiPoly.variable(reg, f"u{l}") * term
    series = TruncatedSeries(exponent, caps).exp()
    product = math.prod((z - x0) / (zeta - x0) for z, zeta in zip(zs, zetas))
    value = apply_operator(build_D(k), series) * product

    x = sp.Symbol("x")
    rational = sp.Mul(*[(sp.Rational(str(z)) - x) / (sp.Rational(str(zeta)) - x) for z, zeta in zip(zs, zetas)])
    expected = sp.diff(rational, x, k).subs(x, sp.Rational(str(x0)))
    assert value == ExactScalar(_q(expected))


# -- jets ---------------------------------------------------------------------


def test_function_jet_of_polynomial_and_order_check():
    reg = Registry.of("x")
    x = MultiPoly.variable(reg, "x")
    jet = FunctionJet.of_polynomial(x**3 + 2 * x, "x", 1, 4)
    assert [str(c) for c in jet.coeffs] == ["3/1", "5/1", "3/1", "1/1", "0/1"]
    assert jet.derivative(2) == 6
    with pytest.raises(InsufficientJetError):
        jet.coefficient(5)


def test_kernel_jet_antisymmetry_is_enforced():
    with pytest.raises(AntisymmetryError):
        KernelJet((0, 0), ((0, 1), (1, 0)), antisymmetric=True)
    ok = KernelJet((0, 0), ((0, 1), (-1, 0)), antisymmetric=True)
    assert ok.swapped().coeffs == ok.coeffs


def test_kernel_jet_json_round_trip():
    jet = KernelJet((Fraction(1, 2), ExactScalar(0, 1)), ((1, 2, 3), (4, 5, 6)))
    assert KernelJet.from_json(jet.to_json()) == jet
    assert jet.to_json()["order"] == [1, 2]


# -- spec -----------------------------------------------------------------------


def test_spec_derived_quantities():
    spec = DerivativeSpec((0, 1), ((0, 1, 2), (1,)))
    assert spec.P == 4 and spec.L == 2
    assert spec.multiplicities(0) == (1, 1, 1)
    assert spec.u_names(0) == ("u1_1", "u1_2")
    assert spec.jet_order(0) == 5
    reg = spec.u_registry()
    assert reg.names == ("u1_1", "u1_2", "u2_1")
    assert spec.operator(reg).render() == "∂u2_1∂u1_1^3 + ∂u2_1∂u1_2∂u1_1"
    assert spec == DerivativeSpec.from_multiplicities((0, 1), ((1, 1, 1), (0, 1)))


def test_spec_rejects_coincident_points():
    with pytest.raises(CoincidentPointsError):
        DerivativeSpec((1, 1), ((0,), (0,)))


# -- Borel ------------------------------------------------------------------------


def test_first_order_borel_divides_by_extra_factorial():
    jet = FunctionJet(0, tuple(Fraction(1, j + 2) for j in range(6)))
    s = borel(jet, 1, 5)
    for m in range(6):
        assert s.coefficient((m,)) == jet.coeffs[m] / math.factorial(m)


def test_second_order_borel_matches_hermite_series():
    jet = FunctionJet(Fraction(1, 3), tuple(Fraction((-1) ** j * (j + 1), j + 3) for j in range(9)))
    s = borel(jet, 2, 4)
    u1, u2 = sp.symbols("u1 u2", positive=True)
    for a in range(5):
        for b in range(5 - a):
            j = a + 2 * b
            term = sp.expand((-sp.I * sp.sqrt(u2)) ** j * sp.hermite(j, sp.I * u1 / (2 * sp.sqrt(u2))))
            coeff = sp.Poly(term, u1, u2).coeff_monomial(u1**a * u2**b)
            expected = jet.coeffs[j] / math.factorial(j) * ExactScalar(_q(coeff))
            assert s.coefficient((a, b)) == expected


def test_borel_of_constant_is_constant():
    s = borel(FunctionJet(2, (1, 0, 0, 0, 0)), 2, 2)
    assert s.poly == MultiPoly.constant(s.registry, 1)


def test_borel_requires_enough_jet():
    with pytest.raises(InsufficientJetError):
        borel(FunctionJet(0, (1, 1)), 1, 2)


# -- K-transform --------------------------------------------------------------------


@pytest.mark.parametrize("k,h", [(1, 0), (2, 0), (2, 1), (2, 2), (3, 1), (4, 2)])
def test_k_transform_recombines_into_borel(k, h):
    chi = Fraction(2, 3)
    spec = DerivativeSpec.pattern(chi, h, k)
    order = spec.jet_order(0)
    jet = FunctionJet(chi, tuple(Fraction(j * j - 3, j + 1) for j in range(order + 1)))
    reg = spec.u_registry()
    for alpha in range(1, k + 1):
        combined = TruncatedSeries.zero(reg, spec.caps(reg))
        for beta in range(alpha, k + 1):
            weight = ExactScalar(-chi) ** (beta - alpha) * math.comb(k - alpha, beta - alpha)
            combined = combined + k_transform([jet], spec, beta) * weight
        if k == h:
            expected = jet.coeffs[alpha - 1]
            assert combined.poly == MultiPoly.constant(reg, expected)
            continue
        expected = borel(jet, 1, spec.caps(reg), names=("u1_1",), registry=reg, u1_derivative=alpha - 1)
        assert combined == expected


def test_two_point_transform_matches_residues():
    chi1, chi2 = Fraction(1, 2), Fraction(-1)
    spec = DerivativeSpec((chi1, chi2), ((0, 1), (1,)))
    zeta = sp.Symbol("zeta")
    f = 2 * zeta**3 - zeta + sp.Rational(1, 3)
    jets = [_sympy_jet(f, zeta, c, spec.jet_order(l)) for l, c in enumerate((chi1, chi2))]
    c1, c2 = sp.Rational(1, 2), sp.Integer(-1)
    for alpha in (1, 2, 3):
        series = k_transform(jets, spec, alpha)
        for i in range(2):
            for j in range(2):
                integrand = (
                    f * zeta ** (3 - alpha) / ((zeta - c1) ** (2 + i) * (zeta - c2) ** (1 + j))
                    / (math.factorial(i) * math.factorial(j))
                )
                expected = sp.residue(integrand, zeta, c1) + sp.residue(integrand, zeta, c2)
                assert series.coefficient((i, j)) == ExactScalar(_q(expected))


def test_transform_of_zero_is_zero():
    spec = DerivativeSpec.pattern(0, 1, 3)
    jet = FunctionJet(0, (0,) * (spec.jet_order(0) + 1))
    assert k_transform([jet], spec, 2).is_zero


def test_transform_validates_inputs():
    spec = DerivativeSpec.pattern(0, 1, 2)
    jet = FunctionJet(0, (1, 2, 3))
    with pytest.raises(PreconditionError):
        k_transform([jet], spec, 3)
    with pytest.raises(PreconditionError):
        k_transform([FunctionJet(1, (1, 2, 3))], spec, 1)
    with pytest.raises(InsufficientJetError):
        k_transform([FunctionJet(0, (1, 2))], spec, 1)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.integers(0, 3), st.fractions(-3, 3, max_denominator=5))
def test_first_order_borel_under_rescaling(d, shift, chi):
    jet = FunctionJet(chi, tuple(Fraction(j + shift, 1 + j) for j in range(2 * d + 2)))
    s = borel(jet, 1, d, u1_derivative=1)
    for m in range(d + 1):
        assert s.coefficient((m,)) == jet.coeffs[m + 1] / math.factorial(m)
