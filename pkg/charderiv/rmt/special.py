"""Special functions used by the ensemble closed forms.

Laguerre, truncated Laguerre, Hermite and Barnes G are exact for exact
arguments. The modified Bessel function goes through ``mpmath`` and comes
back as a double.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from charderiv.core.errors import PreconditionError, UnsupportedFunctionError
from charderiv.core.polys import MultiPoly, Registry
from charderiv.core.scalars import ZERO, ExactScalar, ScalarLike

T = Registry.of("t")

# Working precision for Bessel evaluations before rounding to a double.
BESSEL_DPS = 30


def _check_order(name: str, value: int) -> None:
    if value < 0:
        raise PreconditionError(f"{name} must be a non-negative integer, got {value}")


def laguerre_coefficients(n: int, a: int, max_power: int | None = None) -> list[Fraction]:
    """Coefficients of ``L_n^{(a)}(x) = sum_m C(n+a, n-m) (-x)^m / m!``, optionally up to ``x^max_power``."""
    _check_order("Laguerre degree", n)
    _check_order("Laguerre parameter", a)
    top = n if max_power is None else min(n, max_power)
    return [Fraction((-1) ** m * math.comb(n + a, n - m), math.factorial(m)) for m in range(top + 1)]


def truncated_laguerre_coefficients(a: int, b: int) -> list[Fraction]:
    """Coefficients of ``L_{a,b}(x) = sum_{m<=b} C(a, m) (-x)^m / m!``."""
    _check_order("truncated Laguerre index", a)
    _check_order("truncated Laguerre cutoff", b)
    return [Fraction((-1) ** m * math.comb(a, m), math.factorial(m)) for m in range(b + 1)]


def _horner(coeffs: Sequence[Fraction], x: ScalarLike) -> ExactScalar:
    x = ExactScalar.coerce(x)
    out = ZERO
    for c in reversed(coeffs):
        out = out * x + c
    return out


def laguerre(n: int, a: int, x: ScalarLike) -> ExactScalar:
    return _horner(laguerre_coefficients(n, a), x)


def truncated_laguerre(a: int, b: int, x: ScalarLike) -> ExactScalar:
    return _horner(truncated_laguerre_coefficients(a, b), x)


def hermite_coefficients(j: int) -> list[int]:
    """Coefficients of the physicists' ``H_j``, lowest power first.

    ``H_{j+1} = 2x H_j - 2j H_{j-1}``.
    """
    _check_order("Hermite degree", j)
    prev, cur = [1], [0, 2]
    if j == 0:
        return prev
    for i in range(1, j):
        nxt = [0] + [2 * c for c in cur]
        for m, c in enumerate(prev):
            nxt[m] -= 2 * i * c
        prev, cur = cur, nxt
    return cur


def hermite(j: int, x: ScalarLike) -> ExactScalar:
    return _horner(hermite_coefficients(j), x)


def barnes_g(n: int) -> int:
    """``G(n) = prod_{j=0}^{n-2} j!`` for integer ``n >= 1``."""
    if n < 1:
        raise PreconditionError(f"Barnes G is only tabulated at positive integers, got {n}")
    return math.prod(math.factorial(j) for j in range(n - 1))


def bessel_i(nu: int, x: float) -> float:
    with mpmath.workdps(BESSEL_DPS):
        return float(mpmath.besseli(nu, x))


def poly_in_t(coeffs: Sequence[ScalarLike], scale: ScalarLike = 1) -> MultiPoly:
    """``sum_m coeffs[m] (scale t)^m`` as a polynomial over ``t``."""
    scale = ExactScalar.coerce(scale)
    terms = {(m,): ExactScalar.coerce(c) * scale**m for m, c in enumerate(coeffs)}
    return MultiPoly(T, terms)


_DISPATCH: dict[str, tuple[int, Callable[..., object]]] = {
    "laguerre": (2, laguerre),
    "truncated_laguerre": (2, truncated_laguerre),
    "hermite": (1, hermite),
    "bessel_i": (1, lambda nu, x: bessel_i(nu, float(x))),
}


def special(name: str, params: Sequence[int], x: ScalarLike | float | None = None) -> ExactScalar | int | float:
    """Evaluate a special function by name.

    ``barnes_g`` takes its integer argument in ``params`` and no ``x``.
    """
    params = [int(p) for p in params]
    if name == "barnes_g":
        if len(params) != 1:
            raise PreconditionError(f"barnes_g takes one integer argument, got {params}")
        return barnes_g(params[0])
    if name not in _DISPATCH:
        supported = ", ".join(sorted([*_DISPATCH, "barnes_g"]))
        raise UnsupportedFunctionError(f"unknown special function {name!r}; supported: {supported}")
    arity, fn = _DISPATCH[name]
    if len(params) != arity:
        raise PreconditionError(f"{name} takes {arity} integer parameters, got {params}")
    if x is None:
        raise PreconditionError(f"{name} needs an argument x")
    return fn(*params, x)
