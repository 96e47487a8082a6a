"""Borel transforms of every order, built from their coefficient law.

For ``B_{chi,d} f`` the coefficient of ``prod_j u_j^{m_j}`` is
``c_s * prod_j (j-1)!^{m_j} / m_j!`` with ``s = sum_j j m_j`` and ``c_s`` the
normalized Taylor coefficient of ``f`` at ``chi``. Applying ``d/du_1`` ``a``
times only shifts ``c_s`` to ``c_{s+a}`` (up to the same weight), so
``d_{u_1}^a B f`` is produced directly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from charderiv.core.errors import InsufficientTruncationError, PreconditionError
from charderiv.core.polys import Exponents, Registry
from charderiv.core.scalars import ExactScalar
from charderiv.core.series import LinearCap, TruncatedSeries
from charderiv.jets.jets import FunctionJet, KernelJet


def borel_weight(exps: Sequence[int]) -> Fraction:
    """``prod_j (j-1)!^{m_j} / m_j!`` for ``exps = (m_1, .., m_d)``."""
    out = Fraction(1)
    for j, m in enumerate(exps, start=1):
        if m:
            out *= Fraction(math.factorial(j - 1) ** m, math.factorial(m))
    return out


def borel_load(exps: Sequence[int]) -> int:
    return sum(j * m for j, m in enumerate(exps, start=1))


def within_caps(
    registry: Registry, caps: Sequence[LinearCap], names: Sequence[str]
) -> Iterator[Exponents]:
    """Exponent vectors supported on ``names`` that every cap admits."""
    indices = [registry.index(name) for name in names]
    limits = []
    for i in indices:
        bounds = [cap.bound // cap.weights[i] for cap in caps if cap.weights[i]]
        if not bounds:
            raise InsufficientTruncationError(
                f"variable {registry.names[i]!r} is not capped; the transform would be infinite"
            )
        limits.append(min(bounds))
    n = len(registry)

    def walk(pos: int, current: list[int]) -> Iterator[Exponents]:
        if pos == len(indices):
            yield tuple(current)
            return
        i = indices[pos]
        for e in range(limits[pos] + 1):
            current[i] = e
            if not all(cap.admits(tuple(current)) for cap in caps):
                break
            yield from walk(pos + 1, current)
        current[i] = 0

    return walk(0, [0] * n)


def _setup(
    d: int,
    caps: int | Iterable[LinearCap],
    names: Sequence[str] | None,
    registry: Registry | None,
    prefix: str,
) -> tuple[tuple[str, ...], Registry, tuple[LinearCap, ...]]:
    if d < 1:
        raise PreconditionError(f"Borel order must be >= 1, got {d}")
    names = tuple(names) if names is not None else tuple(f"{prefix}{j}" for j in range(1, d + 1))
    if len(names) != d:
        raise PreconditionError(f"Borel order {d} needs {d} variable names, got {names}")
    registry = registry or Registry(names)
    if isinstance(caps, int):
        caps = (LinearCap.total(registry, names, caps),)
    return names, registry, tuple(caps)


def borel(
    jet: FunctionJet,
    d: int,
    caps: int | Iterable[LinearCap],
    names: Sequence[str] | None = None,
    registry: Registry | None = None,
    u1_derivative: int = 0,
    prefix: str = "u",
) -> TruncatedSeries:
    """``d_{u_1}^a [B_{chi,d} f](u)`` as a truncated series.

    An integer ``caps`` is a total-degree cap on the ``d`` variables.
    """
    names, registry, caps = _setup(d, caps, names, registry, prefix)
    positions = [registry.index(name) for name in names]
    monomials = list(within_caps(registry, caps, names))
    needed = max(borel_load([e[i] for i in positions]) for e in monomials) + u1_derivative
    jet.require(needed)
    terms: dict[Exponents, ExactScalar] = {}
    for exps in monomials:
        local = [exps[i] for i in positions]
        c = jet.coefficient(borel_load(local) + u1_derivative)
        if c:
            terms[exps] = c * borel_weight(local)
    return TruncatedSeries.from_terms(registry, caps, terms)


def borel_kernel(
    jet: KernelJet,
    d_u: int,
    d_v: int,
    caps: int | Iterable[LinearCap],
    u_names: Sequence[str] | None = None,
    v_names: Sequence[str] | None = None,
    registry: Registry | None = None,
    derivatives: tuple[int, int] = (0, 0),
) -> TruncatedSeries:
    """``d_{u_1}^a d_{v_1}^b [B_{chi,d_u} (x) B_{xi,d_v} B](u, v)``.

    The coefficient of ``u^m v^n`` is ``c_{s(m)+a, s(n)+b} w(m) w(n)``.
    """
    u_names = tuple(u_names) if u_names is not None else tuple(f"u{j}" for j in range(1, d_u + 1))
    v_names = tuple(v_names) if v_names is not None else tuple(f"v{j}" for j in range(1, d_v + 1))
    if len(u_names) != d_u or len(v_names) != d_v:
        raise PreconditionError("variable names do not match the Borel orders")
    registry = registry or Registry(u_names + v_names)
    if isinstance(caps, int):
        caps = (
            LinearCap.total(registry, u_names, caps),
            LinearCap.total(registry, v_names, caps),
        )
    caps = tuple(caps)
    a, b = derivatives
    u_pos = [registry.index(name) for name in u_names]
    v_pos = [registry.index(name) for name in v_names]
    monomials = list(within_caps(registry, caps, u_names + v_names))
    need_u = max(borel_load([e[i] for i in u_pos]) for e in monomials) + a
    need_v = max(borel_load([e[i] for i in v_pos]) for e in monomials) + b
    jet.require(need_u, need_v)
    terms: dict[Exponents, ExactScalar] = {}
    for exps in monomials:
        m = [exps[i] for i in u_pos]
        n = [exps[i] for i in v_pos]
        c = jet.coefficient(borel_load(m) + a, borel_load(n) + b)
        if c:
            terms[exps] = c * (borel_weight(m) * borel_weight(n))
    return TruncatedSeries.from_terms(registry, caps, terms)
