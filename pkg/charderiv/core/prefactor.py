"""Symbolic transcendental prefactor ``e^{a t} * pi^b * (1 - t)^c``."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Prefactor:
    """Factor kept apart from an exact payload.

    ``t`` is ``|chi|^2``. Multiplying two prefactors adds exponents, so a
    ``k x k`` determinant of entries sharing one prefactor carries its
    ``k``-th power.
    """

    exp_coeff: int = 0
    pi_power: int = 0
    one_minus_t_power: int = 0

    @classmethod
    def unit(cls) -> Prefactor:
        return cls()

    def __mul__(self, other: Prefactor) -> Prefactor:
        if not isinstance(other, Prefactor):
            return NotImplemented
        return Prefactor(
            self.exp_coeff + other.exp_coeff,
            self.pi_power + other.pi_power,
            self.one_minus_t_power + other.one_minus_t_power,
        )

    def __pow__(self, n: int) -> Prefactor:
        return Prefactor(self.exp_coeff * n, self.pi_power * n, self.one_minus_t_power * n)

    @property
    def is_unit(self) -> bool:
        return self == Prefactor()

    def numeric(self, t: float) -> float:
        value = math.exp(self.exp_coeff * t) * math.pi**self.pi_power
        if self.one_minus_t_power:
            value *= (1.0 - t) ** self.one_minus_t_power
        return value

    def to_json(self) -> dict[str, int]:
        return {
            "exp_coeff": self.exp_coeff,
            "pi_power": self.pi_power,
            "one_minus_t_power": self.one_minus_t_power,
        }
