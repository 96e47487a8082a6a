"""Gaussian rationals: the exact coefficient type of the whole package."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

ScalarLike = Union["ExactScalar", Fraction, int]


def _fmt(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


class ExactScalar:
    """Exact complex number ``re + im*i`` with rational parts.

    ``Fraction`` keeps both parts in lowest terms with a positive denominator,
    so equality is structural. Instances are immutable and hashable; a real
    ExactScalar hashes like the equal ``Fraction``.
    """

    __slots__ = ("re", "im")

    re: Fraction
    im: Fraction

    def __init__(self, re: Fraction | int = 0, im: Fraction | int = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> ExactScalar:
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    def __reduce__(self):
        return (ExactScalar, (self.re, self.im))

    # -- construction -----------------------------------------------------

    @classmethod
    def coerce(cls, value: ScalarLike | str) -> ExactScalar:
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls._make(Fraction(value), _ZERO_Q)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot convert {type(value).__name__} to ExactScalar")

    @classmethod
    def parse(cls, text: str) -> ExactScalar:
        """Parse ``"p/q"``, ``"p/q+r/s*i"``, ``"r/s*i"`` or ``"i"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty scalar literal")
        try:
            if not s.endswith("i"):
                return cls._make(Fraction(s), _ZERO_Q)
            body = s[:-1]
            if body.endswith("*"):
                body = body[:-1]
            split = max(body.rfind("+"), body.rfind("-"))
            if split > 0:
                real_part, imag_part = body[:split], body[split:]
            else:
                real_part, imag_part = "0", body
            if imag_part in ("", "+"):
                imag = Fraction(1)
            elif imag_part == "-":
                imag = Fraction(-1)
            else:
                imag = Fraction(imag_part)
            return cls._make(Fraction(real_part), imag)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"invalid exact scalar literal {text!r}") from e

    # -- predicates -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return not self.is_zero

    # -- arithmetic -------------------------------------------------------

    def conjugate(self) -> ExactScalar:
        return ExactScalar._make(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __neg__(self) -> ExactScalar:
        return ExactScalar._make(-self.re, -self.im)

    def __pos__(self) -> ExactScalar:
        return self

    def __add__(self, other):
        if isinstance(other, ExactScalar):
            return ExactScalar._make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return ExactScalar._make(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, ExactScalar):
            return ExactScalar._make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return ExactScalar._make(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactScalar._make(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, ExactScalar):
            if not self.im and not other.im:
                return ExactScalar._make(self.re * other.re, _ZERO_Q)
            return ExactScalar._make(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return ExactScalar._make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> ExactScalar:
        norm = self.abs2()
        if not norm:
            raise ZeroDivisionError("division by exact zero")
        return ExactScalar._make(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        if isinstance(other, ExactScalar):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by exact zero")
            return ExactScalar._make(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactScalar.coerce(other) * self.inverse()
        return NotImplemented

    def __pow__(self, exponent: int) -> ExactScalar:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- comparison and hashing -------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactScalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- conversion -------------------------------------------------------

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __complex__(self) -> complex:
        return self.to_complex()

    def __float__(self) -> float:
        if self.im:
            raise TypeError(f"{self} is not real")
        return float(self.re)

    def numeric(self) -> float | complex:
        return float(self.re) if not self.im else self.to_complex()

    def __str__(self) -> str:
        if not self.im:
            return _fmt(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{_fmt(self.re)}{sign}{_fmt(abs(self.im))}*i"

    def __repr__(self) -> str:
        return f"ExactScalar('{self}')"


_ZERO_Q = Fraction(0)
ZERO = ExactScalar._make(Fraction(0), Fraction(0))
ONE = ExactScalar._make(Fraction(1), Fraction(0))
I = ExactScalar._make(Fraction(0), Fraction(1))


def as_scalar(value: ScalarLike | str) -> ExactScalar:
    return ExactScalar.coerce(value)
