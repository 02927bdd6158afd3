"""Complex numbers with a detached binary exponent.

Orbit computations multiply quantities such as λ^n (n up to 10⁴), falling
factorials and weight products whose intermediate magnitudes leave the double
range even when the final coordinate is of order one. ``ScaledComplex`` keeps
the mantissa normalized (largest component in [0.5, 1)) and carries the power
of two as a Python int, so only the final ``to_complex`` can over- or underflow.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Union

Number = Union[int, float, complex]


def ldexp_complex(z: complex, exponent: int) -> complex:
    """z·2^exponent, saturating to ±inf on overflow and to 0 on underflow."""
    return complex(_ldexp(z.real, exponent), _ldexp(z.imag, exponent))


def _ldexp(x: float, exponent: int) -> float:
    if x == 0.0:
        return 0.0
    if exponent < -2200:
        return 0.0
    try:
        return math.ldexp(x, exponent)
    except OverflowError:
        return math.copysign(math.inf, x)


@dataclass(frozen=True)
class ScaledComplex:
    mantissa: complex
    exponent: int = 0

    @classmethod
    def of(cls, value: Number) -> "ScaledComplex":
        return cls.normalize(complex(value), 0)

    @classmethod
    def power_of_two(cls, exponent: int) -> "ScaledComplex":
        return cls(0.5 + 0j, exponent + 1)

    @classmethod
    def normalize(cls, mantissa: complex, exponent: int) -> "ScaledComplex":
        if mantissa == 0:
            return cls(0j, 0)
        top = max(abs(mantissa.real), abs(mantissa.imag))
        if not math.isfinite(top):
            return cls(mantissa, exponent)
        _, shift = math.frexp(top)
        return cls(ldexp_complex(mantissa, -shift), exponent + shift)

    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0

    def __mul__(self, other) -> "ScaledComplex":
        if not isinstance(other, ScaledComplex):
            other = ScaledComplex.of(other)
        return ScaledComplex.normalize(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __neg__(self) -> "ScaledComplex":
        return ScaledComplex(-self.mantissa, self.exponent)

    def __add__(self, other) -> "ScaledComplex":
        if not isinstance(other, ScaledComplex):
            other = ScaledComplex.of(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        top = max(self.exponent, other.exponent)
        total = (ldexp_complex(self.mantissa, self.exponent - top)
                 + ldexp_complex(other.mantissa, other.exponent - top))
        return ScaledComplex.normalize(total, top)

    __radd__ = __add__

    def __sub__(self, other) -> "ScaledComplex":
        if not isinstance(other, ScaledComplex):
            other = ScaledComplex.of(other)
        return self + (-other)

    def reciprocal(self) -> "ScaledComplex":
        if self.is_zero:
            raise ZeroDivisionError("reciprocal of zero")
        return ScaledComplex.normalize(1.0 / self.mantissa, -self.exponent)

    def __truediv__(self, other) -> "ScaledComplex":
        if not isinstance(other, ScaledComplex):
            other = ScaledComplex.of(other)
        return self * other.reciprocal()

    def to_complex(self) -> complex:
        return ldexp_complex(self.mantissa, self.exponent)

    def magnitude(self) -> float:
        """|value| as a float (inf or 0 when out of range)."""
        return _ldexp(abs(self.mantissa), self.exponent)

    def log2_abs(self) -> float:
        if self.is_zero:
            return -math.inf
        return math.log2(abs(self.mantissa)) + self.exponent


def scaled_power(z: Union[Number, ScaledComplex], n: int) -> ScaledComplex:
    """z**n by binary exponentiation in scaled arithmetic; negative n inverts."""
    base = z if isinstance(z, ScaledComplex) else ScaledComplex.of(z)
    if n < 0:
        return scaled_power(base.reciprocal(), -n)
    result = ScaledComplex.of(1)
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def scaled_product(factors: Iterable[Number]) -> ScaledComplex:
    result = ScaledComplex.of(1)
    for factor in factors:
        result = result * factor
    return result
