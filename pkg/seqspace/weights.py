"""Weight sequences for backward shifts B_w, indexed from n = 2.

``product(a, b)`` returns w(a)·w(a+1)⋯w(b) in scaled arithmetic; the empty
product (b < a) is one.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping, Optional, Union

from seqspace.scaled import ScaledComplex, scaled_power, scaled_product


class WeightSequence:
    kind = "abstract"

    def weight(self, n: int) -> complex:
        raise NotImplementedError

    def product(self, a: int, b: int) -> ScaledComplex:
        if b < a:
            return ScaledComplex.of(1)
        return scaled_product(self.weight(n) for n in range(a, b + 1))

    def describe(self) -> dict:
        return {"kind": self.kind}


@dataclass(frozen=True)
class ConstantWeights(WeightSequence):
    """w ≡ λ; B_w is then the Rolewicz operator λB."""
    value: complex
    kind = "constant"

    def __post_init__(self):
        if self.value == 0:
            raise ValueError("weights must be nonzero")

    def weight(self, n: int) -> complex:
        return complex(self.value)

    def product(self, a: int, b: int) -> ScaledComplex:
        return scaled_power(complex(self.value), max(0, b - a + 1))

    def describe(self) -> dict:
        return {"kind": self.kind, "re": complex(self.value).real, "im": complex(self.value).imag}


@dataclass(frozen=True)
class PowerWeights(WeightSequence):
    """w(n) = (n/(n−1))^α for n ≥ 2, so w(2)⋯w(n) = n^α."""
    alpha: Union[Fraction, float]
    kind = "power"

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError(f"power weights need α > 0, got {self.alpha}")

    def weight(self, n: int) -> complex:
        if n < 2:
            raise ValueError("power weights are defined for n ≥ 2")
        return complex((n / (n - 1)) ** float(self.alpha))

    def product(self, a: int, b: int) -> ScaledComplex:
        if b < a:
            return ScaledComplex.of(1)
        if a < 2:
            raise ValueError("power weights are defined for n ≥ 2")
        # telescoping: Π_{j=a}^{b} (j/(j-1))^α = (b/(a-1))^α
        log2_value = float(self.alpha) * (math.log2(b) - math.log2(a - 1))
        whole = math.floor(log2_value)
        return ScaledComplex.normalize(complex(2.0 ** (log2_value - whole)), whole)

    def describe(self) -> dict:
        return {"kind": self.kind, "alpha": str(self.alpha)}


@dataclass(frozen=True)
class TabulatedWeights(WeightSequence):
    """Explicit weights with an optional default beyond the table."""
    values: Dict[int, complex] = field(default_factory=dict)
    default: Optional[complex] = None
    kind = "tabulated"

    def __post_init__(self):
        for n, w in self.values.items():
            if w == 0:
                raise ValueError(f"weight w({n}) is zero")
        if self.default == 0:
            raise ValueError("default weight must be nonzero")

    def weight(self, n: int) -> complex:
        if n in self.values:
            return complex(self.values[n])
        if self.default is None:
            raise KeyError(f"no weight stored for n={n}")
        return complex(self.default)

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "values": {str(k): [complex(v).real, complex(v).imag] for k, v in sorted(self.values.items())},
            "default": None if self.default is None else [complex(self.default).real, complex(self.default).imag],
        }


class FallingFactorialWeights(WeightSequence):
    """w(n) = n on the base-0 Taylor coefficients: the differentiation operator."""
    kind = "maclane"

    def weight(self, n: int) -> complex:
        return complex(n)

    def product(self, a: int, b: int) -> ScaledComplex:
        if b < a:
            return ScaledComplex.of(1)
        return scaled_product(float(j) for j in range(a, b + 1))


def weights_from_mapping(data: Mapping) -> WeightSequence:
    """Rebuild a weight sequence from its ``describe()`` form."""
    kind = data.get("kind")
    if kind == "constant":
        return ConstantWeights(complex(data["re"], data.get("im", 0.0)))
    if kind == "power":
        return PowerWeights(Fraction(data["alpha"]))
    if kind == "tabulated":
        default = data.get("default")
        return TabulatedWeights(
            {int(k): complex(v[0], v[1]) for k, v in data.get("values", {}).items()},
            None if default is None else complex(default[0], default[1]),
        )
    if kind == "maclane":
        return FallingFactorialWeights()
    raise ValueError(f"unknown weight kind: {kind}")
