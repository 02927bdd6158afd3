import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from seqspace.complex_seq import ComplexSeq
from seqspace.spaces import SpaceSpec, lp_norm
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class Functional:
    """x ↦ Σ_k c(k)·x(k) for finitely supported coefficients c."""
    coefficients: ComplexSeq
    space: SpaceSpec = field(default_factory=SpaceSpec.Lp)

    @classmethod
    def coordinate(cls, k: int, space: SpaceSpec = None, base: int = 1) -> "Functional":
        return cls(ComplexSeq.unit(k, base), space or SpaceSpec.Lp())

    @classmethod
    def from_mapping(cls, values: Mapping[int, complex], space: SpaceSpec = None, base: int = 1) -> "Functional":
        return cls(ComplexSeq.from_mapping(values, base).normalized(), space or SpaceSpec.Lp())

    def __call__(self, x: ComplexSeq) -> complex:
        self.coefficients._check_base(x)
        terms = [c * x.get(k) for k, c in self.coefficients.entries]
        return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))

    @cached_property
    def dual_norm(self) -> float:
        """‖φ‖ = ‖c‖_q with 1/p + 1/q = 1 (ℓ₁ for c₀)."""
        return lp_norm(self.coefficients.values, self.space.dual_exponent)

    @property
    def is_zero(self) -> bool:
        return self.coefficients.normalized().is_zero

    def normalized_to_unit(self) -> "Functional":
        """φ/‖φ‖ when ‖φ‖ > 1, else φ itself."""
        if self.dual_norm <= 1:
            return self
        logger.debug(f"Rescaling functional of norm {self.dual_norm:.6g} onto the unit ball")
        return Functional(self.coefficients.scale(1.0 / self.dual_norm), self.space)
