from dataclasses import dataclass

import numpy as np

from config.settings import FAMGEN_CONFIG
from density.index_family import IndexFamily
from utils.errors import InvariantViolationError
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class DyadicClassSpec:
    """I(l,m): binary digits a₀a₁… read from the least significant bit are
    l−1 zeros, m ones, one zero, then anything."""
    l: int
    m: int

    def __post_init__(self):
        if self.l < 1 or self.m < 1:
            raise ValueError(f"dyadic class needs l, m ≥ 1, got ({self.l}, {self.m})")

    @property
    def modulus(self) -> int:
        return 1 << (self.l + self.m)

    @property
    def residue(self) -> int:
        return ((1 << self.m) - 1) << (self.l - 1)

    @property
    def rho(self) -> int:
        """Gap between consecutive members: 2^{l+m}."""
        return self.modulus

    def contains(self, n: int) -> bool:
        return n % self.modulus == self.residue

    def first_at_least(self, n: int) -> int:
        """Smallest member ≥ n."""
        shift = (self.residue - n) % self.modulus
        return n + shift


def in_dyadic_class(n: int, l: int, m: int) -> bool:
    return DyadicClassSpec(l, m).contains(n)


def _bit_pattern_mask(n: np.ndarray, spec: DyadicClassSpec) -> np.ndarray:
    low_zeros = (n & ((1 << (spec.l - 1)) - 1)) == 0
    window = (n >> (spec.l - 1)) & ((1 << (spec.m + 1)) - 1)
    return low_zeros & (window == (1 << spec.m) - 1)


def dyadic_class_members(spec: DyadicClassSpec, bound: int) -> IndexFamily:
    """Members of I(l,m) up to ``bound`` by bit pattern, cross-checked against the residue rule."""
    limit = FAMGEN_CONFIG["brute_force_limit"]
    if bound > limit:
        raise ValueError(f"brute-force range is limited to {limit}, got {bound}")
    candidates = np.arange(1, bound + 1, dtype=np.int64)
    by_bits = candidates[_bit_pattern_mask(candidates, spec)]
    by_residue = candidates[candidates % spec.modulus == spec.residue]
    if not np.array_equal(by_bits, by_residue):
        logger.error(f"I({spec.l},{spec.m}): bit-pattern and residue characterizations differ")
        raise InvariantViolationError(f"I({spec.l},{spec.m}) characterizations disagree below {bound}")
    return IndexFamily(tuple(int(n) for n in by_bits), bound, f"I({spec.l},{spec.m})")
