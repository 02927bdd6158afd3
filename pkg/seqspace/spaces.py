import math
from dataclasses import dataclass
from typing import Literal

from seqspace.complex_seq import ComplexSeq

SpaceKind = Literal["lp", "c0", "taylor_l1"]


@dataclass(frozen=True)
class SpaceSpec:
    """Which norm governs: ℓ_p (p ≥ 1), the c₀ sup-norm, or the Taylor ‖·‖₁ seminorm."""
    kind: SpaceKind = "lp"
    p: float = 2.0

    def __post_init__(self):
        if self.kind not in ("lp", "c0", "taylor_l1"):
            raise ValueError(f"unknown space kind: {self.kind}")
        if self.kind == "lp" and not (self.p >= 1 and math.isfinite(self.p)):
            raise ValueError(f"ℓ_p needs finite p ≥ 1, got {self.p}")

    @classmethod
    def Lp(cls, p: float = 2.0) -> "SpaceSpec":
        return cls("lp", float(p))

    @classmethod
    def C0(cls) -> "SpaceSpec":
        return cls("c0", math.inf)

    @classmethod
    def TaylorL1(cls) -> "SpaceSpec":
        return cls("taylor_l1", 1.0)

    @property
    def exponent(self) -> float:
        """Summation exponent: p for ℓ_p, inf for c₀, 1 for the Taylor seminorm."""
        if self.kind == "c0":
            return math.inf
        if self.kind == "taylor_l1":
            return 1.0
        return self.p

    @property
    def dual_exponent(self) -> float:
        """q with 1/p + 1/q = 1 (c₀ pairs with ℓ₁, ℓ₁ with ℓ_∞)."""
        p = self.exponent
        if p == math.inf:
            return 1.0
        if p == 1.0:
            return math.inf
        return p / (p - 1.0)

    @property
    def label(self) -> str:
        if self.kind == "lp":
            return f"lp({self.p:g})"
        return self.kind


def lp_norm(values, p: float) -> float:
    """(Σ|v|^p)^(1/p) with exactly rounded summation; p = inf gives the sup."""
    moduli = [abs(v) for v in values]
    if not moduli:
        return 0.0
    if p == math.inf:
        return max(moduli)
    if p == 1.0:
        return math.fsum(moduli)
    if p == 2.0:
        return math.sqrt(math.fsum(m * m for m in moduli))
    return math.fsum(m ** p for m in moduli) ** (1.0 / p)


def norm(x: ComplexSeq, space: SpaceSpec) -> float:
    """Norm of x in ``space``; the empty sequence has norm 0."""
    return lp_norm(x.values, space.exponent)
