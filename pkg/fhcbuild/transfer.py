from dataclasses import dataclass
from typing import List, Optional, Sequence

from seqspace.arithmetic import hadamard, power
from seqspace.complex_seq import ComplexSeq, linear_combination
from seqspace.shifts import ShiftSpec, apply_shift
from seqspace.spaces import SpaceSpec, lp_norm, norm
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class TransferResult:
    n: int
    residual: float
    scale: float
    correction_norm: float

    @property
    def relative_residual(self) -> float:
        return self.residual / self.scale

    def to_dict(self) -> dict:
        return {"n": self.n, "residual": self.residual, "scale": self.scale,
                "correction_norm": self.correction_norm}


def _correction(x0: ComplexSeq, alphas: Sequence[complex], m: int, n: int) -> ComplexSeq:
    """Σ_{ν>m} (α_ν/α_m)·Bⁿ(x₀^{ν−m})."""
    plain = ShiftSpec.backward()
    lead = complex(alphas[0])
    terms = [(complex(a) / lead, apply_shift(plain, n, power(x0, nu - m)))
             for nu, a in enumerate(alphas[1:], start=m + 1) if a != 0]
    return linear_combination(terms, x0.base)


def power_combo_transfer(x0: ComplexSeq, alphas: Sequence[complex], m: int, op: ShiftSpec, n: int,
                         space: Optional[SpaceSpec] = None) -> TransferResult:
    """Both sides of opⁿ(Σ_ν (α_ν/α_m) x₀^ν) − opⁿx₀^m = opⁿ(x₀^m)·Σ_{ν>m} (α_ν/α_m) Bⁿ(x₀^{ν−m}).

    ``alphas`` lists α_m, …, α_N; any backward shift (Rolewicz, weighted, differentiation) may act.
    """
    space = space or SpaceSpec.Lp()
    if not alphas or alphas[0] == 0:
        raise ValueError("the leading coefficient α_m must be nonzero")
    if m < 1:
        raise ValueError(f"m must be ≥ 1, got {m}")
    if not op.is_backward:
        raise ValueError("the transfer identity needs a backward shift")

    lead = complex(alphas[0])
    leading_power = power(x0, m)
    combo = linear_combination([(complex(a) / lead, power(x0, nu)) for nu, a in enumerate(alphas, start=m)],
                               x0.base)
    lhs = apply_shift(op, n, combo) - apply_shift(op, n, leading_power)
    correction = _correction(x0, alphas, m, n)
    rhs = hadamard(apply_shift(op, n, leading_power), correction)

    residual = lp_norm((lhs - rhs).values, float("inf"))
    scale = max(1.0, lp_norm(lhs.values, float("inf")), lp_norm(rhs.values, float("inf")))
    result = TransferResult(n, residual, scale, norm(correction, space))
    logger.debug(f"transfer n={n}: residual {residual:.3e}, correction {result.correction_norm:.3e}")
    return result


def transfer_correction_profile(x0: ComplexSeq, alphas: Sequence[complex], m: int,
                                n_values: Sequence[int], space: Optional[SpaceSpec] = None) -> List[float]:
    """‖Σ (α_ν/α_m) Bⁿ(x₀^{ν−m})‖ along n: non-increasing, and 0 once n passes the support."""
    space = space or SpaceSpec.Lp()
    return [norm(_correction(x0, alphas, m, n), space) for n in n_values]
