"""Powers of supercyclic approximations for the Rolewicz operator.

If α_k(λB)^{n_k}x → z then α_k^m λ^{(m−1)n_k}(λB)^{n_k}x^m → z^m, because
coordinatewise α^m λ^{(m−1)n}·λⁿx(j+n)^m = (α·λⁿx(j+n))^m.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from seqspace.arithmetic import power
from seqspace.complex_seq import ComplexSeq
from seqspace.scaled import ScaledComplex, scaled_power
from seqspace.spaces import SpaceSpec, lp_norm
from utils.logger import get_logger

logger = get_logger(__name__)


def _scaled_orbit_power(x: ComplexSeq, lam: complex, alpha: complex, n: int, m: int) -> Dict[int, ScaledComplex]:
    """α^m λ^{(m−1)n}(λB)ⁿ(x^m), coordinate by coordinate."""
    factor = scaled_power(complex(alpha), m) * scaled_power(complex(lam), (m - 1) * n) * scaled_power(complex(lam), n)
    return {k - n: factor * scaled_power(ScaledComplex.of(v), m)
            for k, v in x.entries if k - n >= x.base and v != 0}


def _scaled_power_of_orbit(x: ComplexSeq, lam: complex, alpha: complex, n: int, m: int) -> Dict[int, ScaledComplex]:
    """(α(λB)ⁿx)^m, coordinate by coordinate."""
    lift = ScaledComplex.of(complex(alpha)) * scaled_power(complex(lam), n)
    return {k - n: scaled_power(lift * ScaledComplex.of(v), m)
            for k, v in x.entries if k - n >= x.base and v != 0}


def supercyclic_scaling_residual(x: ComplexSeq, lam: complex, alpha: complex, n: int, m: int) -> float:
    """Sup-norm of the difference of both sides, relative to the larger side (≥ 1)."""
    if alpha == 0:
        raise ValueError("α must be nonzero")
    lhs = _scaled_orbit_power(x, lam, alpha, n, m)
    rhs = _scaled_power_of_orbit(x, lam, alpha, n, m)
    residual = max(((lhs[j] - rhs[j]).magnitude() for j in lhs), default=0.0)
    scale = max([1.0] + [v.magnitude() for v in rhs.values()])
    return residual / scale


def _deviation(values: Dict[int, ScaledComplex], z: ComplexSeq, exponent: float) -> float:
    difference = {j: v.to_complex() for j, v in values.items()}
    for k, v in z.entries:
        difference[k] = difference.get(k, 0j) - v
    return lp_norm(difference.values(), exponent)


@dataclass
class SupercyclicPowerReport:
    m: int
    tolerance: float
    premise_deviations: List[float] = field(default_factory=list)
    power_deviations: List[float] = field(default_factory=list)

    @property
    def max_deviation(self) -> float:
        return max(self.power_deviations, default=0.0)

    @property
    def final_deviation(self) -> float:
        return self.power_deviations[-1] if self.power_deviations else 0.0

    @property
    def monotone(self) -> bool:
        return all(b <= a for a, b in zip(self.power_deviations, self.power_deviations[1:]))

    @property
    def converged(self) -> bool:
        return self.monotone and self.final_deviation < self.tolerance

    def to_dict(self) -> dict:
        return {"m": self.m, "tolerance": self.tolerance, "premise_deviations": self.premise_deviations,
                "power_deviations": self.power_deviations, "max_deviation": self.max_deviation,
                "monotone": self.monotone, "converged": self.converged}


def supercyclic_power_limit(x: ComplexSeq, lam: complex, z: ComplexSeq,
                            approximants: Sequence[Tuple[complex, int]], m: int,
                            tolerance: float = 1e-6, space: SpaceSpec = None) -> SupercyclicPowerReport:
    """Deviation ladders ‖α_k(λB)^{n_k}x − z‖ and ‖α_k^m λ^{(m−1)n_k}(λB)^{n_k}x^m − z^m‖."""
    if abs(lam) <= 1:
        raise ValueError(f"|λ| must exceed 1, got {lam}")
    if m < 1:
        raise ValueError(f"m must be ≥ 1, got {m}")
    exponent = (space or SpaceSpec.Lp()).exponent
    target = power(z, m)
    report = SupercyclicPowerReport(m, tolerance)
    for alpha, n in approximants:
        if alpha == 0:
            logger.error(f"Approximant at n={n} has α = 0")
            raise ValueError("approximant scalars α_k must be nonzero")
        report.premise_deviations.append(_deviation(_scaled_orbit_power(x, lam, alpha, n, 1), z, exponent))
        report.power_deviations.append(_deviation(_scaled_orbit_power(x, lam, alpha, n, m), target, exponent))
    if not report.converged:
        logger.warning(f"Power deviations for m={m} do not settle below {tolerance}: {report.final_deviation:.3e}")
    else:
        logger.info(f"Power deviations for m={m} decrease to {report.final_deviation:.3e}")
    return report
