"""Witnesses that a polynomial in x₁, x₂, … does not vanish in the × algebra.

Σ c_β x^β has coefficient c_β (|β| = 1) at x_l and
γ_r = Σ_m 2^{−r(m−1)}‖φ_r‖^{2−2m} P_m(λ_{1,r}, …, λ_{s,r}) at a_r, where P_m
are the homogeneous parts of P. A nonzero linear part is a witness by
itself. Otherwise, with j the lowest degree, a column where P_j does not
vanish is located and its later recurrences are scanned until the higher
parts weigh at most half of |P_j|; γ at that index is then nonzero.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import islice, product as cartesian
from typing import Any, Dict, Optional, Tuple

import numpy as np

from algprod.polynomial import Polynomial
from algprod.times_algebra import TimesAlgebra
from config.settings import ALGEBRA_CONFIG
from seqspace.scaled import ScaledComplex
from utils.logger import get_logger

logger = get_logger(__name__)

_CHUNK = 256


@dataclass
class WitnessResult:
    status: str
    degree: Optional[int] = None
    column_index: Optional[int] = None
    witness_index: Optional[int] = None
    lead_value: Optional[float] = None
    higher_weight: Optional[float] = None
    gamma: Optional[ScaledComplex] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.status in ("witness found", "linear part")

    def margin(self, alg: TimesAlgebra) -> Optional[ScaledComplex]:
        """½·2^{−r(j−1)}‖φ_r‖^{2−2j}·|P_j(col)| at the witness index."""
        if self.witness_index is None:
            return None
        return alg.scaled_coefficient(self.witness_index, self.degree) * (0.5 * self.lead_value)

    def to_dict(self) -> dict:
        return {
            "status": self.status, "degree": self.degree, "column_index": self.column_index,
            "witness_index": self.witness_index, "lead_value": self.lead_value,
            "higher_weight": self.higher_weight,
            "gamma_log2": None if self.gamma is None else self.gamma.log2_abs(),
            "details": self.details,
        }


def gamma_coefficient(alg: TimesAlgebra, P: Polynomial, r: int) -> ScaledComplex:
    """γ_r of Σ_{|β|≥2} c_β x^β, in scaled arithmetic."""
    column = alg.column(r)
    total = ScaledComplex.of(0)
    for m, part in P.homogeneous_parts().items():
        if m < 2:
            continue
        value = part(column)
        if value != 0:
            total = total + alg.scaled_coefficient(r, m) * value
    return total


def _higher_weight(alg: TimesAlgebra, parts: Dict[int, Polynomial], j: int, r: int) -> float:
    """Σ_{m>j} 2^{−r(m−j)}‖φ_r‖^{−2(m−j)}|P_m(col_r)|."""
    column = alg.column(r)
    return sum(alg.coefficient(r, m - j + 1) * abs(part(column)) for m, part in parts.items() if m > j)


def _validate(P: Polynomial):
    if P.is_zero:
        logger.error("Independence witness requested for the zero polynomial")
        raise ValueError("the polynomial is identically zero")
    if P.lowest_degree == 0:
        raise ValueError("the polynomial must have no constant term")


def independence_witness(alg: TimesAlgebra, P: Polynomial, tolerance: float = None, budget: int = None,
                         recurrence_budget: int = None, threads: int = 1) -> WitnessResult:
    _validate(P)
    tolerance = ALGEBRA_CONFIG["tolerance"] if tolerance is None else tolerance
    budget = budget or ALGEBRA_CONFIG["witness_budget"]
    recurrence_budget = recurrence_budget or ALGEBRA_CONFIG["recurrence_budget"]

    linear = P.homogeneous_part(1)
    if not linear.is_zero:
        variables = [len(beta) for beta in linear.coefficients]
        logger.info(f"Linear part is nonzero: the combination has a nonzero x_l coefficient ({variables})")
        return WitnessResult("linear part", 1, details={"variables": variables})

    parts = P.homogeneous_parts()
    j = P.lowest_degree
    lead = parts[j]

    def lead_values(start: int):
        return [abs(lead(alg.column(r))) for r in range(start, min(start + _CHUNK, budget + 1))]

    starts = range(1, budget + 1, _CHUNK)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lead_values, starts))
    else:
        chunks = [lead_values(start) for start in starts]
    hit = next(((start + offset, v) for start, chunk in zip(starts, chunks)
                for offset, v in enumerate(chunk) if v > tolerance), None)
    if hit is None:
        logger.warning(f"No column with |P_{j}| > {tolerance} among the first {budget}")
        return WitnessResult("witness not found at budget", j, details={"budget": budget})

    r, value = hit
    for r_n in islice(alg.columns.recurrences(r), recurrence_budget):
        weight = _higher_weight(alg, parts, j, r_n)
        if weight <= 0.5 * value:
            gamma = gamma_coefficient(alg, P, r_n)
            logger.info(f"Witness at r={r_n} (column first seen at r={r}): |P_{j}|={value:.6g}, "
                        f"higher parts {weight:.3e}, log2|γ|={gamma.log2_abs():.3f}")
            return WitnessResult("witness found", j, r, r_n, value, weight, gamma)
    logger.warning(f"Column at r={r} never dominated within {recurrence_budget} recurrences")
    return WitnessResult("witness not found at budget", j, r, details={"recurrence_budget": recurrence_budget})


def random_polynomial(rng: np.random.Generator, max_vars: int = 3, max_degree: int = 4,
                      density: float = 0.3) -> Polynomial:
    """Random P in at most ``max_vars`` variables with lowest degree j ≥ 2.

    The lowest part always carries a pure X₁^j term, so P_j does not vanish
    at the column (1, 0, …) and any schedule listing a nonzero first entry
    gives the search a starting column.
    """
    s = int(rng.integers(1, max_vars + 1))
    j = int(rng.integers(2, max_degree + 1))
    lead = (j,) + (0,) * (s - 1)
    coefficients: Dict[Tuple[int, ...], complex] = {
        lead: complex(rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0), rng.normal())}
    for beta in cartesian(range(max_degree + 1), repeat=s):
        if beta != lead and j <= sum(beta) <= max_degree and rng.uniform() < density:
            coefficients[beta] = complex(rng.normal(), rng.normal())
    return Polynomial(coefficients)


def witness_is_sound(alg: TimesAlgebra, P: Polynomial, result: WitnessResult, rel_tol: float = 1e-9) -> bool:
    """|γ| at the witness index is nonzero and at least the stated margin."""
    if result.status == "linear part":
        return not P.homogeneous_part(1).is_zero
    if result.status != "witness found":
        return False
    gamma = gamma_coefficient(alg, P, result.witness_index)
    margin = result.margin(alg)
    if gamma.is_zero or margin.is_zero:
        return False
    return gamma.log2_abs() >= margin.log2_abs() + math.log2(1.0 - rel_tol)


def random_witness_suite(alg: TimesAlgebra, rng: np.random.Generator, count: int,
                         threads: int = 1) -> Dict[str, Any]:
    """Witness search on ``count`` random polynomials; every answer must be a sound witness."""
    cases = []
    for i in range(count):
        P = random_polynomial(rng)
        result = independence_witness(alg, P, threads=threads)
        cases.append({"case": i, "terms": len(P.coefficients), "variables": P.num_variables,
                      "degree": result.degree, "status": result.status,
                      "witness_index": result.witness_index, "sound": witness_is_sound(alg, P, result)})
    unsound = [c["case"] for c in cases if not c["sound"]]
    if unsound:
        logger.error(f"Witness suite: cases {unsound} gave no sound witness")
    return {"cases": count, "found": sum(1 for c in cases if c["status"] != "witness not found at budget"),
            "sound": count - len(unsound), "passed": not unsound, "details": cases}
