"""The commutative product y×x = Σ_r 2^{−r}‖φ_r‖^{−2} φ_r(y)φ_r(x) a_r on ℓ_p.

The basis is split as x_l = e_{2l−1} and a_r = e_{2r}; the functional
φ_r = a_r* + Σ_l λ_{l,r} x_l* then has coefficient 1 at 2r and λ_{l,r} at
2l − 1, so φ_s(a_r) = δ_{r,s} holds exactly and ‖φ_r‖ is the ℓ_q norm of
(1, λ_{1,r}, λ_{2,r}, …). Every series is cut at r ≤ rank, which costs at
most 2^{−rank}·‖y‖·‖x‖ in norm.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Sequence

from algprod.columns import Column, ColumnSchedule, ConstantColumns
from algprod.functional import Functional
from config.settings import ALGEBRA_CONFIG
from seqspace.complex_seq import ComplexSeq, linear_combination
from seqspace.scaled import ScaledComplex, scaled_power
from seqspace.spaces import SpaceSpec, norm
from utils.logger import get_logger

logger = get_logger(__name__)


def x_index(l: int) -> int:
    return 2 * l - 1


def a_index(r: int) -> int:
    return 2 * r


@dataclass
class TimesAlgebra:
    columns: ColumnSchedule = field(default_factory=ConstantColumns)
    rank: int = ALGEBRA_CONFIG["rank"]
    space: SpaceSpec = field(default_factory=SpaceSpec.Lp)
    _functionals: Dict[int, Functional] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"truncation rank must be ≥ 1, got {self.rank}")

    def x(self, l: int) -> ComplexSeq:
        return ComplexSeq.unit(x_index(l))

    def a(self, r: int) -> ComplexSeq:
        return ComplexSeq.unit(a_index(r))

    def column(self, r: int) -> Column:
        return self.columns.column(r)

    def phi(self, r: int) -> Functional:
        if r not in self._functionals:
            values = {a_index(r): 1 + 0j}
            values.update({x_index(l): v for l, v in enumerate(self.column(r), start=1) if v != 0})
            self._functionals[r] = Functional.from_mapping(values, self.space)
        return self._functionals[r]

    def phi_norm(self, r: int) -> float:
        return self.phi(r).dual_norm

    def coefficient(self, r: int, degree: int) -> float:
        """2^{−r(d−1)}/‖φ_r‖^{2d−2}, the weight of a degree-d product at a_r."""
        return (2.0 ** -r / self.phi_norm(r) ** 2) ** (degree - 1)

    def scaled_coefficient(self, r: int, degree: int) -> ScaledComplex:
        return ScaledComplex.power_of_two(-r * (degree - 1)) * scaled_power(self.phi_norm(r), -(2 * degree - 2))

    def times(self, y: ComplexSeq, x: ComplexSeq) -> ComplexSeq:
        terms = []
        for r in range(1, self.rank + 1):
            value = self.phi(r)(y) * self.phi(r)(x)
            if value != 0:
                terms.append((self.coefficient(r, 2) * value, self.a(r)))
        return linear_combination(terms)

    def tail_bound(self, y: ComplexSeq, x: ComplexSeq) -> float:
        return 2.0 ** -self.rank * norm(y, self.space) * norm(x, self.space)

    def collapsed_triple(self, x: ComplexSeq, y: ComplexSeq, z: ComplexSeq) -> ComplexSeq:
        """Σ_r 2^{−2r}‖φ_r‖^{−4} φ_r(z)φ_r(y)φ_r(x) a_r."""
        terms = [(self.coefficient(r, 3) * self.phi(r)(z) * self.phi(r)(y) * self.phi(r)(x), self.a(r))
                 for r in range(1, self.rank + 1)]
        return linear_combination(terms)

    def describe(self) -> dict:
        return {"columns": self.columns.describe(), "rank": self.rank, "space": self.space.label}


def times_product(alg: TimesAlgebra, y: ComplexSeq, x: ComplexSeq) -> ComplexSeq:
    return alg.times(y, x)


def times_associativity_check(alg: TimesAlgebra, x: ComplexSeq, y: ComplexSeq, z: ComplexSeq) -> dict:
    """z×(y×x), (z×y)×x and the collapsed triple sum, compared pairwise."""
    left = alg.times(z, alg.times(y, x))
    right = alg.times(alg.times(z, y), x)
    collapsed = alg.collapsed_triple(x, y, z)
    tolerance = ALGEBRA_CONFIG["associativity_tolerance"]
    tails = 2 * 2.0 ** -alg.rank * norm(x, alg.space) * norm(y, alg.space) * norm(z, alg.space)
    residuals = {
        "left_right": norm(left - right, alg.space),
        "left_collapsed": norm(left - collapsed, alg.space),
        "right_collapsed": norm(right - collapsed, alg.space),
    }
    passed = all(v <= tolerance + tails for v in residuals.values())
    if not passed:
        logger.error(f"Associativity residuals {residuals} exceed {tolerance} + {tails:.3e}")
    return {**residuals, "tail_bound": tails, "passed": passed}


def _check_multi_index(beta: Sequence[int]):
    if any(b < 0 for b in beta) or sum(beta) < 2:
        raise ValueError(f"monomials need nonnegative exponents with |β| ≥ 2, got {tuple(beta)}")


def monomial_eval(alg: TimesAlgebra, beta: Sequence[int], R: int = None) -> ComplexSeq:
    """x₁^{β₁}×⋯×x_s^{β_s} = Σ_{r≤R} 2^{−r(|β|−1)}‖φ_r‖^{2−2|β|} λ_{1,r}^{β₁}⋯λ_{s,r}^{β_s} a_r."""
    _check_multi_index(beta)
    degree = sum(beta)
    terms = []
    for r in range(1, (R or alg.rank) + 1):
        column = alg.column(r)
        product = 1 + 0j
        for l, b in enumerate(beta, start=1):
            if b:
                product *= (column[l - 1] if l <= len(column) else 0j) ** b
        if product != 0:
            terms.append((alg.coefficient(r, degree) * product, alg.a(r)))
    return linear_combination(terms)


def iterated_monomial(alg: TimesAlgebra, beta: Sequence[int]) -> ComplexSeq:
    """The same monomial by repeated ×, left to right."""
    _check_multi_index(beta)
    factors = [alg.x(l) for l, b in enumerate(beta, start=1) for _ in range(b)]
    result = factors[0]
    for factor in factors[1:]:
        result = alg.times(result, factor)
    return result


def monomial_cross_check(alg: TimesAlgebra, beta: Sequence[int]) -> float:
    residual = norm(monomial_eval(alg, beta) - iterated_monomial(alg, beta), alg.space)
    logger.debug(f"monomial {tuple(beta)}: closed form vs iterated residual {residual:.3e}")
    return residual


def phi_norm_floor_check(alg: TimesAlgebra, R: int = None) -> bool:
    """φ_r(a_s) = δ_{r,s} and ‖φ_r‖ ≥ 1 for r, s ≤ R."""
    R = R or alg.rank
    for r in range(1, R + 1):
        phi = alg.phi(r)
        if phi.dual_norm < 1 - 1e-15:
            return False
        for s in range(1, R + 1):
            if phi(alg.a(s)) != (1 if r == s else 0):
                return False
    return math.isfinite(alg.phi_norm(R))
