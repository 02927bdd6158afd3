"""Targets z_{l,m} and the coordinate bounds forced by ‖(λB)ⁿx^m − z_{l,m}‖ ≤ ε^{lm}.

Coordinate bounds are compared in log₂ so that |λ|^{±n/m} never leaves the
double range; every slack below is log₂(larger side) − log₂(smaller side) and
an inequality holds when its slack is ≥ −1e−9.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from seqspace.arithmetic import scaled_root
from seqspace.complex_seq import ComplexSeq
from seqspace.scaled import ScaledComplex, scaled_power
from seqspace.spaces import SpaceSpec, lp_norm
from utils.logger import get_logger

logger = get_logger(__name__)

SLACK_TOLERANCE = 1e-9
Event = Tuple[int, int, int]


def default_epsilon(lam: complex) -> float:
    """min(1, |λ|^{−1})/4, strictly inside the admissible range."""
    return min(1.0, 1.0 / abs(lam)) / 4.0


def _check_guard(lam: complex, eps: float):
    if abs(lam) <= 1:
        raise ValueError(f"|λ| must exceed 1, got {lam}")
    if not (eps > 0 and 3 * eps < min(1.0, 1.0 / abs(lam))):
        logger.error(f"ε={eps} violates 3ε < min(1, 1/|λ|) for λ={lam}")
        raise ValueError(f"ε={eps} violates 3ε < min(1, 1/|λ|)")


def necessity_targets(l: int, m: int, lam: complex, eps: float) -> ComplexSeq:
    """z_{l,m} = (|λ|^{lm} + 1)·e₁ + 2ε^{lm}·(e₂ + … + e_{l+1})."""
    _check_guard(lam, eps)
    if l < 1 or m < 1:
        raise ValueError(f"l, m must be ≥ 1, got ({l}, {m})")
    rho = abs(lam) ** (l * m) + 1
    spike = 2 * eps ** (l * m)
    return ComplexSeq.from_mapping({1: rho, **{k: spike for k in range(2, l + 2)}})


def _orbit_power(x: ComplexSeq, m: int, n: int, lam: complex) -> Dict[int, complex]:
    """(λB)ⁿx^m coordinatewise in scaled arithmetic."""
    lift = scaled_power(complex(lam), n)
    result = {}
    for k, v in x.entries:
        if k > n and v != 0:
            result[k - n] = (lift * scaled_power(ScaledComplex.of(v), m)).to_complex()
    return result


def premise_error(x: ComplexSeq, m: int, n: int, l: int, lam: complex, eps: float,
                  space: SpaceSpec = None) -> float:
    space = space or SpaceSpec.Lp()
    values = _orbit_power(x, m, n, lam)
    for k, v in necessity_targets(l, m, lam, eps).entries:
        values[k] = values.get(k, 0j) - v
    return lp_norm(values.values(), space.exponent)


@dataclass
class NecessityReport:
    event: Event
    status: str
    premise_error: float
    premise_bound: float
    consequences: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return self.status == "checked" and all(c["holds"] for c in self.consequences)

    def slack(self, name: str) -> Optional[float]:
        for c in self.consequences:
            if c["name"] == name:
                return c["slack"]
        return None

    def to_dict(self) -> dict:
        l, m, n = self.event
        return {"l": l, "m": m, "n": n, "status": self.status, "premise_error": self.premise_error,
                "premise_bound": self.premise_bound, "consequences": self.consequences}


def _log2_abs(x: ComplexSeq, k: int) -> float:
    value = x.get(k)
    return math.log2(abs(value)) if value != 0 else -math.inf


def _consequence(name: str, statement: str, slacks: Sequence[float]) -> Dict[str, Any]:
    slack = min(slacks) if slacks else math.inf
    return {"name": name, "statement": statement, "slack": slack, "holds": slack >= -SLACK_TOLERANCE}


def necessity_consequences(x: ComplexSeq, m: int, n: int, l: int, lam: complex, eps: float,
                           space: SpaceSpec = None) -> NecessityReport:
    """Verify the approximation premise at (l, m, n), then the coordinate bounds it forces.

    ix   |x(n+1)| ≥ |λ|^{l − n/m}
    ix2  |x(k)| ≤ |λ|^{−l − n/m} for every stored k ≥ n+2
    ix3  |x(k)| ≥ ε^l·|λ|^{−n/m} for n+2 ≤ k ≤ n+l+1
    ix4  |x(k)| ≤ 3^{1/m}·ε^l·|λ|^{−n/m} for n+2 ≤ k ≤ n+l+1
    """
    _check_guard(lam, eps)
    bound = eps ** (l * m)
    error = premise_error(x, m, n, l, lam, eps, space)
    report = NecessityReport((l, m, n), "checked", error, bound)
    if error > bound * (1 + 1e-12):
        logger.warning(f"Premise violated at (l,m,n)=({l},{m},{n}): {error:.3e} > {bound:.3e}")
        report.status = "premise violated"
        return report

    log_lam = math.log2(abs(lam))
    log_eps = math.log2(eps)
    base = -(n / m) * log_lam

    report.consequences.append(_consequence(
        "ix", "|x(n+1)| >= |lam|^(l - n/m)", [_log2_abs(x, n + 1) - (l * log_lam + base)]))
    tail = [k for k in x.indices if k >= n + 2 and x.get(k) != 0]
    report.consequences.append(_consequence(
        "ix2", "|x(k)| <= |lam|^(-l - n/m), k >= n+2", [(-l * log_lam + base) - _log2_abs(x, k) for k in tail]))
    window = range(n + 2, n + l + 2)
    report.consequences.append(_consequence(
        "ix3", "|x(k)| >= eps^l |lam|^(-n/m), n+2 <= k <= n+l+1", [_log2_abs(x, k) - (l * log_eps + base) for k in window]))
    report.consequences.append(_consequence(
        "ix4", "|x(k)| <= 3^(1/m) eps^l |lam|^(-n/m), n+2 <= k <= n+l+1",
        [(math.log2(3) / m + l * log_eps + base) - _log2_abs(x, k) for k in window]))
    for c in report.consequences:
        if not c["holds"]:
            logger.error(f"Consequence {c['name']} fails at (l,m,n)=({l},{m},{n}) with slack {c['slack']:.3e}")
    return report


def premise_witness(l: int, m: int, n: int, lam: complex, eps: float,
                    perturbation: Optional[ComplexSeq] = None, space: SpaceSpec = None) -> ComplexSeq:
    """x with (λB)ⁿx^m = z_{l,m} + δ exactly, via x(n+k) = ((z + δ)(k)·λ^{−n})^{1/m}."""
    target = necessity_targets(l, m, lam, eps)
    if perturbation is not None:
        if lp_norm(perturbation.values, (space or SpaceSpec.Lp()).exponent) >= eps ** (l * m):
            raise ValueError("perturbation must be smaller than ε^{lm}")
        target = target + perturbation
    inverse = scaled_power(complex(lam), -n)
    entries = {}
    for k, v in target.entries:
        entries[n + k] = scaled_root(inverse * v, m).to_complex()
    return ComplexSeq.from_mapping(entries).normalized()


def combined_witness(events: Sequence[Event], lam: complex, eps: float) -> ComplexSeq:
    """Sum of the single-event witnesses; supports must not collide."""
    x = ComplexSeq.zero()
    for l, m, n in events:
        piece = premise_witness(l, m, n, lam, eps)
        if set(piece.indices) & set(x.indices):
            raise ValueError(f"witness for {(l, m, n)} overlaps an earlier event")
        x = x + piece
    return x


def necessity_gap_check(x: ComplexSeq, first: Event, second: Event, lam: complex, eps: float,
                        space: SpaceSpec = None) -> Dict[str, Any]:
    """For two premise-satisfying events (l,m,n), (l′,m′,n′) with n′ > n: n′/m′ ≥ n/m + l + l′."""
    (l, m, n), (l2, m2, n2) = first, second
    if n2 <= n:
        raise ValueError("the second event must come later")
    reports = [necessity_consequences(x, m, n, l, lam, eps, space),
               necessity_consequences(x, m2, n2, l2, lam, eps, space)]
    if any(r.status != "checked" for r in reports):
        return {"status": "premise violated", "events": [r.to_dict() for r in reports]}
    lhs = Fraction(n2, m2)
    rhs = Fraction(n, m) + l + l2
    holds = lhs >= rhs
    if not holds:
        logger.error(f"Gap fails: n′/m′ = {lhs} < n/m + l + l′ = {rhs}")
    return {"status": "pass" if holds else "fail", "lhs": str(lhs), "rhs": str(rhs),
            "events": [r.to_dict() for r in reports]}


def condfi_status(l: int, m: int, n: int, lam: complex, eps: float) -> Dict[str, Any]:
    """Whether |λ|^{n/m²} > 3ε^{−l}, with the least n for which it holds."""
    _check_guard(lam, eps)
    lhs = (n / (m * m)) * math.log2(abs(lam))
    rhs = math.log2(3) - l * math.log2(eps)
    threshold = math.floor(m * m * rhs / math.log2(abs(lam))) + 1
    return {"holds": lhs > rhs, "lhs_log2": lhs, "rhs_log2": rhs, "threshold_n": max(threshold, 0)}
