"""Weighted backward shifts on ℓ_p: the FHC series criterion and the small-weight obstruction.

B_w is frequently hypercyclic on ℓ_p exactly when Σ_{n≥2} 1/|w(2)⋯w(n)|^p
converges. If |w(n)| ≥ 1 throughout and the same series with exponent p/m
diverges for some m ≥ 2, no x^m is frequently hypercyclic, so B_w has no
frequently hypercyclic algebra.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import zeta

from config.settings import NOGO_CONFIG
from nogo.orbits import OrbitEvaluator, weight_prefix
from seqspace.complex_seq import ComplexSeq
from seqspace.shifts import ShiftSpec
from seqspace.weights import (ConstantWeights, FallingFactorialWeights, PowerWeights, TabulatedWeights,
                              WeightSequence)
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass
class SeriesVerdict:
    weights: Dict[str, Any]
    p: float
    m: int
    kind: str
    rigorous: bool
    value: Optional[float] = None
    exponent: Optional[str] = None
    partial_sums: List[Tuple[int, float]] = field(default_factory=list)
    raabe: Optional[float] = None

    @property
    def divergent(self) -> bool:
        return self.kind == "divergent"

    def to_dict(self) -> dict:
        return {"weights": self.weights, "p": self.p, "m": self.m, "kind": self.kind,
                "rigorous": self.rigorous, "value": self.value, "exponent": self.exponent,
                "partial_sums": [list(row) for row in self.partial_sums], "raabe": self.raabe}


def _check_p(p: float, m: int):
    if not (1 <= p < math.inf):
        raise ValueError(f"ℓ_p needs finite p ≥ 1, got {p}")
    if m < 1:
        raise ValueError(f"m must be ≥ 1, got {m}")


def _log_products(w: WeightSequence, top: int) -> np.ndarray:
    """log|w(2)⋯w(n)| for n = 1..top (index n − 1; the empty product at n = 1)."""
    logs, _ = weight_prefix(ShiftSpec.weighted(w), top, 1)
    return logs


def _partial_sums(w: WeightSequence, p: float, m: int, ladder: Sequence[int]) -> List[Tuple[int, float]]:
    top = max(ladder)
    terms = np.exp(-(p / m) * _log_products(w, top)[1:])
    sums = np.cumsum(terms)
    return [(N, float(sums[N - 2])) for N in ladder if N >= 2]


def _raabe_statistic(w: WeightSequence, p: float, m: int, top: int) -> float:
    """Median of n(|w(n+1)|^{p/m} − 1) over the last tenth of [2, top]."""
    window = range(max(2, top - top // 10), top + 1)
    stats = [n * (abs(w.weight(n + 1)) ** (p / m) - 1.0) for n in window]
    return float(np.median(stats))


def weight_series_classify(w: WeightSequence, p: float, m: int = 1,
                           ladder: Optional[Sequence[int]] = None) -> SeriesVerdict:
    """Σ_{n≥2} 1/|w(2)⋯w(n)|^{p/m}: exact for power and constant weights, heuristic otherwise."""
    _check_p(p, m)
    ladder = list(ladder or NOGO_CONFIG["partial_sum_ladder"])

    if isinstance(w, PowerWeights):
        # w(2)⋯w(n) = n^α, so the series is Σ n^{−αp/m}
        s = Fraction(w.alpha) * Fraction(p) / m
        if s <= 1:
            return SeriesVerdict(w.describe(), p, m, "divergent", True, exponent=str(s))
        return SeriesVerdict(w.describe(), p, m, "convergent", True, float(zeta(float(s), 2)), str(s))

    if isinstance(w, ConstantWeights):
        modulus = abs(w.value)
        if modulus <= 1:
            return SeriesVerdict(w.describe(), p, m, "divergent", True)
        ratio = modulus ** (-p / m)
        return SeriesVerdict(w.describe(), p, m, "convergent", True, ratio / (1.0 - ratio))

    partial = _partial_sums(w, p, m, ladder)
    raabe = _raabe_statistic(w, p, m, max(ladder))
    kind = "convergent" if raabe > 1 else "divergent"
    logger.info(f"{w.kind} weights, p={p}, m={m}: Raabe statistic {raabe:.4g}, heuristic verdict {kind}")
    return SeriesVerdict(w.describe(), p, m, kind, False, partial[-1][1] if kind == "convergent" else None,
                         partial_sums=partial, raabe=raabe)


def weights_bounded_below(w: WeightSequence) -> Optional[bool]:
    """Whether |w(n)| ≥ 1 for every n ≥ 2; None when it cannot be decided from the description."""
    if isinstance(w, (PowerWeights, FallingFactorialWeights)):
        return True
    if isinstance(w, ConstantWeights):
        return abs(w.value) >= 1
    if isinstance(w, TabulatedWeights):
        stored = all(abs(v) >= 1 for v in w.values.values())
        return stored and (w.default is None or abs(w.default) >= 1)
    return None


def weight_fhc_criterion(w: WeightSequence, p: float) -> Dict[str, Any]:
    """B_w is FHC on ℓ_p iff Σ 1/|w(2)⋯w(n)|^p < ∞."""
    series = weight_series_classify(w, p, 1)
    return {"fhc": not series.divergent, "rigorous": series.rigorous, "series": series.to_dict()}


def weight_algebra_verdict(w: WeightSequence, p: float, m_max: int = 6) -> Dict[str, Any]:
    """FHC flag plus every 2 ≤ m ≤ m_max whose power series diverges."""
    criterion = weight_fhc_criterion(w, p)
    series = [weight_series_classify(w, p, m) for m in range(2, m_max + 1)]
    obstructed = [s.m for s in series if s.divergent]
    bounded_below = weights_bounded_below(w)
    verdict = {
        "fhc": criterion["fhc"],
        "weights_at_least_one": bounded_below,
        "obstructed_powers": obstructed,
        "no_fhc_algebra": bool(bounded_below and obstructed),
        "rigorous": criterion["rigorous"] and all(s.rigorous for s in series),
    }
    logger.info(f"{w.kind} weights on lp({p:g}): FHC={verdict['fhc']}, obstructed powers {obstructed}")
    return verdict


@dataclass
class WeightedObstructionReport:
    weights: Dict[str, Any]
    p: float
    m: int
    eps: float
    horizon: int
    rows: List[Dict[str, Any]] = field(default_factory=list)
    accumulated: float = 0.0
    norm_p_power: float = 0.0

    @property
    def status(self) -> str:
        if not self.rows:
            return "empty"
        return "pass" if self.consistent and all(r["holds"] for r in self.rows) else "fail"

    @property
    def consistent(self) -> bool:
        """(1−ε)^{p/m}·Σ_k 1/|w(2)⋯w(n_k+1)|^{p/m} ≤ ‖x‖_p^p."""
        lower = (1 - self.eps) ** (self.p / self.m) * self.accumulated
        return lower <= self.norm_p_power * (1 + 1e-12)

    def to_dict(self) -> dict:
        return {"weights": self.weights, "p": self.p, "m": self.m, "eps": self.eps, "horizon": self.horizon,
                "status": self.status, "times": [r["n"] for r in self.rows], "rows": self.rows,
                "accumulated": self.accumulated, "norm_p_power": self.norm_p_power,
                "consistent": self.consistent}


def power_obstruction_bw(x: ComplexSeq, w: WeightSequence, p: float, m: int, N: int,
                         eps: float) -> WeightedObstructionReport:
    """Coordinate bounds |x(n+1)| > (1−ε)^{1/m}/|w(2)⋯w(n+1)|^{1/m} at every n ≤ N with ‖B_wⁿx^m − e₁‖ < ε."""
    _check_p(p, m)
    if not 0 < eps < 1:
        raise ValueError(f"ε must lie in (0, 1), got {eps}")
    op = ShiftSpec.weighted(w)
    evaluator = OrbitEvaluator(op, x, m, p)
    log_products = _log_products(w, N + 1)
    report = WeightedObstructionReport(w.describe(), p, m, eps, N)
    report.norm_p_power = math.fsum(abs(v) ** p for v in x.values)

    scale = (1 - eps) ** (1.0 / m)
    contributions = []
    for n in range(1, N + 1):
        if evaluator.distance_to_unit(n) >= eps:
            continue
        bound = scale * math.exp(-log_products[n] / m)
        coordinate = abs(x.get(n + 1))
        holds = coordinate >= bound * (1 - 1e-12)
        if not holds:
            logger.error(f"|x({n + 1})| = {coordinate:.6g} below the forced bound {bound:.6g}")
        report.rows.append({"n": n, "coordinate": coordinate, "lower_bound": bound, "holds": holds})
        contributions.append(math.exp(-(p / m) * log_products[n]))
    report.accumulated = math.fsum(contributions)
    logger.info(f"B_w obstruction (m={m}, ε={eps}): {len(report.rows)} qualifying times up to {N}")
    return report
