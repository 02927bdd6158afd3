"""Finite-N density ratios on index families.

Every function returns the ratio at a single N; liminf/limsup behaviour is read
off a ladder of N values (``density_ladder``). Weighted sums use numpy weight
vectors and ``math.fsum``, so the result does not depend on summation order.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from density.index_family import IndexFamily
from utils.logger import get_logger

logger = get_logger(__name__)

LN2 = math.log(2.0)


@dataclass(frozen=True)
class DensityRow:
    family_id: str
    kind: str
    m: int
    N: int
    value: float

    def to_dict(self) -> dict:
        return asdict(self)


def _check_N(A: IndexFamily, N: int):
    if N < 1:
        raise ValueError(f"N must be ≥ 1, got {N}")
    if N > A.horizon:
        raise ValueError(f"N={N} exceeds the materialized horizon {A.horizon} of {A.descriptor}")


def lower_density(A: IndexFamily, N: int) -> float:
    """card{0 ≤ n ≤ N : n ∈ A}/(N+1)."""
    _check_N(A, N)
    return A.count_upto(N) / (N + 1)


def upper_density(A: IndexFamily, N: int) -> float:
    """Same finite-N ratio as ``lower_density``; the ladder maximum tracks the limsup."""
    return lower_density(A, N)


@lru_cache(maxsize=16)
def _weights(kind: str, N: int, param: float) -> Tuple[np.ndarray, float]:
    """Weight vector indexed by n = 0..N and its total over the admissible range."""
    n = np.arange(N + 1, dtype=np.float64)
    weights = np.zeros(N + 1, dtype=np.float64)
    if kind == "log":
        m = int(param)
        weights[1:] = np.log(n[1:]) ** (m - 1) / n[1:] if m > 1 else 1.0 / n[1:]
    elif kind == "dyadic":
        m = int(param)
        # a^m − b^m = (a − b)·Σ a^{m−1−i} b^i with a − b = −log₂(1 − 1/n) taken from log1p
        a = np.log2(n[2:])
        b = np.log2(n[2:] - 1.0)
        gap = -np.log1p(-1.0 / n[2:]) / LN2
        geometric = sum(a ** (m - 1 - i) * b ** i for i in range(m))
        weights[2:] = gap * geometric
    elif kind == "power":
        weights[1:] = n[1:] ** (-param)
    else:
        raise ValueError(f"unknown weight kind: {kind}")
    weights.setflags(write=False)
    return weights, math.fsum(weights)


def _weighted_ratio(A: IndexFamily, N: int, kind: str, param: float, denominator: Optional[float] = None) -> float:
    _check_N(A, N)
    weights, total = _weights(kind, N, float(param))
    if denominator is not None:
        total = denominator
    if total == 0.0:
        return 0.0
    members = A.as_array(N)
    return math.fsum(weights[members]) / total


def log_lower_density(A: IndexFamily, N: int) -> float:
    """Σ_{1≤n≤N, n∈A} 1/n ÷ H_N."""
    return _weighted_ratio(A, N, "log", 1)


def logm_lower_density(A: IndexFamily, N: int, m: int) -> float:
    """Weights log^{m−1}(n)/n; m = 1 is ``log_lower_density``."""
    if m < 1:
        raise ValueError(f"m must be ≥ 1, got {m}")
    return _weighted_ratio(A, N, "log", m)


def dyadic_log_density(A: IndexFamily, N: int) -> float:
    """Σ_{2≤n≤N, n∈A} (log₂n − log₂(n−1)) / log₂N."""
    return dyadic_logm_density(A, N, 1)


def dyadic_logm_density(A: IndexFamily, N: int, m: int) -> float:
    """Σ_{2≤n≤N, n∈A} (log₂ᵐn − log₂ᵐ(n−1)) / log₂ᵐN."""
    if m < 1:
        raise ValueError(f"m must be ≥ 1, got {m}")
    if N < 2:
        return 0.0
    return _weighted_ratio(A, N, "dyadic", m, denominator=math.log2(N) ** m)


def power_weighted_density(A: IndexFamily, N: int, alpha: float) -> float:
    """Weights 1/n^α with 0 < α ≤ 1."""
    if not 0 < alpha <= 1:
        raise ValueError(f"α must lie in (0, 1], got {alpha}")
    return _weighted_ratio(A, N, "power", alpha)


def density_value(A: IndexFamily, kind: str, N: int, m: int = 1, alpha: float = 0.5) -> float:
    if kind == "lower":
        return lower_density(A, N)
    if kind == "upper":
        return upper_density(A, N)
    if kind == "log":
        return log_lower_density(A, N)
    if kind == "logm":
        return logm_lower_density(A, N, m)
    if kind == "d2":
        return dyadic_log_density(A, N)
    if kind == "d2m":
        return dyadic_logm_density(A, N, m)
    if kind == "power":
        return power_weighted_density(A, N, alpha)
    raise ValueError(f"unknown density kind: {kind}")


def density_ladder(A: IndexFamily, kind: str, ladder: Sequence[int], m: int = 1,
                   alpha: float = 0.5, threads: int = 1) -> List[DensityRow]:
    """One row per N in the ladder, in ladder order."""
    def evaluate(N: int) -> DensityRow:
        return DensityRow(A.descriptor, kind, m, int(N), density_value(A, kind, N, m, alpha))

    if threads > 1 and len(ladder) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(evaluate, ladder))
    else:
        rows = [evaluate(N) for N in ladder]
    logger.debug(f"{A.descriptor}/{kind}: {[round(r.value, 6) for r in rows]}")
    return rows


@dataclass(frozen=True)
class LadderExtremes:
    low: float
    high: float


def ladder_extremes(rows: Sequence[DensityRow]) -> Dict[Tuple[str, str, int], LadderExtremes]:
    """Min/max over the ladder per (family, kind, m): the liminf and limsup proxies."""
    grouped: Dict[Tuple[str, str, int], List[float]] = {}
    for row in rows:
        grouped.setdefault((row.family_id, row.kind, row.m), []).append(row.value)
    return {key: LadderExtremes(min(values), max(values)) for key, values in grouped.items()}
