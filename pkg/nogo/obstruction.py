"""Power obstructions for the Rolewicz operator λB and the differentiation operator D.

Let A = {1 ≤ n ≤ N : ‖Tⁿx‖ < ε} and let M be the least integer with
n_{k+1} − 1 ≤ M·n_k along A. If some m ≥ M and some n ≥ n₁ gave
‖Tⁿx^m − e‖ < 1 − ε^m, the first coordinate would force a lower bound on one
coordinate of x that contradicts ‖T^{n_k}x‖ < ε for the n_k just below n.
The checks below scan n₁ ≤ n < max A, where every n has such an n_k, and
report min ‖Tⁿx^m − e‖ against the floor 1 − ε^m for M ≤ m ≤ M + extra.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

from config.settings import NOGO_CONFIG
from density.growth import LinearGrowthBound, linear_growth_bound
from density.index_family import IndexFamily
from nogo.orbits import OrbitEvaluator
from nogo.report import ObstructionReport, PowerVerdict
from seqspace.complex_seq import ComplexSeq
from seqspace.shifts import ShiftSpec
from seqspace.spaces import SpaceSpec
from utils.logger import get_logger

logger = get_logger(__name__)


def _check_eps(eps: float):
    if not 0 < eps < 1:
        logger.error(f"ε={eps} outside (0, 1)")
        raise ValueError(f"ε must lie in (0, 1), got {eps}")


def small_orbit_times(op: ShiftSpec, x: ComplexSeq, eps: float, N: int,
                      space: Optional[SpaceSpec] = None) -> IndexFamily:
    """{1 ≤ n ≤ N : ‖opⁿx‖ < ε}."""
    space = space or SpaceSpec.Lp()
    evaluator = OrbitEvaluator(op, x, 1, space.exponent)
    log_eps = math.log(eps)
    vanish = evaluator.vanishes_after()
    times = [n for n in range(1, min(N, vanish - 1) + 1) if evaluator.log_norm(n) < log_eps]
    # the orbit is zero from n = vanish on
    times.extend(range(max(vanish, 1), N + 1))
    return IndexFamily.from_elements(times, N, f"A[{op.label}, eps={eps:g}]")


def _times_and_growth(op: ShiftSpec, x: ComplexSeq, eps: float, N: int,
                      space: SpaceSpec) -> Tuple[IndexFamily, Optional[LinearGrowthBound], str]:
    A = small_orbit_times(op, x, eps, N, space)
    if not len(A):
        return A, None, "no n ≤ N with a small orbit"
    growth = linear_growth_bound(A, NOGO_CONFIG["growth_cap"])
    if growth is None:
        return A, None, "small-orbit times grow faster than the cap allows"
    return A, growth, ""


def _scan_power(op: ShiftSpec, x: ComplexSeq, m: int, eps: float, window: range,
                exponent: float) -> PowerVerdict:
    evaluator = OrbitEvaluator(op, x, m, exponent)
    floor = 1.0 - eps ** m
    best, best_n = None, None
    live = range(window.start, max(window.start, min(window.stop, evaluator.vanishes_after())))
    for n in live:
        distance = evaluator.distance_to_unit(n)
        if best is None or distance < best:
            best, best_n = distance, n
    if live.stop < window.stop and (best is None or best > 1.0):
        # ‖0 − e‖ = 1 for every later n
        best, best_n = 1.0, live.stop
    verdict = "pass"
    if best is not None and best < floor - NOGO_CONFIG["slack"]:
        logger.error(f"{op.label}: ‖Tⁿx^{m} − e‖ = {best:.6g} below floor {floor:.6g} at n={best_n}")
        verdict = "fail"
    logger.debug(f"{op.label}, m={m}: min distance {best} over {len(window)} times")
    return PowerVerdict(m, best, best_n, floor, len(window), verdict)


def power_obstruction(op: ShiftSpec, x: ComplexSeq, eps: float, N: int, space: SpaceSpec,
                      extra_powers: Optional[int] = None, threads: int = 1) -> ObstructionReport:
    _check_eps(eps)
    extra = NOGO_CONFIG["extra_powers"] if extra_powers is None else extra_powers
    A, growth, reason = _times_and_growth(op, x, eps, N, space)
    report = ObstructionReport(op.label, eps, N, A, growth=growth)
    if growth is None:
        logger.warning(f"{op.label}: premise not met at ε={eps}: {reason}")
        report.status = "premise not met"
        report.reason = reason
        return report

    vanish = OrbitEvaluator(op, x, 1, space.exponent).vanishes_after()
    report.degenerate = vanish <= N
    if report.degenerate:
        logger.warning(f"{op.label}: orbit of x is zero from n={vanish} on; conclusion is vacuous")

    window = range(A.elements[0], A.elements[-1])
    powers = range(growth.successor_multiplier, growth.successor_multiplier + extra + 1)

    def scan(m: int) -> PowerVerdict:
        return _scan_power(op, x, m, eps, window, space.exponent)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            report.verdicts = list(pool.map(scan, powers))
    else:
        report.verdicts = [scan(m) for m in powers]

    if report.failures:
        report.status = "fail"
        report.reason = "distance below 1 - eps^m for a power m >= M"
    elif report.degenerate:
        report.status = "degenerate"
        report.reason = f"orbit vanishes from n={vanish}"
    logger.info(f"{op.label} obstruction at ε={eps}: |A|={len(A)}, M={report.M}, status {report.status}")
    return report


def rolewicz_power_obstruction(x: ComplexSeq, lam: complex, eps: float, N: Optional[int] = None,
                               space: Optional[SpaceSpec] = None, threads: int = 1) -> ObstructionReport:
    """Floor check ‖(λB)ⁿx^m − e₁‖ ≥ 1 − ε^m for m ≥ M on ℓ_p or c₀."""
    if abs(lam) <= 1:
        raise ValueError(f"|λ| must exceed 1, got {lam}")
    return power_obstruction(ShiftSpec.rolewicz(lam), x, eps, N or NOGO_CONFIG["scan_horizon"],
                             space or SpaceSpec.Lp(), threads=threads)


def maclane_power_obstruction(x: ComplexSeq, eps: float, N: Optional[int] = None,
                              threads: int = 1) -> ObstructionReport:
    """Floor check ‖Dⁿx^m − e₀‖₁ ≥ 1 − ε^m on Taylor coefficients."""
    return power_obstruction(ShiftSpec.maclane(), x, eps, N or NOGO_CONFIG["maclane_horizon"],
                             SpaceSpec.TaylorL1(), threads=threads)


def obstruction_m_curve(x: ComplexSeq, lam: complex, eps_values: Sequence[float], N: Optional[int] = None,
                        space: Optional[SpaceSpec] = None) -> List[Dict]:
    """M(ε) for each ε, without scanning powers."""
    op = ShiftSpec.rolewicz(lam)
    space = space or SpaceSpec.Lp()
    rows = []
    for eps in eps_values:
        _check_eps(eps)
        A, growth, reason = _times_and_growth(op, x, eps, N or NOGO_CONFIG["scan_horizon"], space)
        rows.append({"eps": eps, "times": len(A), "M": growth.successor_multiplier if growth else None,
                     "status": "ok" if growth else "premise not met", "reason": reason})
    return rows


def falling_factorial_dominates(n: int, n_k: int, m: int) -> bool:
    """(n(n−1)⋯(n−n_k+1))^m ≥ n!, in exact integers."""
    if not 0 <= n_k <= n:
        raise ValueError(f"need 0 ≤ n_k ≤ n, got n_k={n_k}, n={n}")
    return math.perm(n, n_k) ** m >= math.factorial(n)
