"""Exact checks of disjointness and the gap conditions on a system of families.

Only block endpoints and steps are used. The gap conditions on a pair
n ∈ A(l,m) < n′ ∈ A(l′,m′) read
    n′ − n ≥ l                           (both conditions)
    m·n′ − m′·n ≥ m′·(l + l′)            ("charcond")
    m·n′ − m′·n ≥ m′·(m′ + l + l′)       ("charcond2")
Each is monotone in n′ and anti-monotone in n, so for a block lying wholly
below another only (last of the lower, first of the upper) matters, and inside
a single block only neighbours one step apart.
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from famgen.bignat import to_decimal
from famgen.blocks import BlockSpec
from famgen.family import FamilySpec, tower_system
from utils.logger import get_logger

logger = get_logger(__name__)

Label = Tuple[int, int]
CONDITIONS = ("charcond", "charcond2")


@dataclass
class ConditionReport:
    condition: str
    r_cap: int
    status: str = "pass"
    blocks_checked: int = 0
    pairs_checked: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def first_violation(self) -> Optional[Dict[str, Any]]:
        return self.violations[0] if self.violations else None

    def record(self, violation: Dict[str, Any]):
        if not self.violations:
            logger.warning(f"{self.condition}: first violation {violation['kind']} between "
                           f"{violation['left']} and {violation['right']}")
        self.status = "fail"
        self.violations.append(violation)

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "r_cap": self.r_cap,
            "status": self.status,
            "blocks_checked": self.blocks_checked,
            "pairs_checked": self.pairs_checked,
            "violations": self.violations,
        }


def progression_intersection(a: BlockSpec, b: BlockSpec) -> Optional[int]:
    """Smallest common element of two blocks, or None (CRT on the two progressions)."""
    if a.is_empty or b.is_empty:
        return None
    low = max(a.first, b.first)
    high = min(a.last, b.last)
    if low > high:
        return None
    g = gcd(a.step, b.step)
    if (b.start - a.start) % g:
        return None
    # x ≡ a.start (mod a.step), x ≡ b.start (mod b.step)
    step_a, step_b = a.step // g, b.step // g
    k = ((b.start - a.start) // g * pow(step_a, -1, step_b)) % step_b if step_b > 1 else 0
    lcm = a.step * step_b
    x0 = a.start + a.step * k
    candidate = low + ((x0 - low) % lcm)
    return candidate if candidate <= high else None


def gap_deficits(n: int, n_next: int, left: Label, right: Label, condition: str) -> List[Tuple[str, int, int]]:
    """(inequality, lhs, rhs) for each failed inequality on the pair n < n_next."""
    l, m = left
    l2, m2 = right
    failures = []
    if n_next - n < l:
        failures.append(("n' >= n + l", n_next, n + l))
    extra = m2 if condition == "charcond2" else 0
    if m * n_next < m2 * (n + extra + l + l2):
        failures.append(("n'*m >= m'*(n + l + l')" if not extra else "n'*m >= m'*(n + m' + l + l')",
                         m * n_next, m2 * (n + extra + l + l2)))
    return failures


def _record_pair(report: ConditionReport, n: int, n_next: int, left: Label, right: Label,
                 lower: BlockSpec, upper: BlockSpec):
    report.pairs_checked += 1
    for inequality, lhs, rhs in gap_deficits(n, n_next, left, right, report.condition):
        report.record({
            "kind": "gap",
            "inequality": inequality,
            "left": {"label": list(left), "r": lower.r},
            "right": {"label": list(right), "r": upper.r},
            "n": to_decimal(n),
            "n_prime": to_decimal(n_next),
            "lhs": to_decimal(lhs),
            "rhs": to_decimal(rhs),
        })


def family_conditions_check(specs: Union[Mapping[Label, FamilySpec], List[FamilySpec]], r_cap: int,
                            condition: str = "charcond") -> ConditionReport:
    """Disjointness plus the gap condition over every block with r ≤ r_cap.

    ``specs`` maps the label (l, m) used in the inequalities to the family that
    carries it; a plain list is labelled by each family's own (l, m).
    """
    if condition not in CONDITIONS:
        raise ValueError(f"condition must be one of {CONDITIONS}, got {condition}")
    if not isinstance(specs, Mapping):
        specs = {(spec.l, spec.m): spec for spec in specs}

    report = ConditionReport(condition, r_cap)
    labelled: List[Tuple[Label, BlockSpec]] = [
        (label, current) for label, spec in specs.items()
        for current in spec.iter_blocks(r_cap) if not current.is_empty
    ]
    labelled.sort(key=lambda item: (item[1].first, item[1].last))
    report.blocks_checked = len(labelled)
    logger.info(f"Checking {condition} on {len(specs)} families, {len(labelled)} blocks, r ≤ {r_cap}")

    for label, current in labelled:
        if current.count >= 2:
            first = current.first
            _record_pair(report, first, first + current.step, label, label, current, current)

    for (left, a), (right, b) in combinations(labelled, 2):
        common = progression_intersection(a, b)
        if common is not None:
            report.record({
                "kind": "overlap",
                "left": {"label": list(left), "r": a.r},
                "right": {"label": list(right), "r": b.r},
                "n": to_decimal(common),
            })
            continue
        if a.last < b.first:
            _record_pair(report, a.last, b.first, left, right, a, b)
        elif b.last < a.first:
            _record_pair(report, b.last, a.first, right, left, b, a)
        else:
            report.record({
                "kind": "interleaved",
                "left": {"label": list(left), "r": a.r},
                "right": {"label": list(right), "r": b.r},
            })

    if report.passed:
        logger.info(f"{condition}: all {report.pairs_checked} endpoint pairs pass")
    return report


def tower_disjointness_check(L: int, r_cap: int, c: float = None, beta: float = None) -> bool:
    """True when the scaled-tower families for (l, m) ∈ [1, L]² have no overlapping blocks."""
    report = family_conditions_check(tower_system(L, c, beta), r_cap)
    overlaps = [v for v in report.violations if v["kind"] != "gap"]
    if overlaps:
        logger.error(f"Tower blocks overlap: {overlaps[0]}")
    return not overlaps
