import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, List, Mapping, Optional, Tuple, TypeVar, Union

from config.settings import FHC_CONFIG
from density.index_family import IndexFamily
from famgen.bignat import to_decimal
from famgen.conditions import ConditionReport, gap_deficits
from utils.errors import InvariantViolationError
from utils.logger import get_logger

logger = get_logger(__name__)

Label = Tuple[int, int]
F = TypeVar("F")


@dataclass(frozen=True)
class AdmissibleFamilySystem:
    """Pairwise disjoint index families A(l,m), (l,m) ∈ [1,L]², with their provenance."""
    L: int
    families: Dict[Label, IndexFamily] = field(default_factory=dict)
    provenance: str = "geometric-synthetic"

    @property
    def labels(self) -> List[Label]:
        return sorted(self.families)

    def merged(self) -> List[Tuple[int, Label]]:
        """Every (n, label) pair in increasing n."""
        return sorted((n, label) for label, family in self.families.items() for n in family.elements)

    @property
    def max_index(self) -> int:
        return max((family.elements[-1] for family in self.families.values() if family.elements), default=0)

    def describe(self) -> dict:
        return {
            "L": self.L,
            "provenance": self.provenance,
            "families": {f"{l},{m}": [to_decimal(n) for n in self.families[(l, m)].elements] for l, m in self.labels},
        }


def fi2_cap(l: int, m: int) -> float:
    return 1.0 / (l * 2 ** (l + m))


def fi2_sum(family: IndexFamily, m: int, lam: complex) -> float:
    """Σ_{n∈A} |λ|^{−n/m}; terms below the double range contribute 0."""
    log_modulus = math.log(abs(lam))
    return math.fsum(math.exp(-(n / m) * log_modulus) for n in family.elements)


def system_conditions_check(families: Mapping[Label, IndexFamily], condition: str = "charcond2") -> ConditionReport:
    """Exact disjointness and gap check over every ordered pair of materialized elements."""
    report = ConditionReport(condition, r_cap=0)
    merged = sorted((n, label) for label, family in families.items() for n in family.elements)
    report.blocks_checked = len(families)
    for (n, left), (n_next, right) in combinations(merged, 2):
        report.pairs_checked += 1
        if n == n_next:
            report.record({"kind": "overlap", "left": {"label": list(left)}, "right": {"label": list(right)},
                           "n": to_decimal(n)})
            continue
        for inequality, lhs, rhs in gap_deficits(n, n_next, left, right, condition):
            report.record({
                "kind": "gap", "inequality": inequality,
                "left": {"label": list(left)}, "right": {"label": list(right)},
                "n": to_decimal(n), "n_prime": to_decimal(n_next),
                "lhs": to_decimal(lhs), "rhs": to_decimal(rhs),
            })
    return report


def _default_successor(n: int, L: int) -> int:
    return L * (n + 3 * L) + 1


def _round_robin(n0: int, L: int, depth: int, successor: Callable[[int, int], int]) -> Dict[Label, List[int]]:
    cells = [(l, m) for l in range(1, L + 1) for m in range(1, L + 1)]
    assigned: Dict[Label, List[int]] = {cell: [] for cell in cells}
    n = n0
    for i in range(depth * len(cells)):
        assigned[cells[i % len(cells)]].append(n)
        n = successor(n, L)
    return assigned


def _fi2_holds(assigned: Dict[Label, List[int]], lam: complex, margin: float) -> bool:
    for (l, m), elements in assigned.items():
        family = IndexFamily(tuple(elements), elements[-1])
        if fi2_sum(family, m, lam) > fi2_cap(l, m) * (1.0 - margin):
            return False
    return True


def geometric_admissible_family(L: int, depth: int, lam: complex,
                                successor: Optional[Callable[[int, int], int]] = None,
                                n0_limit: int = 1_000_000) -> AdmissibleFamilySystem:
    """Round-robin over (l,m) ∈ [1,L]² of n_{i+1} = L(n_i + 3L) + 1, from the least n₀ meeting (fi2).

    The gap and summability conditions are re-verified exactly; a failure is an
    internal error.
    """
    if not 1 <= L <= FHC_CONFIG["max_L"]:
        raise ValueError(f"L must lie in [1, {FHC_CONFIG['max_L']}], got {L}")
    if not 1 <= depth <= FHC_CONFIG["max_depth"]:
        raise ValueError(f"depth must lie in [1, {FHC_CONFIG['max_depth']}], got {depth}")
    if abs(lam) <= 1:
        raise ValueError(f"|λ| must exceed 1, got {lam}")
    successor = successor or _default_successor
    margin = FHC_CONFIG["fi2_margin"]

    n0 = 1
    assigned = _round_robin(n0, L, depth, successor)
    while not _fi2_holds(assigned, lam, margin):
        n0 += 1
        if n0 > n0_limit:
            raise InvariantViolationError(f"no n₀ ≤ {n0_limit} satisfies the summability condition")
        assigned = _round_robin(n0, L, depth, successor)

    families = {label: IndexFamily(tuple(elements), elements[-1], f"G({label[0]},{label[1]})")
                for label, elements in assigned.items()}
    report = system_conditions_check(families, "charcond2")
    if not report.passed:
        logger.error(f"Geometric system L={L} fails its gap condition: {report.first_violation}")
        raise InvariantViolationError("geometric system violates the gap condition", report.first_violation)
    logger.info(f"Built geometric system L={L}, depth={depth}, n0={n0}, λ={lam}")
    return AdmissibleFamilySystem(L, families, "geometric-synthetic")


def reindex_shift(system: Union[AdmissibleFamilySystem, Mapping[Label, F]]):
    """(l, m) ↦ A(l+m, m), keeping the labels whose image exists.

    Accepts an AdmissibleFamilySystem or any label mapping (famgen systems included).
    """
    if isinstance(system, AdmissibleFamilySystem):
        relabelled = reindex_shift(system.families)
        return AdmissibleFamilySystem(system.L, relabelled, f"{system.provenance}+reindexed")
    return {(l, m): system[(l + m, m)] for l, m in sorted(system) if (l + m, m) in system}
