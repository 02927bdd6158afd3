from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from density.growth import LinearGrowthBound
from density.index_family import IndexFamily

VERDICT_COLUMNS = ["operator_id", "eps", "M", "m", "min_distance", "floor", "verdict"]


@dataclass(frozen=True)
class PowerVerdict:
    """min over scanned n of ‖Tⁿx^m − e‖ against the floor 1 − ε^m."""
    m: int
    min_distance: Optional[float]
    argmin_n: Optional[int]
    floor: float
    scanned: int
    verdict: str

    def to_dict(self) -> dict:
        return {"m": self.m, "min_distance": self.min_distance, "argmin_n": self.argmin_n,
                "floor": self.floor, "scanned": self.scanned, "verdict": self.verdict}


@dataclass
class ObstructionReport:
    operator_id: str
    eps: float
    horizon: int
    A: IndexFamily
    status: str = "pass"
    growth: Optional[LinearGrowthBound] = None
    degenerate: bool = False
    reason: str = ""
    verdicts: List[PowerVerdict] = field(default_factory=list)

    @property
    def M(self) -> Optional[int]:
        return self.growth.successor_multiplier if self.growth else None

    @property
    def premise_met(self) -> bool:
        return self.status != "premise not met"

    @property
    def failures(self) -> List[PowerVerdict]:
        return [v for v in self.verdicts if v.verdict == "fail"]

    def verdict_rows(self) -> List[Dict[str, Any]]:
        """Flat rows for the CSV report; a single row when the premise fails."""
        if not self.premise_met:
            return [{"operator_id": self.operator_id, "eps": self.eps, "M": None, "m": None,
                     "min_distance": None, "floor": None, "verdict": "premise-not-met"}]
        return [{"operator_id": self.operator_id, "eps": self.eps, "M": self.M, "m": v.m,
                 "min_distance": v.min_distance, "floor": v.floor, "verdict": v.verdict}
                for v in self.verdicts]

    def to_dict(self) -> dict:
        return {
            "operator_id": self.operator_id,
            "eps": self.eps,
            "horizon": self.horizon,
            "status": self.status,
            "reason": self.reason,
            "degenerate": self.degenerate,
            "times": {"count": len(self.A), "first": self.A.elements[0] if len(self.A) else None,
                      "last": self.A.elements[-1] if len(self.A) else None},
            "M": self.M,
            "growth_M": self.growth.M if self.growth else None,
            "verdicts": [v.to_dict() for v in self.verdicts],
        }
