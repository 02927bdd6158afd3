from typing import Any, Dict

from experiments.base_experiment import BaseExperiment
from famgen.bounds import density_limit, density_lower_bound
from famgen.conditions import CONDITIONS, family_conditions_check, tower_disjointness_check
from famgen.descriptor import family_to_descriptor
from famgen.family import dyadic_system, tower_system
from fhcbuild.admissible import reindex_shift
from utils.errors import InvalidConfigError
from utils.logger import get_logger

logger = get_logger(__name__)


class FamilyExperiment(BaseExperiment):
    """Certify the dyadic (or tower) family system on [1, L]² up to r_cap."""
    command = "family"
    csv_columns = ["label", "l", "m", "r_min", "rho", "blocks", "invariants_hold", "density_limit",
                   "density_bound"]

    def execute(self) -> Dict[str, Any]:
        L = self.param("L", 3, int)
        r_cap = self.param("rcap", 6, int)
        condition = self.param("check", "charcond")
        kind = self.param("kind", "dyadic")
        if L < 1 or r_cap < 1:
            raise InvalidConfigError(f"L and rcap must be ≥ 1, got L={L}, rcap={r_cap}")
        if condition not in CONDITIONS:
            raise InvalidConfigError(f"check must be one of {CONDITIONS}, got {condition}")
        if kind not in ("dyadic", "tower"):
            raise InvalidConfigError(f"kind must be dyadic or tower, got {kind}")

        system = dyadic_system(L) if kind == "dyadic" else tower_system(L)
        checked = system
        if self.param("reindex", False):
            checked = reindex_shift(system)
            self.ledger.log_action(self.command, "reindex", {"labels": [list(k) for k in sorted(checked)]})

        rows = []
        for (l, m), spec in self.track(sorted(system.items()), "families"):
            blocks = spec.blocks(r_cap)
            bound = None
            if kind == "dyadic" and r_cap - spec.rho >= 1:
                bound = density_lower_bound(l, m, r_cap)
            rows.append({
                "label": spec.label, "l": l, "m": m, "r_min": spec.r_min, "rho": spec.rho,
                "blocks": len(blocks),
                "invariants_hold": all(b.check_invariant() for b in blocks),
                "density_limit": density_limit(l, m) if kind == "dyadic" else None,
                "density_bound": bound,
            })

        report = family_conditions_check(checked, r_cap, condition)
        self.ledger.log_verdict(self.command, condition, report.status,
                                {"pairs": report.pairs_checked, "blocks": report.blocks_checked})
        summary: Dict[str, Any] = {"L": L, "rcap": r_cap, "kind": kind, "conditions": report.to_dict()}
        if kind == "tower":
            summary["tower_disjoint"] = tower_disjointness_check(L, r_cap)
        if self.param("descriptors", False) and kind == "dyadic":
            summary["descriptors"] = [family_to_descriptor(spec, r_cap) for _, spec in sorted(system.items())]

        invariants = all(row["invariants_hold"] for row in rows)
        if not invariants:
            logger.error("A block violates its two-sided size invariant")
        certified = report.passed if kind == "dyadic" else summary["tower_disjoint"]
        status = "pass" if certified and invariants else "fail"
        return {"rows": rows, "summary": summary, "status": status}
