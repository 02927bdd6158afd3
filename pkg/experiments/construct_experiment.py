from typing import Any, Dict

import numpy as np

from config.settings import FHC_CONFIG
from experiments.base_experiment import BaseExperiment, parse_complex
from fhcbuild.admissible import geometric_admissible_family
from fhcbuild.construction import build_vector, orbit_error_table, scaled_orbit_error
from fhcbuild.constants import constant_Cm
from fhcbuild.necessity import condfi_status, default_epsilon
from fhcbuild.test_sequences import DenseTestSequence
from fhcbuild.transfer import power_combo_transfer, transfer_correction_profile
from seqspace.complex_seq import ComplexSeq
from seqspace.shifts import ShiftSpec
from seqspace.spaces import SpaceSpec
from utils.errors import InvalidConfigError
from utils.logger import get_logger

logger = get_logger(__name__)


def _space(kind: str, p: float) -> SpaceSpec:
    if kind == "c0":
        return SpaceSpec.C0()
    if kind == "lp":
        return SpaceSpec.Lp(p)
    raise InvalidConfigError(f"space must be lp or c0, got {kind}")


def random_transfer_suite(rng: np.random.Generator, count: int, lam: complex, tolerance: float = 1e-12) -> Dict[str, Any]:
    """Transfer identity on random finite x₀ with random coefficient tails and n ≤ 10."""
    worst = 0.0
    zero_past_support = True
    for _ in range(count):
        support = int(rng.integers(1, 5))
        x0 = ComplexSeq.from_values(list(rng.normal(size=support) + 1j * rng.normal(size=support)))
        m = int(rng.integers(1, 4))
        alphas = list(rng.normal(size=int(rng.integers(2, 5))) + 1j * rng.normal(size=1))
        if alphas[0] == 0:
            alphas[0] = 1.0
        n = int(rng.integers(0, 11))
        result = power_combo_transfer(x0, alphas, m, ShiftSpec.rolewicz(lam), n)
        worst = max(worst, result.relative_residual)
        tail = transfer_correction_profile(x0, alphas, m, [support, support + 1])
        zero_past_support = zero_past_support and all(v == 0 for v in tail)
    if worst > tolerance:
        logger.error(f"Transfer identity residual {worst:.3e} exceeds {tolerance}")
    return {"cases": count, "max_relative_residual": worst, "correction_zero_past_support": zero_past_support,
            "passed": worst <= tolerance and zero_past_support}


class ConstructExperiment(BaseExperiment):
    """Build x over a geometric admissible system and certify its orbit errors."""
    command = "construct"
    csv_columns = ["m_prime", "l_prime", "n_prime", "error", "bound", "certified"]

    def execute(self) -> Dict[str, Any]:
        L = self.param("L", 2, int)
        depth = self.param("depth", FHC_CONFIG["depth"], int)
        lam = self.param("lambda", 2, parse_complex)
        horizon = self.param("horizon", FHC_CONFIG["horizon"], int)
        offset = self.param("offset", 0, int)
        space = _space(self.param("space", "lp"), self.param("p", 2.0, float))
        if abs(lam) <= 1:
            raise InvalidConfigError(f"|lambda| must exceed 1, got {lam}")

        system = geometric_admissible_family(L, depth, lam)
        self.ledger.log_action(self.command, "system", {"L": L, "depth": depth, "max_index": system.max_index})
        cv = build_vector(system, DenseTestSequence(space, offset), lam, horizon)
        table = orbit_error_table(cv, self.threads)

        alpha = self.param("alpha", None, parse_complex)
        homogeneity = []
        if alpha is not None and cv.placements:
            for n, (l, m) in cv.placements[:L * L]:
                scaled, expected = scaled_orbit_error(cv, alpha, m, l, n)
                homogeneity.append({"n": n, "l": l, "m": m, "scaled": scaled, "expected": expected})

        eps = self.param("eps", default_epsilon(lam), float)
        condfi = [dict(condfi_status(l, m, n, lam, eps), l=l, m=m, n=n) for n, (l, m) in cv.placements]

        summary: Dict[str, Any] = {
            "system": system.describe(),
            "norm": cv.norm(),
            "placements": len(cv.placements),
            "omitted": len(cv.omitted),
            "tail_bound": cv.tail_bound,
            "constants": {str(m): constant_Cm(lam, m) for m in range(1, L + 1)},
            "certified": sum(1 for e in table if e.certified),
            "homogeneity": homogeneity,
            "condfi": condfi,
        }
        status = "pass"
        for row in homogeneity:
            if abs(row["scaled"] - row["expected"]) > 1e-9 * max(1.0, row["expected"]):
                logger.error(f"Scaled orbit error breaks homogeneity at n={row['n']}")
                status = "fail"

        suite = self.param("random", 0, int)
        if suite:
            rng = np.random.default_rng(self.config.seed)
            summary["transfer"] = random_transfer_suite(rng, suite, lam)
            if not summary["transfer"]["passed"]:
                status = "fail"
        return {"rows": [e.to_dict() for e in table], "summary": summary, "status": status}
