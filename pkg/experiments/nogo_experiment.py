import math
from typing import Any, Dict, List, Optional

import numpy as np

from config.settings import NOGO_CONFIG
from experiments.base_experiment import BaseExperiment, parse_complex, parse_list
from nogo.obstruction import maclane_power_obstruction, obstruction_m_curve, rolewicz_power_obstruction
from nogo.report import VERDICT_COLUMNS, ObstructionReport
from nogo.supercyclic import supercyclic_power_limit
from nogo.weights import power_obstruction_bw, weight_algebra_verdict, weight_series_classify
from seqspace.complex_seq import ComplexSeq
from seqspace.serialization import load_sequence
from seqspace.spaces import SpaceSpec
from seqspace.weights import ConstantWeights, PowerWeights
from utils.errors import InvalidConfigError
from utils.file_utils import file_summary
from utils.logger import get_logger

logger = get_logger(__name__)

OPERATORS = ("rolewicz", "maclane", "weights", "bw", "supercyclic")
SERIES_COLUMNS = ["m", "kind", "exponent", "value", "rigorous", "raabe"]
BW_COLUMNS = ["n", "coordinate", "lower_bound", "holds"]
SUPERCYCLIC_COLUMNS = ["k", "n", "premise_deviation", "power_deviation"]


def _unit_phases(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.uniform(0.1, 1.0, size) * np.exp(2j * np.pi * rng.uniform(size=size))


def _plant_bumps(rng: np.random.Generator, values: np.ndarray, eps: float) -> List[int]:
    """Inflate a few early coordinates so the small-orbit times start late."""
    count = int(rng.integers(0, 4))
    positions = sorted(int(p) for p in rng.integers(0, max(len(values) // 2, 1), count))
    for p in positions:
        values[p] *= 10.0 / eps
    return positions


def random_rolewicz_vector(rng: np.random.Generator, lam: complex, eps: float, support: int) -> ComplexSeq:
    """x(k) = c·u_k·|λ|^{−k} with ‖tail‖ < ε/2 and a few planted bumps."""
    c = eps / (2.0 * math.sqrt(support))
    k = np.arange(1, support + 1)
    values = c * _unit_phases(rng, support) * np.exp(-k * math.log(abs(lam)))
    _plant_bumps(rng, values, eps)
    return ComplexSeq.from_mapping({int(i): complex(v) for i, v in zip(k, values)})


def random_maclane_vector(rng: np.random.Generator, eps: float, support: int) -> ComplexSeq:
    """Taylor coefficients c·u_k/k! for 0 ≤ k < support, with planted bumps."""
    c = eps / (2.0 * math.e)
    k = np.arange(0, support)
    log_factorial = np.cumsum(np.log(np.maximum(k, 1)))
    values = c * _unit_phases(rng, support) * np.exp(-log_factorial)
    _plant_bumps(rng, values, eps)
    return ComplexSeq.from_mapping({int(i): complex(v) for i, v in zip(k, values)}, 0)


def aggregate_status(reports: List[ObstructionReport]) -> str:
    statuses = [r.status for r in reports]
    if "fail" in statuses:
        return "fail"
    if all(s == "premise not met" for s in statuses):
        return "premise not met"
    if all(s in ("degenerate", "premise not met") for s in statuses):
        return "degenerate"
    return "pass"


class NogoExperiment(BaseExperiment):
    """Obstruction checks: power floors, weight series, B_w bounds and supercyclic limits."""
    command = "nogo"
    csv_columns = VERDICT_COLUMNS

    def _space(self) -> SpaceSpec:
        kind = self.param("space", "lp")
        if kind == "c0":
            return SpaceSpec.C0()
        if kind == "lp":
            return SpaceSpec.Lp(self.param("p", 2.0, float))
        raise InvalidConfigError(f"space must be lp or c0, got {kind}")

    def _vector(self) -> Optional[ComplexSeq]:
        path = self.param("vector")
        if path is None:
            return None
        x = load_sequence(path)
        self.ledger.log_action(self.command, "load-vector", file_summary(path))
        return x

    def _obstructions(self, op: str, eps: float) -> Dict[str, Any]:
        lam = self.param("lambda", 2, parse_complex)
        x = self._vector()
        count = self.param("random", 0, int)
        if x is None and not count:
            raise InvalidConfigError(f"--op {op} needs --vector or --random with --seed")

        if op == "rolewicz":
            N = self.param("N", NOGO_CONFIG["scan_horizon"], int)
            space = self._space()

            def check(vector: ComplexSeq) -> ObstructionReport:
                return rolewicz_power_obstruction(vector, lam, eps, N, space, self.threads)
        else:
            N = self.param("N", NOGO_CONFIG["maclane_horizon"], int)

            def check(vector: ComplexSeq) -> ObstructionReport:
                return maclane_power_obstruction(vector, eps, N, self.threads)

        vectors = [("x", x)] if x is not None else []
        if count:
            rng = np.random.default_rng(self.config.seed)
            support = self.param("support", 600 if op == "rolewicz" else 120, int)
            for i in range(count):
                if op == "rolewicz":
                    vectors.append((f"random#{i}", random_rolewicz_vector(rng, lam, eps, support)))
                else:
                    vectors.append((f"random#{i}", random_maclane_vector(rng, eps, support)))

        reports, rows = [], []
        for name, vector in self.track(vectors, f"{op} vectors"):
            report = check(vector)
            reports.append(report)
            self.ledger.log_verdict(self.command, name, report.status, {"M": report.M, "times": len(report.A)})
            for row in report.verdict_rows():
                rows.append(dict(row, operator_id=f"{row['operator_id']}#{name}" if count else row["operator_id"]))

        summary: Dict[str, Any] = {"operator": op, "eps": eps, "N": N, "vectors": len(vectors),
                                   "statuses": {name: r.status for (name, _), r in zip(vectors, reports)}}
        if len(reports) == 1:
            summary["report"] = reports[0].to_dict()
        curve = parse_list(self.param("eps_curve"), float)
        if curve and op == "rolewicz" and x is not None:
            summary["m_curve"] = obstruction_m_curve(x, lam, curve, N, self._space())
        return {"rows": rows, "summary": summary, "status": aggregate_status(reports)}

    def _weights(self):
        if self.param("alpha") is not None:
            return PowerWeights(self.param("alpha", cast=float))
        return ConstantWeights(self.param("lambda", 2, parse_complex))

    def _weight_series(self) -> Dict[str, Any]:
        self.csv_columns = SERIES_COLUMNS
        w = self._weights()
        p = self.param("p", 2.0, float)
        m_max = self.param("m_max", 6, int)
        rows = []
        for m in range(1, m_max + 1):
            series = weight_series_classify(w, p, m).to_dict()
            rows.append({key: series[key] for key in SERIES_COLUMNS})
        verdict = weight_algebra_verdict(w, p, m_max)
        return {"rows": rows, "summary": {"weights": w.describe(), "p": p, "verdict": verdict}, "status": "pass"}

    def _bw(self, eps: float) -> Dict[str, Any]:
        self.csv_columns = BW_COLUMNS
        x = self._vector()
        if x is None:
            raise InvalidConfigError("--op bw needs --vector")
        report = power_obstruction_bw(x, self._weights(), self.param("p", 2.0, float), self.param("m", 1, int),
                                      self.param("N", NOGO_CONFIG["scan_horizon"], int), eps)
        summary = report.to_dict()
        rows = summary.pop("rows")
        status = {"empty": "premise not met", "pass": "pass", "fail": "fail"}[report.status]
        return {"rows": rows, "summary": summary, "status": status}

    def _supercyclic(self) -> Dict[str, Any]:
        """Scaled approximants x(3k+1) = 2^{−k²}λ^{−3k}, α_k = 2^{k²}, towards z = e₁."""
        self.csv_columns = SUPERCYCLIC_COLUMNS
        lam = self.param("lambda", 2, parse_complex)
        terms = self.param("terms", 10, int)
        m = self.param("m", 2, int)
        tolerance = self.param("tolerance", 1e-6, float)
        if terms < 1:
            raise InvalidConfigError(f"terms must be ≥ 1, got {terms}")
        x = ComplexSeq.from_mapping({3 * k + 1: 2.0 ** -(k * k) * complex(lam) ** (-3 * k)
                                     for k in range(1, terms + 1)})
        approximants = [(2.0 ** (k * k), 3 * k) for k in range(1, terms + 1)]
        report = supercyclic_power_limit(x, lam, ComplexSeq.unit(1), approximants, m, tolerance, self._space())
        rows = [{"k": k, "n": n, "premise_deviation": a, "power_deviation": b}
                for k, ((_, n), a, b) in enumerate(zip(approximants, report.premise_deviations,
                                                       report.power_deviations), start=1)]
        return {"rows": rows, "summary": report.to_dict(), "status": "pass" if report.converged else "fail"}

    def execute(self) -> Dict[str, Any]:
        op = self.param("op", "rolewicz")
        if op not in OPERATORS:
            raise InvalidConfigError(f"op must be one of {OPERATORS}, got {op}")
        eps = self.param("eps", 0.1, float)
        if op in ("rolewicz", "maclane"):
            return self._obstructions(op, eps)
        if op == "weights":
            return self._weight_series()
        if op == "bw":
            return self._bw(eps)
        return self._supercyclic()
