import math
import platform
import sys
from typing import Any, Callable, Dict, Iterable, List, Optional

import numpy as np
import pydantic
import scipy
from tqdm import tqdm

from config.settings import RUNNER_CONFIG
from experiments.run_ledger import RunLedger
from schemas.experiment_schema import ExperimentConfig
from seqspace import __version__
from utils.errors import HyperdynError
from utils.logger import get_logger

logger = get_logger(__name__)

STATUS_EXIT_CODES = {"pass": 0, "degenerate": 0, "premise not met": 2, "fail": 3}


def versions() -> Dict[str, str]:
    return {"hyperdyn": __version__, "numpy": np.__version__, "scipy": scipy.__version__,
            "pydantic": str(pydantic.VERSION), "python": platform.python_version()}


def _clean(value: Any) -> Any:
    """Make a report JSON-safe: non-finite floats become strings, tuples lists."""
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, np.generic):
        return _clean(value.item())
    return value


def parse_ladder(value: Any) -> List[int]:
    """"1e3..1e6" (decades), "1000,5000" or a list."""
    if isinstance(value, (list, tuple)):
        return [int(float(v)) for v in value]
    text = str(value)
    if ".." in text:
        low, high = (int(float(part)) for part in text.split(".."))
        ladder = []
        N = low
        while N <= high:
            ladder.append(N)
            N *= 10
        return ladder
    return [int(float(part)) for part in text.split(",") if part.strip()]


def parse_complex(value: Any) -> complex:
    if isinstance(value, (int, float, complex)):
        return complex(value)
    return complex(str(value).replace(" ", "").replace("i", "j"))


def parse_list(value: Any, cast: Callable = str) -> List[Any]:
    if value is None:
        return []
    if isinstance(value, (list, tuple)):
        return [cast(v) for v in value]
    return [cast(part.strip()) for part in str(value).split(",") if part.strip()]


class BaseExperiment:
    """One CLI command: validated parameters in, report rows and a status out."""
    command = "abstract"
    csv_columns: List[str] = []

    def __init__(self, config: ExperimentConfig, ledger: Optional[RunLedger] = None,
                 threads: Optional[int] = None, progress: bool = True):
        self.config = config
        self.ledger = ledger or RunLedger()
        self.threads = threads or RUNNER_CONFIG["threads"]
        self.progress = progress and sys.stderr.isatty()

    def param(self, key: str, default: Any = None, cast: Callable = None) -> Any:
        value = self.config.parameters.get(key, default)
        if value is None or cast is None:
            return value
        try:
            return cast(value)
        except (TypeError, ValueError) as e:
            raise ValueError(f"parameter {key}={value!r} is invalid: {e}")

    def track(self, items: Iterable, desc: str, total: int = None):
        return tqdm(items, desc=desc, total=total, disable=not self.progress, leave=False)

    def execute(self) -> Dict[str, Any]:
        """Return {"rows": [...], "summary": {...}, "status": ...}."""
        raise NotImplementedError

    def run(self) -> Dict[str, Any]:
        logger.info(f"Starting {self.command} experiment")
        self.ledger.log_action(self.command, "start", {"parameters": self.config.parameters})
        try:
            result = self.execute()
            result["exit_code"] = STATUS_EXIT_CODES.get(result["status"], 3)
        except HyperdynError as e:
            logger.error(f"{self.command} failed: {e.message}")
            result = {"status": "error", "error": e.message, "details": e.details, "exit_code": e.exit_code}
        except ValueError as e:
            logger.error(f"{self.command}: invalid parameters: {e}")
            result = {"status": "error", "error": str(e), "exit_code": 1}
        except AssertionError as e:
            logger.error(f"{self.command}: assertion failed: {e}")
            result = {"status": "error", "error": str(e), "exit_code": 3}
        self.ledger.log_verdict(self.command, "run", result["status"], {"exit_code": result["exit_code"]})
        logger.info(f"Finished {self.command} experiment with status {result['status']}")
        return result

    def report(self, result: Dict[str, Any]) -> Dict[str, Any]:
        body = {
            "config": self.config.report_view(),
            "versions": versions(),
            "status": result["status"],
            "rows": result.get("rows", []),
            "summary": result.get("summary", {}),
        }
        if "error" in result:
            body["error"] = result["error"]
            body["details"] = result.get("details", {})
        return _clean(body)
