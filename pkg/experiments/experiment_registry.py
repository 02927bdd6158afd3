import importlib
import json
import os
from typing import Any, Dict, List, Optional

from config.settings import RUNNER_CONFIG
from experiments.base_experiment import BaseExperiment
from experiments.run_ledger import RunLedger
from schemas.experiment_schema import ExperimentConfig
from utils.errors import InvalidConfigError
from utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_EXPERIMENTS = {
    "density": {"module_path": "experiments.density_experiment", "class_name": "DensityExperiment"},
    "family": {"module_path": "experiments.family_experiment", "class_name": "FamilyExperiment"},
    "construct": {"module_path": "experiments.construct_experiment", "class_name": "ConstructExperiment"},
    "nogo": {"module_path": "experiments.nogo_experiment", "class_name": "NogoExperiment"},
    "algebra": {"module_path": "experiments.algebra_experiment", "class_name": "AlgebraExperiment"},
}


class ExperimentRegistry:
    """Maps CLI commands to experiment classes listed in the registry file."""

    def __init__(self, config_file: Optional[str] = None):
        self.config_file = config_file or RUNNER_CONFIG["registry_file"]
        self.experiments: Dict[str, Dict[str, Any]] = {}
        self.load_experiments()

    def load_experiments(self):
        """Load experiment entries from JSON, falling back to the built-in table."""
        if not os.path.exists(self.config_file):
            logger.warning(f"Experiment registry not found: {self.config_file}; using built-in entries")
            self.experiments = {k: dict(v, id=k, enabled=True) for k, v in DEFAULT_EXPERIMENTS.items()}
            return
        try:
            with open(self.config_file, 'r', encoding='utf-8') as f:
                self.experiments = json.load(f)
            logger.debug(f"Loaded {len(self.experiments)} experiments from {self.config_file}")
        except json.JSONDecodeError as e:
            logger.error(f"Error loading experiment registry: {e}")
            raise InvalidConfigError(f"Malformed experiment registry {self.config_file}: {e}")

    def list_commands(self) -> List[str]:
        return sorted(k for k, v in self.experiments.items() if v.get("enabled", True))

    def get_experiment_class(self, command: str) -> type:
        entry = self.experiments.get(command)
        if entry is None or not entry.get("enabled", True):
            raise InvalidConfigError(f"No enabled experiment for command {command!r}")
        module = importlib.import_module(entry["module_path"])
        experiment_class = getattr(module, entry["class_name"])
        if not issubclass(experiment_class, BaseExperiment):
            raise InvalidConfigError(f"{entry['class_name']} is not an experiment class")
        return experiment_class

    def create(self, config: ExperimentConfig, ledger: Optional[RunLedger] = None, threads: Optional[int] = None,
               progress: bool = True) -> BaseExperiment:
        experiment_class = self.get_experiment_class(config.command)
        logger.debug(f"Routing {config.command} to {experiment_class.__name__}")
        return experiment_class(config, ledger=ledger, threads=threads, progress=progress)
