from pydantic import BaseModel, Field
from typing import Any, Dict, Optional
from utils.logger import get_logger

logger = get_logger(__name__)

COMMANDS = ("density", "family", "construct", "nogo", "algebra")
FORMATS = ("json", "csv", "text")


class ExperimentConfig(BaseModel):
    """One CLI run: the command, its flat parameter map and where the report goes."""
    command: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    output: Optional[str] = None
    format: str = "json"
    seed: Optional[int] = None

    def validate_config(self):
        logger.debug(f"Validating experiment config for {self.command}")
        if self.command not in COMMANDS:
            logger.error(f"Unknown command: {self.command}")
            raise ValueError(f"Unknown command: {self.command}")
        if self.format not in FORMATS:
            logger.error(f"Unknown output format: {self.format}")
            raise ValueError(f"Unknown output format: {self.format}")
        for key, value in self.parameters.items():
            if isinstance(value, dict):
                logger.error(f"Parameter {key} is nested; parameters must be flat")
                raise ValueError(f"Parameter {key} must be a scalar or a list")
        if self.parameters.get("random") and self.seed is None:
            logger.error("Randomized suites need an explicit seed")
            raise ValueError("--seed is required whenever --random is used")
        return self

    def report_view(self) -> Dict[str, Any]:
        """The part of the config embedded in reports (the output path is not)."""
        return {"command": self.command, "parameters": dict(sorted(self.parameters.items())),
                "format": self.format, "seed": self.seed}
