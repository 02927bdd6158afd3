from typing import Any, Dict, List
from utils.file_utils import write_json
from utils.logger import get_logger

logger = get_logger(__name__)


class RunLedger:
    """Ordered record of what a run did and what it concluded.

    Entries carry a sequence number instead of a timestamp so that identical
    runs produce identical ledgers.
    """

    def __init__(self, run_id: str = "run"):
        self.run_id = run_id
        self.actions: List[Dict[str, Any]] = []
        self.verdicts: List[Dict[str, Any]] = []

    def _next(self) -> int:
        return len(self.actions) + len(self.verdicts) + 1

    def log_action(self, command: str, action: str, metadata: Dict[str, Any] = None) -> Dict[str, Any]:
        entry = {"seq": self._next(), "run_id": self.run_id, "command": command, "action": action,
                 "metadata": metadata or {}}
        self.actions.append(entry)
        logger.debug(f"Ledger action: {command}/{action}")
        return entry

    def log_verdict(self, command: str, subject: str, status: str, metrics: Dict[str, Any] = None) -> Dict[str, Any]:
        entry = {"seq": self._next(), "run_id": self.run_id, "command": command, "subject": subject,
                 "status": status, "metrics": metrics or {}}
        self.verdicts.append(entry)
        logger.info(f"Ledger verdict: {command} {subject} -> {status}")
        return entry

    def to_dict(self) -> Dict[str, Any]:
        return {"run_id": self.run_id, "actions": self.actions, "verdicts": self.verdicts}

    def save(self, path: str) -> str:
        return write_json(path, self.to_dict())
