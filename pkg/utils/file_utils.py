import os
import json
from pathlib import Path
from typing import Any, Dict
from utils.logger import get_logger
from utils.errors import InvalidConfigError

logger = get_logger(__name__)


def read_json(path: str) -> Any:
    """Load a JSON document, turning I/O and syntax problems into config errors."""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
        logger.debug(f"Read JSON document from {path}")
        return data
    except FileNotFoundError:
        logger.error(f"File not found: {path}")
        raise InvalidConfigError(f"File not found: {path}")
    except json.JSONDecodeError as e:
        logger.error(f"Malformed JSON in {path}: {e}")
        raise InvalidConfigError(f"Malformed JSON in {path}: {e}")


def dumps_canonical(data: Any) -> str:
    """Serialize with sorted keys so identical inputs give byte-identical output."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(path: str, data: Any) -> str:
    """Write a canonical JSON document, creating parent directories."""
    parent = Path(path).parent
    if str(parent):
        os.makedirs(parent, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps_canonical(data))
    logger.info(f"Wrote {path}")
    return path


def write_text(path: str, text: str) -> str:
    parent = Path(path).parent
    if str(parent):
        os.makedirs(parent, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
    logger.info(f"Wrote {path}")
    return path


def file_summary(path: str) -> Dict[str, Any]:
    """Basic metadata used when a report references an input file."""
    p = Path(path)
    return {"name": p.name, "size": p.stat().st_size if p.exists() else None}
