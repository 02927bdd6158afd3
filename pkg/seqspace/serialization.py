from typing import Any, Dict

from schemas.sequence_schema import SequenceFile
from seqspace.complex_seq import ComplexSeq
from utils.errors import InvalidConfigError
from utils.file_utils import read_json, write_json
from utils.logger import get_logger

logger = get_logger(__name__)


def sequence_to_dict(x: ComplexSeq) -> Dict[str, Any]:
    return {"base": x.base, "entries": [[str(k), v.real, v.imag] for k, v in x.entries]}


def sequence_from_dict(data: Dict[str, Any]) -> ComplexSeq:
    try:
        parsed = SequenceFile(**data).validate_sequence()
    except Exception as e:
        logger.error(f"Invalid sequence document: {e}")
        raise InvalidConfigError(f"Invalid sequence document: {e}")
    return ComplexSeq(parsed.base, tuple((int(k), complex(re, im)) for k, re, im in parsed.entries))


def load_sequence(path: str) -> ComplexSeq:
    x = sequence_from_dict(read_json(path))
    logger.info(f"Loaded sequence with {len(x)} entries from {path}")
    return x


def save_sequence(x: ComplexSeq, path: str) -> str:
    return write_json(path, sequence_to_dict(x))
