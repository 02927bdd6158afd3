from typing import Any, Dict

from famgen.bignat import from_decimal, to_decimal
from famgen.family import FamilySpec, r_min
from schemas.sequence_schema import FamilyDescriptor
from utils.errors import InvalidConfigError
from utils.logger import get_logger

logger = get_logger(__name__)


def family_to_descriptor(spec: FamilySpec, r_cap: int) -> Dict[str, Any]:
    """JSON-ready descriptor; every big integer is a decimal string."""
    return {
        "l": spec.l,
        "m": spec.m,
        "r_min": spec.r_min,
        "blocks": [
            {"r": b.r, "start": to_decimal(b.start), "step": b.step, "count": to_decimal(b.count)}
            for b in spec.iter_blocks(r_cap)
        ],
    }


def family_from_descriptor(data: Dict[str, Any]) -> FamilySpec:
    """Parse a descriptor and confirm its blocks match the construction."""
    try:
        parsed = FamilyDescriptor(**data).validate_family()
    except Exception as e:
        logger.error(f"Invalid family descriptor: {e}")
        raise InvalidConfigError(f"Invalid family descriptor: {e}")

    expected_r_min = r_min(parsed.l, parsed.m)
    if parsed.r_min != expected_r_min:
        raise InvalidConfigError(f"descriptor r_min {parsed.r_min} differs from computed {expected_r_min}")
    spec = FamilySpec(parsed.l, parsed.m, parsed.r_min)
    for entry in parsed.blocks:
        if not spec.dyadic_class.contains(entry.r) or entry.r < spec.r_min:
            raise InvalidConfigError(f"block r={entry.r} is not in I({spec.l},{spec.m}) above r_min")
        rebuilt = spec.block_at(entry.r)
        if (rebuilt.start, rebuilt.count) != (from_decimal(entry.start), from_decimal(entry.count)):
            raise InvalidConfigError(f"block r={entry.r} does not match B({spec.l},{entry.r})")
    logger.info(f"Loaded descriptor for {spec.label} with {len(parsed.blocks)} blocks")
    return spec
