from typing import Any, Dict, List

from config.settings import DENSITY_CONFIG
from density.densities import density_ladder, ladder_extremes
from density.index_family import IndexFamily
from experiments.base_experiment import BaseExperiment, parse_ladder, parse_list
from famgen.dyadic import DyadicClassSpec, dyadic_class_members
from famgen.family import family_spec, materialize_family, tower_family
from utils.errors import InvalidConfigError
from utils.file_utils import read_json
from utils.logger import get_logger

logger = get_logger(__name__)

SIMPLE_SETS = {
    "naturals": IndexFamily.naturals,
    "evens": IndexFamily.evens,
    "squares": IndexFamily.squares,
    "powers-of-two": IndexFamily.powers_of_two,
}


def _options(text: str) -> Dict[str, int]:
    options = {}
    for item in text.split(","):
        if not item.strip():
            continue
        key, _, value = item.partition("=")
        try:
            options[key.strip()] = int(value)
        except ValueError:
            raise InvalidConfigError(f"set option {item!r} is not key=integer")
    return options


def parse_index_set(text: str, horizon: int) -> IndexFamily:
    """Build an index family from its CLI name.

    naturals, evens, squares, powers-of-two, digit:d=1, dyadic:l=1,m=2,
    family:l=1,m=1,rcap=4, tower:l=1,m=1 and file:path.json (a JSON list of integers).
    """
    name, _, rest = text.partition(":")
    if name in SIMPLE_SETS:
        return SIMPLE_SETS[name](horizon)
    if name == "file":
        values = read_json(rest)
        if not isinstance(values, list):
            raise InvalidConfigError(f"{rest} must hold a JSON list of integers")
        return IndexFamily.from_elements((int(v) for v in values), horizon, f"file:{rest}")
    options = _options(rest)
    try:
        if name == "digit":
            return IndexFamily.leading_digit(options.get("d", 1), horizon)
        if name == "dyadic":
            return dyadic_class_members(DyadicClassSpec(options["l"], options["m"]), horizon)
        if name == "family":
            spec = family_spec(options["l"], options["m"])
            return materialize_family(spec, options.get("rcap", 4), horizon)
        if name == "tower":
            return tower_family(options["l"], options["m"], horizon=horizon)
    except KeyError as e:
        raise InvalidConfigError(f"set {text!r} is missing option {e}")
    raise InvalidConfigError(f"unknown index set: {text!r}")


class DensityExperiment(BaseExperiment):
    """Density ladders for one index family."""
    command = "density"
    csv_columns = ["family_id", "kind", "m", "N", "value"]

    def execute(self) -> Dict[str, Any]:
        ladder = parse_ladder(self.param("ladder", DENSITY_CONFIG["ladder"]))
        if not ladder or min(ladder) < 1:
            raise InvalidConfigError(f"ladder must hold positive N values, got {ladder}")
        kinds = parse_list(self.param("kinds", "lower,upper,log"))
        unknown = [k for k in kinds if k not in DENSITY_CONFIG["kinds"]]
        if unknown:
            raise InvalidConfigError(f"unknown density kinds: {unknown}")
        m = self.param("m", 1, int)
        alpha = self.param("alpha", 0.5, float)

        A = parse_index_set(self.param("set", "evens"), max(ladder))
        self.ledger.log_action(self.command, "materialize", {"family": A.descriptor, "size": len(A)})

        rows = []
        for kind in self.track(kinds, "density kinds"):
            rows.extend(density_ladder(A, kind, ladder, m, alpha, self.threads))

        extremes = ladder_extremes(rows)
        summary = {
            "family": A.describe(),
            "extremes": {f"{kind}/m={m_}": {"low": e.low, "high": e.high}
                         for (_, kind, m_), e in sorted(extremes.items())},
        }
        status = "pass"
        for row in rows:
            if not 0.0 <= row.value <= 1.0 + 1e-12:
                logger.error(f"Density {row.kind} at N={row.N} is {row.value}, outside [0, 1]")
                status = "fail"
        return {"rows": [row.to_dict() for row in rows], "summary": summary, "status": status}
