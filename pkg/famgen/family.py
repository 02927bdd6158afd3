from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from config.settings import FAMGEN_CONFIG
from density.index_family import IndexFamily
from famgen.blocks import BlockSpec, block, tower_block
from famgen.dyadic import DyadicClassSpec
from utils.logger import get_logger

logger = get_logger(__name__)

Label = Tuple[int, int]


def r_min(l: int, m: int, limit: int = 64) -> int:
    """Smallest r with (2^{2^r}/m − l) / 2^{3·2^{r−2}} ≥ 1, decided in integers.

    For r ≥ 2 the test is 2^{2^r} − lm ≥ m·2^{3·2^{r−2}}; at r = 1 the right side
    is m·2^{3/2}, so both sides are squared.
    """
    if l < 1 or m < 1:
        raise ValueError(f"r_min needs l, m ≥ 1, got ({l}, {m})")
    lhs = 4 - l * m
    if lhs >= 0 and lhs * lhs >= 8 * m * m:
        return 1
    for r in range(2, limit + 1):
        if (1 << (1 << r)) - l * m >= m << (3 << (r - 2)):
            return r
    raise ValueError(f"r_min({l},{m}) not found below r={limit}")


@dataclass(frozen=True)
class FamilySpec:
    """A(l,m) = ⋃ B(l,r) over r ∈ I(l,m) with r ≥ r_min; blocks are produced lazily."""
    l: int
    m: int
    r_min: int
    kind: str = "dyadic"
    tower_c: float = 4.0
    tower_beta: float = 1.75

    @property
    def dyadic_class(self) -> DyadicClassSpec:
        return DyadicClassSpec(self.l, self.m)

    @property
    def rho(self) -> int:
        return self.dyadic_class.rho

    @property
    def label(self) -> str:
        prefix = "A" if self.kind == "dyadic" else "T"
        return f"{prefix}({self.l},{self.m})"

    def radii(self, r_cap: int) -> List[int]:
        """r ∈ I(l,m) with r_min ≤ r ≤ r_cap."""
        cls = self.dyadic_class
        r = cls.first_at_least(max(self.r_min, 1))
        found = []
        while r <= r_cap:
            found.append(r)
            r += cls.modulus
        return found

    def block_at(self, r: int) -> BlockSpec:
        if self.kind == "tower":
            return tower_block(self.l, r, self.tower_c, self.tower_beta)
        return block(self.l, r)

    def iter_blocks(self, r_cap: int) -> Iterator[BlockSpec]:
        for r in self.radii(r_cap):
            yield self.block_at(r)

    def blocks(self, r_cap: int) -> List[BlockSpec]:
        return list(self.iter_blocks(r_cap))


def family_spec(l: int, m: int) -> FamilySpec:
    return FamilySpec(l, m, r_min(l, m))


def dyadic_system(L: int) -> Dict[Label, FamilySpec]:
    """FamilySpec for every (l, m) ∈ [1, L]²."""
    return {(l, m): family_spec(l, m) for l in range(1, L + 1) for m in range(1, L + 1)}


def materialize_family(spec: FamilySpec, r_cap: int, horizon: Optional[int] = None) -> IndexFamily:
    """Elements of A(l,m) from blocks with r ≤ r_cap, optionally cut at ``horizon``."""
    elements: List[int] = []
    for current in spec.iter_blocks(r_cap):
        if horizon is not None and current.start >= horizon:
            break
        elements.extend(current.materialize(horizon))
        if len(elements) > FAMGEN_CONFIG["materialize_limit"]:
            raise ValueError(f"{spec.label} exceeds the materialization limit below r={r_cap}")
    if horizon is None:
        horizon = elements[-1] if elements else 0
    logger.debug(f"Materialized {spec.label}: {len(elements)} elements up to {horizon}")
    return IndexFamily(tuple(elements), horizon, spec.label)


def tower_family(l: int, m: int, c: float = None, beta: float = None, horizon: int = 1 << 20) -> IndexFamily:
    """Scaled-tower analogue of A(l,m) with every block r ∈ I(l,m) below ``horizon``."""
    spec = FamilySpec(l, m, 1, "tower",
                      FAMGEN_CONFIG["tower_c"] if c is None else c,
                      FAMGEN_CONFIG["tower_beta"] if beta is None else beta)
    r_cap = 1
    while spec.block_at(r_cap + 1).start < horizon:
        r_cap += 1
    return materialize_family(spec, r_cap, horizon)


def tower_system(L: int, c: float = None, beta: float = None) -> Dict[Label, FamilySpec]:
    c = FAMGEN_CONFIG["tower_c"] if c is None else c
    beta = FAMGEN_CONFIG["tower_beta"] if beta is None else beta
    return {(l, m): FamilySpec(l, m, 1, "tower", c, beta) for l in range(1, L + 1) for m in range(1, L + 1)}
