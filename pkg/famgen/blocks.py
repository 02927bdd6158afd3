"""Arithmetic-progression blocks B(l,r) = {start + 2l·i : 1 ≤ i ≤ count}.

For the dyadic construction start = 2^{2^r} and the block stops below
2^{2^r·3/2} = 2^{3·2^{r−1}}; the scaled tower replaces 2^r by c·β^r.
"""

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from config.settings import FAMGEN_CONFIG
from utils.errors import InvariantViolationError
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class BlockSpec:
    l: int
    r: int
    start: int
    step: int
    count: int
    upper: int
    kind: str = "dyadic"

    @property
    def is_empty(self) -> bool:
        return self.count <= 0

    @property
    def first(self) -> Optional[int]:
        return None if self.is_empty else self.start + self.step

    @property
    def last(self) -> Optional[int]:
        return None if self.is_empty else self.start + self.step * self.count

    def contains(self, n: int) -> bool:
        if self.is_empty or n <= self.start:
            return False
        offset = n - self.start
        return offset % self.step == 0 and offset // self.step <= self.count

    def element(self, i: int) -> int:
        """The i-th element, 1 ≤ i ≤ count."""
        if not 1 <= i <= self.count:
            raise IndexError(f"block B({self.l},{self.r}) has {self.count} elements, asked for {i}")
        return self.start + self.step * i

    def iter_elements(self, horizon: Optional[int] = None) -> Iterator[int]:
        if self.is_empty:
            return
        last = self.last if horizon is None else min(self.last, horizon)
        yield from range(self.first, last + 1, self.step)

    def materialize(self, horizon: Optional[int] = None) -> Tuple[int, ...]:
        if self.kind == "dyadic" and self.r > FAMGEN_CONFIG["max_materialized_r"] and horizon is None:
            raise ValueError(f"B({self.l},{self.r}) is not materialized beyond r={FAMGEN_CONFIG['max_materialized_r']}")
        size = self.count if horizon is None or self.is_empty else max(0, (min(self.last, horizon) - self.start) // self.step)
        if size > FAMGEN_CONFIG["materialize_limit"]:
            raise ValueError(f"B({self.l},{self.r}) would materialize {size} elements")
        return tuple(self.iter_elements(horizon))

    def check_invariant(self) -> bool:
        """start + step·(count+1) ≤ upper < start + step·(count+2)."""
        return self.start + self.step * (self.count + 1) <= self.upper < self.start + self.step * (self.count + 2)


def _make_block(l: int, r: int, start_exponent: int, upper_exponent: int, kind: str) -> BlockSpec:
    start = 1 << start_exponent
    upper = 1 << upper_exponent
    step = 2 * l
    N = (upper - start) // step - 1
    spec = BlockSpec(l, r, start, step, max(N, 0), upper, kind)
    # an empty block still satisfies the two-sided bound with N = −1
    if not (start + step * (N + 1) <= upper < start + step * (N + 2)):
        logger.error(f"B({l},{r}) violates its defining inequality")
        raise InvariantViolationError(f"block B({l},{r}) violates start + 2(N+1)l ≤ upper < start + 2(N+2)l",
                                      {"l": l, "r": r, "N": N})
    return spec


def block(l: int, r: int) -> BlockSpec:
    """B(l,r) of the dyadic construction, with N_{l,r} re-verified exactly."""
    if l < 1 or r < 1:
        raise ValueError(f"block needs l, r ≥ 1, got ({l}, {r})")
    return _make_block(l, r, 1 << r, 3 << (r - 1), "dyadic")


def tower_exponent(r: int, c: float, beta: float) -> int:
    return max(1, math.floor(c * beta ** r))


def tower_block(l: int, r: int, c: float = None, beta: float = None) -> BlockSpec:
    """Desk-scale block between 2^{e} and 2^{⌊3e/2⌋} with e = ⌊c·β^r⌋ (not the dyadic construction)."""
    c = FAMGEN_CONFIG["tower_c"] if c is None else c
    beta = FAMGEN_CONFIG["tower_beta"] if beta is None else beta
    if beta <= 1.5:
        raise ValueError(f"tower blocks overlap unless β > 3/2, got {beta}")
    exponent = tower_exponent(r, c, beta)
    return _make_block(l, r, exponent, (3 * exponent) // 2, "tower")
