"""Deterministic dense sequence (y_l) of finite Gaussian-rational vectors.

Level d lists every vector of length s ≤ d whose coordinates are (a + bi)/d
with |a|, |b| ≤ d²; vectors are ranked in mixed radix, levels and lengths in
increasing order. y_l is the entry of rank l − 1 + offset, truncated to its
first l coordinates and rescaled onto the ball of radius l when needed, so
‖y_l‖ ≤ l and s_l ≤ l always hold.
"""

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Tuple

from seqspace.complex_seq import ComplexSeq
from seqspace.spaces import SpaceSpec, norm
from utils.logger import get_logger

logger = get_logger(__name__)


def _alphabet(d: int) -> int:
    side = 2 * d * d + 1
    return side * side


def _decode_digit(digit: int, d: int) -> complex:
    side = 2 * d * d + 1
    a, b = divmod(digit, side)
    return complex(a - d * d, b - d * d) / d


@dataclass(frozen=True)
class DenseTestSequence:
    space: SpaceSpec = field(default_factory=SpaceSpec.Lp)
    offset: int = 0

    @staticmethod
    @lru_cache(maxsize=None)
    def _level_starts(levels: int) -> Tuple[int, ...]:
        """Cumulative rank at which each (d, s) group starts, d ≤ levels."""
        starts = [0]
        for d in range(1, levels + 1):
            q = _alphabet(d)
            for s in range(1, d + 1):
                starts.append(starts[-1] + q ** s)
        return tuple(starts)

    @staticmethod
    def _groups(levels: int) -> List[Tuple[int, int]]:
        return [(d, s) for d in range(1, levels + 1) for s in range(1, d + 1)]

    def _levels_for_rank(self, rank: int) -> int:
        levels = 1
        while self._level_starts(levels)[-1] <= rank:
            levels += 1
        return levels

    def unrank(self, rank: int) -> ComplexSeq:
        """Raw enumeration entry (before truncation and rescaling)."""
        if rank < 0:
            raise ValueError(f"rank must be ≥ 0, got {rank}")
        levels = self._levels_for_rank(rank)
        starts = self._level_starts(levels)
        group = bisect_right(starts, rank) - 1
        d, s = self._groups(levels)[group]
        local = rank - starts[group]
        q = _alphabet(d)
        values = []
        for _ in range(s):
            local, digit = divmod(local, q)
            values.append(_decode_digit(digit, d))
        return ComplexSeq.from_values(values)

    def rank_of(self, values: List[complex], d: int) -> int:
        """Inverse of ``unrank`` for a vector already on the level-d grid."""
        s = len(values)
        if not 1 <= s <= d:
            raise ValueError(f"level {d} holds lengths 1..{d}, got {s}")
        side = 2 * d * d + 1
        q = side * side
        local = 0
        for value in reversed(values):
            a = round(value.real * d) + d * d
            b = round(value.imag * d) + d * d
            if not (0 <= a < side and 0 <= b < side):
                raise ValueError(f"{value} is outside the level-{d} grid")
            local = local * q + a * side + b
        starts = self._level_starts(d)
        return starts[self._groups(d).index((d, s))] + local

    def term(self, l: int) -> ComplexSeq:
        """y_l for l ≥ 1."""
        if l < 1:
            raise ValueError(f"test sequence is indexed from 1, got {l}")
        raw = self.unrank(l - 1 + self.offset).restrict(1, l)
        size = norm(raw, self.space)
        if size > l:
            raw = raw.scale(l / size)
        return raw

    __call__ = term

    def nearest_index(self, z: ComplexSeq, eps: float, max_level: int = 12) -> int:
        """Some l with ‖y_l − z‖ < ε, found by rounding z onto successive grids."""
        if eps <= 0:
            raise ValueError("ε must be positive")
        support = max(z.top_index or 1, 1)
        dense = [z.get(k) for k in range(1, support + 1)]
        for d in range(max(support, 1), max_level + 1):
            grid = [complex(round(v.real * d), round(v.imag * d)) / d for v in dense]
            if any(abs(g.real) > d or abs(g.imag) > d for g in grid):
                continue
            rank = self.rank_of(grid, d)
            if rank < self.offset:
                continue
            l = rank - self.offset + 1
            if norm(self.term(l) - z, self.space) < eps:
                logger.debug(f"Test vector y_{l} (level {d}) approximates the target within {eps}")
                return l
        raise ValueError(f"no test vector within {eps} below level {max_level}")

    def index_bound(self, K: float, support: int, eps: float) -> int:
        """l_max(K, ε): ``nearest_index`` returns at most this for ‖z‖ ≤ K on ``support`` coordinates."""
        if eps <= 0:
            raise ValueError("ε must be positive")
        reach = support ** (1.0 / self.space.exponent) if math.isfinite(self.space.exponent) else 1.0
        d = max(support, math.ceil(K), math.floor(reach / (math.sqrt(2.0) * eps)) + 1, 1)
        return self._level_starts(d)[-1] - self.offset
