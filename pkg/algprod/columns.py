"""Column schedules for the matrix Λ = (λ_{k,r}).

Every schedule maps r ≥ 1 to a finite column of sup-norm at most 1 and can
list the later indices r′ ≥ r carrying the same column, which is all the
independence argument needs from the recurrence requirement.
"""

import math
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import count, islice
from typing import Iterator, Optional, Sequence, Tuple

from utils.logger import get_logger

logger = get_logger(__name__)

Column = Tuple[complex, ...]


def _check_column(column: Sequence[complex]) -> Column:
    column = tuple(complex(v) for v in column)
    if any(abs(v) > 1 + 1e-15 for v in column):
        raise ValueError(f"column entries must have modulus ≤ 1, got {column}")
    return column


class ColumnSchedule:
    kind = "abstract"

    def column(self, r: int) -> Column:
        raise NotImplementedError

    def recurrences(self, r: int) -> Iterator[int]:
        """r and every later index with the same column, increasing."""
        raise NotImplementedError

    def describe(self) -> dict:
        return {"kind": self.kind}


@dataclass(frozen=True)
class ConstantColumns(ColumnSchedule):
    value: Column = (1 + 0j,)
    kind = "constant"

    def __post_init__(self):
        object.__setattr__(self, "value", _check_column(self.value))

    def column(self, r: int) -> Column:
        return self.value

    def recurrences(self, r: int) -> Iterator[int]:
        return count(r)

    def describe(self) -> dict:
        return {"kind": self.kind, "column": [[v.real, v.imag] for v in self.value]}


@dataclass(frozen=True)
class CyclicColumns(ColumnSchedule):
    """Columns repeated with period len(columns)."""
    columns: Tuple[Column, ...] = ((1 + 0j,),)
    kind = "cyclic"

    def __post_init__(self):
        if not self.columns:
            raise ValueError("cyclic schedule needs at least one column")
        object.__setattr__(self, "columns", tuple(_check_column(c) for c in self.columns))

    def column(self, r: int) -> Column:
        return self.columns[(r - 1) % len(self.columns)]

    def recurrences(self, r: int) -> Iterator[int]:
        return count(r, len(self.columns))

    def describe(self) -> dict:
        return {"kind": self.kind, "columns": [[[v.real, v.imag] for v in c] for c in self.columns]}


@lru_cache(maxsize=None)
def _grid(d: int) -> Tuple[complex, ...]:
    """Gaussian rationals (a + bi)/d in the closed unit disc, in (a, b) order."""
    return tuple(complex(a, b) / d for a in range(-d, d + 1) for b in range(-d, d + 1) if a * a + b * b <= d * d)


class DenseColumnEnumeration(ColumnSchedule):
    """E lists, level by level, all columns of length s ≤ d with entries in the level-d grid.

    Λ runs through E in round-robin diagonals: block t (t = 0, 1, …) lists
    E_0, …, E_t, so E_i sits at r = t(t+1)/2 + i + 1 for every t ≥ i. With
    ``max_denominator`` set, E stops after that level and the blocks saturate.
    """
    kind = "dense"

    def __init__(self, max_denominator: Optional[int] = None):
        if max_denominator is not None and max_denominator < 1:
            raise ValueError("max_denominator must be ≥ 1")
        self.max_denominator = max_denominator
        self._starts = [0]
        self._groups = []

    def _extend_to(self, index: int) -> bool:
        """Grow the group table until it covers E_index; False when E is finite and too short."""
        while self._starts[-1] <= index:
            d = self._groups[-1][0] + 1 if self._groups else 1
            if self.max_denominator is not None and d > self.max_denominator:
                return False
            size = len(_grid(d))
            for s in range(1, d + 1):
                self._groups.append((d, s))
                self._starts.append(self._starts[-1] + size ** s)
        return True

    @cached_property
    def size(self) -> Optional[int]:
        if self.max_denominator is None:
            return None
        return sum(len(_grid(d)) ** s for d in range(1, self.max_denominator + 1) for s in range(1, d + 1))

    def element(self, index: int) -> Column:
        """E_index."""
        if index < 0 or not self._extend_to(index):
            raise IndexError(f"E has no element {index}")
        group = bisect_right(self._starts, index) - 1
        d, s = self._groups[group]
        local = index - self._starts[group]
        grid = _grid(d)
        values = []
        for _ in range(s):
            local, digit = divmod(local, len(grid))
            values.append(grid[digit])
        return tuple(values)

    def _position(self, r: int) -> Tuple[int, int]:
        """(block t, element index i) of column r."""
        t = (math.isqrt(8 * (r - 1) + 1) - 1) // 2
        i = r - 1 - t * (t + 1) // 2
        size = self.size
        if size is not None and i >= size:
            i = i % size
        return t, i

    def column(self, r: int) -> Column:
        if r < 1:
            raise ValueError(f"columns are indexed from 1, got {r}")
        return self.element(self._position(r)[1])

    def recurrences(self, r: int) -> Iterator[int]:
        _, i = self._position(r)
        for t in count(0):
            for candidate in self._block_positions(t, i):
                if candidate >= r:
                    yield candidate

    def _block_positions(self, t: int, i: int) -> Iterator[int]:
        start = t * (t + 1) // 2 + 1
        size = self.size
        if size is None:
            if i <= t:
                yield start + i
            return
        yield from (start + j for j in range(t + 1) if j % size == i)

    def first_index_of(self, column: Sequence[complex], limit: int = 100000) -> Optional[int]:
        """Least i < limit with E_i equal to ``column``."""
        target = tuple(complex(v) for v in column)
        for i in islice(count(0), limit):
            try:
                if self.element(i) == target:
                    return i
            except IndexError:
                return None
        return None

    def describe(self) -> dict:
        return {"kind": self.kind, "max_denominator": self.max_denominator}
