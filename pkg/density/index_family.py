from bisect import bisect_right
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional, Tuple

import numpy as np

from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class IndexFamily:
    """A strictly increasing set of naturals, materialized up to ``horizon``.

    ``descriptor`` names the generator (``"evens"``, ``"A(1,2)"``, ...) so reports
    can identify the family without dumping its elements.
    """
    elements: Tuple[int, ...]
    horizon: int
    descriptor: str = "explicit"

    def __post_init__(self):
        elements = tuple(int(n) for n in self.elements)
        for previous, current in zip(elements, elements[1:]):
            if current <= previous:
                raise ValueError(f"{self.descriptor}: elements must be strictly increasing ({previous}, {current})")
        if elements and elements[0] < 0:
            raise ValueError(f"{self.descriptor}: elements must be naturals")
        if elements and elements[-1] > self.horizon:
            raise ValueError(f"{self.descriptor}: element {elements[-1]} beyond horizon {self.horizon}")
        object.__setattr__(self, "elements", elements)

    @classmethod
    def from_elements(cls, elements: Iterable[int], horizon: Optional[int] = None,
                      descriptor: str = "explicit") -> "IndexFamily":
        values = tuple(sorted(set(int(n) for n in elements)))
        if horizon is None:
            horizon = values[-1] if values else 0
        return cls(tuple(n for n in values if n <= horizon), horizon, descriptor)

    @classmethod
    def from_predicate(cls, predicate: Callable[[np.ndarray], np.ndarray], horizon: int,
                       descriptor: str, start: int = 0) -> "IndexFamily":
        """Materialize {start ≤ n ≤ horizon : predicate(n)} with a vectorized predicate."""
        candidates = np.arange(start, horizon + 1, dtype=np.int64)
        selected = candidates[predicate(candidates)]
        logger.debug(f"Materialized {descriptor} up to {horizon}: {selected.size} elements")
        return cls(tuple(int(n) for n in selected), horizon, descriptor)

    # common families

    @classmethod
    def empty(cls, horizon: int = 0) -> "IndexFamily":
        return cls((), horizon, "empty")

    @classmethod
    def naturals(cls, horizon: int, start: int = 1) -> "IndexFamily":
        return cls(tuple(range(start, horizon + 1)), horizon, "naturals")

    @classmethod
    def evens(cls, horizon: int, start: int = 2) -> "IndexFamily":
        return cls(tuple(range(start, horizon + 1, 2)), horizon, "evens")

    @classmethod
    def squares(cls, horizon: int) -> "IndexFamily":
        return cls(tuple(k * k for k in range(1, math.isqrt(horizon) + 1)), horizon, "squares")

    @classmethod
    def powers_of_two(cls, horizon: int) -> "IndexFamily":
        return cls(tuple(1 << k for k in range(horizon.bit_length()) if 1 << k <= horizon), horizon, "powers-of-two")

    @classmethod
    def leading_digit(cls, digit: int, horizon: int) -> "IndexFamily":
        """Naturals whose decimal expansion starts with ``digit``."""
        def predicate(n: np.ndarray) -> np.ndarray:
            magnitude = 10 ** np.floor(np.log10(np.maximum(n, 1))).astype(np.int64)
            # float log10 can land one decade low at exact powers of ten
            magnitude = np.where(magnitude * 10 <= n, magnitude * 10, magnitude)
            return n // magnitude == digit
        return cls.from_predicate(predicate, horizon, f"leading-digit-{digit}", start=1)

    def complement(self, start: int = 1) -> "IndexFamily":
        mask = np.ones(self.horizon + 1, dtype=bool)
        mask[:start] = False
        mask[self.as_array()] = False
        return IndexFamily(tuple(int(n) for n in np.nonzero(mask)[0]), self.horizon, f"complement({self.descriptor})")

    # access

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, n: int) -> bool:
        i = bisect_right(self.elements, n)
        return i > 0 and self.elements[i - 1] == n

    @property
    def is_empty(self) -> bool:
        return not self.elements

    def count_upto(self, N: int) -> int:
        """card{n ∈ A : n ≤ N}."""
        return bisect_right(self.elements, N)

    def elements_upto(self, N: int) -> Tuple[int, ...]:
        return self.elements[: self.count_upto(N)]

    @cached_property
    def _array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)

    def as_array(self, N: Optional[int] = None) -> np.ndarray:
        if N is None:
            return self._array
        return self._array[: self.count_upto(N)]

    def mask(self, N: int) -> np.ndarray:
        """Boolean membership vector indexed by 0..N."""
        flags = np.zeros(N + 1, dtype=bool)
        flags[self.as_array(N)] = True
        return flags

    def describe(self) -> dict:
        return {"descriptor": self.descriptor, "horizon": self.horizon, "size": len(self.elements)}
