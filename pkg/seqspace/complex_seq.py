from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np

from utils.errors import IncompatibleSpacesError
from utils.logger import get_logger

logger = get_logger(__name__)

Entry = Tuple[int, complex]


@dataclass(frozen=True)
class ComplexSeq:
    """Finitely supported complex sequence with an explicit index base.

    ``base`` is 1 for ℓ_p / c₀ vectors and 0 for Taylor coefficient sequences.
    Entries are (index, value) pairs with strictly increasing indices ≥ base;
    explicitly stored zeros are allowed and removed by ``normalized``.
    ``support_bound`` is any upper bound on the stored indices.
    """
    base: int
    entries: Tuple[Entry, ...] = ()
    support_bound: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        entries = tuple((int(k), complex(v)) for k, v in self.entries)
        previous = None
        for index, _ in entries:
            if index < self.base:
                raise ValueError(f"index {index} below base {self.base}")
            if previous is not None and index <= previous:
                raise ValueError(f"indices must be strictly increasing, got {previous} then {index}")
            previous = index
        object.__setattr__(self, "entries", entries)
        top = entries[-1][0] if entries else self.base
        if self.support_bound is None:
            object.__setattr__(self, "support_bound", top)
        elif self.support_bound < top:
            raise ValueError(f"support bound {self.support_bound} below top index {top}")

    # construction

    @classmethod
    def zero(cls, base: int = 1) -> "ComplexSeq":
        return cls(base, ())

    @classmethod
    def unit(cls, n: int, base: int = 1) -> "ComplexSeq":
        """The coordinate vector e_n."""
        return cls(base, ((n, 1 + 0j),))

    @classmethod
    def from_values(cls, values: Sequence[complex], base: int = 1) -> "ComplexSeq":
        """Dense list starting at ``base``; exact zeros are not stored."""
        return cls(base, tuple((base + i, complex(v)) for i, v in enumerate(values) if v != 0))

    @classmethod
    def from_mapping(cls, values: Mapping[int, complex], base: int = 1,
                     support_bound: Optional[int] = None) -> "ComplexSeq":
        return cls(base, tuple(sorted((int(k), complex(v)) for k, v in values.items())), support_bound)

    # access

    @cached_property
    def _lookup(self) -> Dict[int, complex]:
        return dict(self.entries)

    def get(self, index: int) -> complex:
        return self._lookup.get(index, 0j)

    def __getitem__(self, index: int) -> complex:
        return self.get(index)

    def __iter__(self) -> Iterator[Entry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(k for k, _ in self.entries)

    @property
    def values(self) -> Tuple[complex, ...]:
        return tuple(v for _, v in self.entries)

    @property
    def top_index(self) -> Optional[int]:
        """Largest index carrying a nonzero value, or None for the zero sequence."""
        for index, value in reversed(self.entries):
            if value != 0:
                return index
        return None

    @property
    def is_zero(self) -> bool:
        return self.top_index is None

    def as_dict(self) -> Dict[int, complex]:
        return dict(self._lookup)

    def normalized(self) -> "ComplexSeq":
        return ComplexSeq(self.base, tuple((k, v) for k, v in self.entries if v != 0), self.support_bound)

    def to_dense(self, length: Optional[int] = None) -> np.ndarray:
        """Values at indices base, base+1, … as a numpy array."""
        if length is None:
            length = (self.support_bound - self.base + 1) if self.entries else 0
        dense = np.zeros(length, dtype=complex)
        for index, value in self.entries:
            position = index - self.base
            if position < length:
                dense[position] = value
        return dense

    # linear structure

    def _check_base(self, other: "ComplexSeq"):
        if self.base != other.base:
            logger.error(f"Base mismatch: {self.base} vs {other.base}")
            raise IncompatibleSpacesError(
                f"cannot combine sequences with bases {self.base} and {other.base}",
                {"left_base": self.base, "right_base": other.base},
            )

    def _combine(self, other: "ComplexSeq", sign: int) -> "ComplexSeq":
        self._check_base(other)
        merged = self.as_dict()
        for index, value in other.entries:
            merged[index] = merged.get(index, 0j) + sign * value
        bound = max(self.support_bound, other.support_bound)
        return ComplexSeq.from_mapping(merged, self.base, bound).normalized()

    def __add__(self, other: "ComplexSeq") -> "ComplexSeq":
        return self._combine(other, 1)

    def __sub__(self, other: "ComplexSeq") -> "ComplexSeq":
        return self._combine(other, -1)

    def __neg__(self) -> "ComplexSeq":
        return self.scale(-1)

    def scale(self, factor: complex) -> "ComplexSeq":
        factor = complex(factor)
        return ComplexSeq(self.base, tuple((k, factor * v) for k, v in self.entries), self.support_bound).normalized()

    def restrict(self, low: int, high: int) -> "ComplexSeq":
        """Entries with low ≤ index ≤ high."""
        return ComplexSeq(self.base, tuple((k, v) for k, v in self.entries if low <= k <= high))


def linear_combination(terms: Iterable[Tuple[complex, ComplexSeq]], base: int = 1) -> ComplexSeq:
    """Σ c_i·x_i accumulated coordinatewise in ascending index order."""
    merged: Dict[int, complex] = {}
    for coefficient, seq in terms:
        if seq.base != base:
            raise IncompatibleSpacesError(f"expected base {base}, got {seq.base}")
        for index, value in seq.entries:
            merged[index] = merged.get(index, 0j) + coefficient * value
    return ComplexSeq.from_mapping(merged, base).normalized()
