from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

MultiIndex = Tuple[int, ...]


def _pad(beta: Sequence[int], width: int) -> MultiIndex:
    return tuple(beta) + (0,) * (width - len(beta))


def _strip(beta: MultiIndex) -> MultiIndex:
    end = len(beta)
    while end and beta[end - 1] == 0:
        end -= 1
    return beta[:end]


class Polynomial:
    """Σ c_β X₁^{β₁}⋯X_s^{β_s}; like terms are merged and zero coefficients dropped."""

    def __init__(self, coefficients: Mapping[Sequence[int], complex]):
        merged: Dict[MultiIndex, complex] = {}
        for beta, c in coefficients.items():
            if any(b < 0 for b in beta):
                raise ValueError(f"exponents must be ≥ 0, got {beta}")
            key = _strip(tuple(int(b) for b in beta))
            merged[key] = merged.get(key, 0j) + complex(c)
        self.coefficients = {beta: c for beta, c in sorted(merged.items()) if c != 0}

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Sequence[int], Union[complex, float]]]) -> "Polynomial":
        merged: Dict[MultiIndex, complex] = {}
        for beta, c in terms:
            key = _strip(tuple(int(b) for b in beta))
            merged[key] = merged.get(key, 0j) + complex(c)
        return cls(merged)

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def num_variables(self) -> int:
        return max((len(beta) for beta in self.coefficients), default=0)

    @property
    def degrees(self) -> List[int]:
        return sorted({sum(beta) for beta in self.coefficients})

    @property
    def degree(self) -> int:
        return max(self.degrees, default=0)

    @property
    def lowest_degree(self) -> int:
        return min(self.degrees, default=0)

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial({beta: c for beta, c in self.coefficients.items() if sum(beta) == d})

    def homogeneous_parts(self) -> Dict[int, "Polynomial"]:
        return {d: self.homogeneous_part(d) for d in self.degrees}

    def __call__(self, values: Sequence[complex]) -> complex:
        """Evaluate with X_l = values[l − 1]; missing variables are 0."""
        width = self.num_variables
        point = list(values[:width]) + [0j] * max(0, width - len(values))
        total = 0j
        for beta, c in self.coefficients.items():
            term = c
            for v, b in zip(point, beta):
                if b:
                    term *= v ** b
            total += term
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coefficients == other.coefficients

    def __repr__(self) -> str:
        return f"Polynomial({self.coefficients})"

    def to_terms(self) -> List[dict]:
        width = self.num_variables
        return [{"exponents": list(_pad(beta, width)), "re": c.real, "im": c.imag}
                for beta, c in self.coefficients.items()]
