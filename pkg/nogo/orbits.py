"""Log-domain evaluation of backward-shift orbits of Hadamard powers.

For a backward shift with weights w, opⁿ(x^m) at coordinate j equals
w(j+1)⋯w(j+n)·x(j+n)^m. With Λ(k) = Σ_{base<i≤k} log|w(i)| its modulus is
exp(Λ(j+n) − Λ(j) + m·log|x(j+n)|), which stays finite for n up to 10⁴ even
when |λ|ⁿ or n! does not.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.special import gammaln, logsumexp

from seqspace.complex_seq import ComplexSeq
from seqspace.shifts import ShiftSpec
from utils.errors import IncompatibleSpacesError

_EXP_LIMIT = 709.0


@dataclass(frozen=True)
class LogProfile:
    """Nonzero entries of a sequence as sorted indices, log-moduli and arguments."""
    base: int
    indices: np.ndarray
    log_modulus: np.ndarray
    phase: np.ndarray

    @classmethod
    def of(cls, x: ComplexSeq) -> "LogProfile":
        nonzero = [(k, v) for k, v in x.entries if v != 0]
        values = np.array([v for _, v in nonzero], dtype=complex)
        return cls(x.base, np.array([k for k, _ in nonzero], dtype=np.int64),
                   np.log(np.abs(values)), np.angle(values))

    @property
    def top_index(self) -> int:
        return int(self.indices[-1]) if self.indices.size else self.base


def weight_prefix(op: ShiftSpec, top: int, base: int) -> Tuple[np.ndarray, np.ndarray]:
    """Λ(k) and the cumulative weight argument for base ≤ k ≤ top, stored at k − base."""
    k = np.arange(base, top + 1)
    if op.kind == "rolewicz":
        steps = (k - base).astype(float)
        return steps * math.log(abs(op.lam)), steps * cmath.phase(op.lam)
    if op.kind == "maclane":
        if base != 0:
            raise IncompatibleSpacesError("the differentiation operator acts on base-0 Taylor coefficients")
        return gammaln(k + 1.0), np.zeros(k.size)
    if op.kind == "weighted":
        w = np.array([op.weights.weight(int(i)) for i in range(base + 1, top + 1)], dtype=complex)
        logs = np.concatenate(([0.0], np.cumsum(np.log(np.abs(w)))))
        args = np.concatenate(([0.0], np.cumsum(np.angle(w))))
        return logs, args
    raise ValueError(f"{op.label} has no backward orbit")


def _exp(log_value: float) -> float:
    return math.exp(log_value) if log_value < _EXP_LIMIT else math.inf


def _combine(log_parts, exponent: float) -> float:
    """‖·‖ of a vector given the log-moduli of its coordinates."""
    parts = np.asarray([v for v in log_parts if v > -math.inf], dtype=float)
    if parts.size == 0:
        return 0.0
    if exponent == math.inf:
        return _exp(float(parts.max()))
    return _exp(float(logsumexp(parts * exponent)) / exponent)


class OrbitEvaluator:
    """Norms of opⁿ(x^m) and their distance to the unit vector e_base, for any n."""

    def __init__(self, op: ShiftSpec, x: ComplexSeq, m: int = 1, exponent: float = 2.0):
        if not op.is_backward:
            raise ValueError(f"{op.label} is not a backward shift")
        if m < 1:
            raise ValueError(f"m must be ≥ 1, got {m}")
        self.op = op
        self.m = m
        self.exponent = exponent
        self.profile = LogProfile.of(x)
        self.log_w, self.arg_w = weight_prefix(op, self.profile.top_index, x.base)

    def vanishes_after(self) -> int:
        """Least n with opⁿx = 0."""
        return self.profile.top_index - self.profile.base + 1 if self.profile.indices.size else 0

    def _terms(self, n: int):
        base = self.profile.base
        start = int(np.searchsorted(self.profile.indices, n + base))
        k = self.profile.indices[start:]
        logs = (self.log_w[k - base] - self.log_w[k - n - base]
                + self.m * self.profile.log_modulus[start:])
        phases = self.arg_w[k - base] - self.arg_w[k - n - base] + self.m * self.profile.phase[start:]
        return k - n, logs, phases

    def log_norm(self, n: int) -> float:
        """log ‖opⁿx^m‖; −inf for the zero vector."""
        _, logs, _ = self._terms(n)
        if logs.size == 0:
            return -math.inf
        if self.exponent == math.inf:
            return float(logs.max())
        return float(logsumexp(logs * self.exponent)) / self.exponent

    def lead(self, n: int) -> complex:
        """opⁿx^m at the first coordinate (may be ±inf in modulus)."""
        positions, logs, phases = self._terms(n)
        if positions.size == 0 or positions[0] != self.profile.base:
            return 0j
        if logs[0] >= _EXP_LIMIT:
            return complex(math.inf, 0)
        return cmath.rect(math.exp(logs[0]), phases[0])

    def distance_to_unit(self, n: int) -> float:
        """‖opⁿx^m − e_base‖."""
        positions, logs, phases = self._terms(n)
        gap = 1.0
        rest = logs
        if positions.size and positions[0] == self.profile.base:
            rest = logs[1:]
            if logs[0] > 40:
                gap = _exp(float(logs[0]))
            else:
                gap = abs(cmath.rect(math.exp(logs[0]), phases[0]) - 1)
        head = math.log(gap) if gap > 0 else -math.inf
        return _combine([head, *rest.tolist()], self.exponent)
