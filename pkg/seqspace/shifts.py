from dataclasses import dataclass
from typing import Literal, Optional

from seqspace.arithmetic import hadamard
from seqspace.complex_seq import ComplexSeq
from seqspace.scaled import ScaledComplex, scaled_power
from seqspace.spaces import lp_norm
from seqspace.weights import FallingFactorialWeights, WeightSequence
from utils.errors import IncompatibleSpacesError
from utils.logger import get_logger

logger = get_logger(__name__)

ShiftKind = Literal["rolewicz", "weighted", "maclane", "forward"]


@dataclass(frozen=True)
class ShiftSpec:
    """λB, B_w, the differentiation operator D on Taylor coefficients, or the forward shift F."""
    kind: ShiftKind
    lam: complex = 1 + 0j
    weights: Optional[WeightSequence] = None

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))
        if self.kind == "rolewicz" and not (abs(self.lam) > 1 or self.lam == 1):
            raise ValueError(f"Rolewicz operator needs |λ| > 1, got {self.lam}")
        if self.kind == "weighted" and self.weights is None:
            raise ValueError("weighted shift needs a weight sequence")
        if self.kind not in ("rolewicz", "weighted", "maclane", "forward"):
            raise ValueError(f"unknown shift kind: {self.kind}")

    @classmethod
    def rolewicz(cls, lam: complex) -> "ShiftSpec":
        return cls("rolewicz", lam)

    @classmethod
    def backward(cls) -> "ShiftSpec":
        """The plain backward shift B (λ = 1)."""
        return cls("rolewicz", 1)

    @classmethod
    def weighted(cls, weights: WeightSequence) -> "ShiftSpec":
        return cls("weighted", 1, weights)

    @classmethod
    def maclane(cls) -> "ShiftSpec":
        return cls("maclane")

    @classmethod
    def forward(cls) -> "ShiftSpec":
        return cls("forward")

    @property
    def is_backward(self) -> bool:
        return self.kind != "forward"

    @property
    def is_plain(self) -> bool:
        return self.kind == "forward" or (self.kind == "rolewicz" and self.lam == 1)

    @property
    def label(self) -> str:
        if self.kind == "rolewicz":
            return "B" if self.lam == 1 else f"{self.lam:g}B"
        if self.kind == "weighted":
            return f"B_w[{self.weights.kind}]"
        return {"maclane": "D", "forward": "F"}[self.kind]


def _scaled_value(factor: ScaledComplex, value: complex) -> complex:
    return ScaledComplex.normalize(factor.mantissa * value, factor.exponent).to_complex()


def apply_shift(op: ShiftSpec, n: int, x: ComplexSeq) -> ComplexSeq:
    """opⁿ x. Backward variants drop coordinates that fall below the base."""
    if n < 0:
        raise ValueError(f"shift power must be ≥ 0, got {n}")
    if n == 0:
        return x
    base = x.base
    if op.kind == "forward":
        return ComplexSeq(base, tuple((k + n, v) for k, v in x.entries), x.support_bound + n)

    bound = max(base, x.support_bound - n)
    surviving = [(k - n, v) for k, v in x.entries if k - n >= base and v != 0]

    if op.kind == "rolewicz":
        if op.lam == 1:
            return ComplexSeq(base, tuple(surviving), bound)
        factor = scaled_power(op.lam, n)
        entries = tuple((k, _scaled_value(factor, v)) for k, v in surviving)
    elif op.kind == "weighted":
        entries = tuple((k, _scaled_value(op.weights.product(k + 1, k + n), v)) for k, v in surviving)
    else:
        if base != 0:
            raise IncompatibleSpacesError("the differentiation operator acts on base-0 Taylor coefficients")
        weights = FallingFactorialWeights()
        entries = tuple((k, _scaled_value(weights.product(k + 1, k + n), v)) for k, v in surviving)
    return ComplexSeq(base, entries, bound).normalized()


def shift_is_multiplicative_check(op: ShiftSpec, n: int, x: ComplexSeq, y: ComplexSeq) -> bool:
    """opⁿ(x⊙y) == opⁿx ⊙ opⁿy, compared exactly.

    Only B and F are multiplicative; any other operator returns False (use
    ``shift_factorization_check`` for the identity those satisfy instead).
    """
    if not op.is_plain:
        logger.info(f"{op.label} is not multiplicative as a map of pairs")
        return False
    lhs = apply_shift(op, n, hadamard(x, y))
    rhs = hadamard(apply_shift(op, n, x), apply_shift(op, n, y))
    return lhs == rhs


def shift_factorization_check(op: ShiftSpec, n: int, x: ComplexSeq, y: ComplexSeq,
                              rel_tol: float = 1e-12) -> bool:
    """opⁿ(x⊙y) = (opⁿx)⊙(Bⁿy) for backward shifts, (Fⁿx)⊙(Fⁿy) for F."""
    lhs = apply_shift(op, n, hadamard(x, y))
    plain = ShiftSpec.forward() if op.kind == "forward" else ShiftSpec.backward()
    rhs = hadamard(apply_shift(op, n, x), apply_shift(plain, n, y))
    residual = lp_norm((lhs - rhs).values, float("inf"))
    scale = max(1.0, lp_norm(lhs.values, float("inf")))
    return residual <= rel_tol * scale
