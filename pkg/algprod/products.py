"""Products that turn a sequence space into a Banach algebra.

All products take the left factor first: ``multiply(y, x)`` is y·x.
"""

from typing import Optional, Sequence

import numpy as np

from algprod.columns import ConstantColumns, CyclicColumns, DenseColumnEnumeration
from algprod.functional import Functional
from algprod.times_algebra import TimesAlgebra
from schemas.sequence_schema import AlgebraDescriptor
from seqspace.arithmetic import hadamard
from seqspace.complex_seq import ComplexSeq
from seqspace.spaces import SpaceSpec, lp_norm, norm
from utils.errors import InvalidConfigError
from utils.logger import get_logger

logger = get_logger(__name__)


class AlgebraProduct:
    name = "abstract"
    commutative = False

    def __init__(self, space: SpaceSpec):
        self.space = space

    def multiply(self, y: ComplexSeq, x: ComplexSeq) -> ComplexSeq:
        raise NotImplementedError

    def tail_bound(self, y: ComplexSeq, x: ComplexSeq) -> float:
        """Norm error introduced by truncation; zero for exact products."""
        return 0.0

    def power(self, x: ComplexSeq, j: int) -> ComplexSeq:
        """x^j = x·x^{j−1}."""
        if j < 1:
            raise ValueError(f"power needs j ≥ 1, got {j}")
        result = x
        for _ in range(j - 1):
            result = self.multiply(x, result)
        return result

    def norm(self, x: ComplexSeq) -> float:
        return norm(x, self.space)

    def describe(self) -> dict:
        return {"product": self.name, "space": self.space.label}


class HadamardProduct(AlgebraProduct):
    name = "hadamard"
    commutative = True

    def multiply(self, y: ComplexSeq, x: ComplexSeq) -> ComplexSeq:
        return hadamard(y, x)


def _check_phi(phi: Functional):
    if phi.is_zero:
        logger.error("The φ product needs a nonzero functional")
        raise ValueError("φ must be nonzero")
    if phi.dual_norm > 1 + 1e-12:
        logger.error(f"‖φ‖ = {phi.dual_norm} exceeds 1")
        raise ValueError(f"‖φ‖ must be ≤ 1, got {phi.dual_norm}")


class PhiProduct(AlgebraProduct):
    """y * x = φ(y)·x."""
    name = "phi"

    def __init__(self, phi: Functional):
        _check_phi(phi)
        super().__init__(phi.space)
        self.phi = phi

    def multiply(self, y: ComplexSeq, x: ComplexSeq) -> ComplexSeq:
        return x.scale(self.phi(y)).normalized()

    def describe(self) -> dict:
        return {**super().describe(), "phi_norm": self.phi.dual_norm}


class CommutativePhiProduct(AlgebraProduct):
    """y * x = φ(y)φ(x)·x₀ with ‖x₀‖ ≤ 1."""
    name = "x0-commutative"
    commutative = True

    def __init__(self, phi: Functional, x0: ComplexSeq):
        _check_phi(phi)
        if norm(x0, phi.space) > 1 + 1e-12:
            raise ValueError(f"‖x₀‖ must be ≤ 1, got {norm(x0, phi.space)}")
        super().__init__(phi.space)
        self.phi = phi
        self.x0 = x0

    def multiply(self, y: ComplexSeq, x: ComplexSeq) -> ComplexSeq:
        return self.x0.scale(self.phi(y) * self.phi(x)).normalized()

    def describe(self) -> dict:
        return {**super().describe(), "phi_norm": self.phi.dual_norm, "x0_norm": norm(self.x0, self.space)}


class TimesProduct(AlgebraProduct):
    name = "times"
    commutative = True

    def __init__(self, algebra: TimesAlgebra):
        super().__init__(algebra.space)
        self.algebra = algebra

    def multiply(self, y: ComplexSeq, x: ComplexSeq) -> ComplexSeq:
        return self.algebra.times(y, x)

    def tail_bound(self, y: ComplexSeq, x: ComplexSeq) -> float:
        return self.algebra.tail_bound(y, x)

    def describe(self) -> dict:
        return {**super().describe(), **self.algebra.describe()}


def phi_product(phi: Functional, y: ComplexSeq, x: ComplexSeq) -> ComplexSeq:
    return PhiProduct(phi).multiply(y, x)


def commutative_phi_product(phi: Functional, x0: ComplexSeq, y: ComplexSeq, x: ComplexSeq) -> ComplexSeq:
    return CommutativePhiProduct(phi, x0).multiply(y, x)


def phi_power_law_residual(phi: Functional, x: ComplexSeq, j: int) -> float:
    """‖x^j − φ(x)^{j−1}x‖_∞ under the φ product."""
    product = PhiProduct(phi)
    return lp_norm((product.power(x, j) - x.scale(phi(x) ** (j - 1))).values, float("inf"))


def powers_linearly_dependent(product: AlgebraProduct, x: ComplexSeq, tol: float = 1e-12) -> bool:
    """Whether x² and x³ span at most a line."""
    square, cube = product.power(x, 2), product.power(x, 3)
    length = max(square.support_bound, cube.support_bound, 1) + 1
    matrix = np.vstack([square.to_dense(length), cube.to_dense(length)])
    scale = max(1.0, float(np.abs(matrix).max()))
    return int(np.linalg.matrix_rank(matrix, tol=tol * scale)) < 2


def _sequence(entries: Optional[Sequence], what: str) -> ComplexSeq:
    try:
        return ComplexSeq.from_mapping({int(k): complex(re, im) for k, re, im in entries or []}).normalized()
    except (TypeError, ValueError) as exc:
        raise InvalidConfigError(f"bad {what} entries: {exc}") from exc


def build_product(spec: AlgebraDescriptor) -> AlgebraProduct:
    """Instantiate the product an algebra descriptor names."""
    try:
        spec.validate_algebra()
        space = SpaceSpec.Lp(spec.space_p)
    except ValueError as exc:
        raise InvalidConfigError(str(exc)) from exc

    if spec.product == "hadamard":
        return HadamardProduct(space)
    if spec.product in ("phi", "x0-commutative"):
        phi = Functional(_sequence(spec.phi, "phi"), space)
        try:
            if spec.product == "phi":
                return PhiProduct(phi)
            return CommutativePhiProduct(phi, _sequence(spec.x0, "x0"))
        except ValueError as exc:
            raise InvalidConfigError(str(exc)) from exc

    columns = [tuple(complex(re, im) for re, im in column) for column in spec.columns or []]
    try:
        if spec.column_schedule == "constant":
            schedule = ConstantColumns(columns[0] if columns else (1 + 0j,))
        elif spec.column_schedule == "cyclic":
            schedule = CyclicColumns(tuple(columns))
        elif spec.column_schedule == "dense":
            schedule = DenseColumnEnumeration(spec.max_denominator)
        else:
            raise ValueError(f"unknown column schedule: {spec.column_schedule}")
    except ValueError as exc:
        raise InvalidConfigError(str(exc)) from exc
    logger.info(f"Built × product with {schedule.kind} columns, rank {spec.rank}")
    return TimesProduct(TimesAlgebra(schedule, spec.rank, space))
