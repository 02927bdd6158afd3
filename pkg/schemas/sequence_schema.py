from pydantic import BaseModel, Field
from typing import Dict, List, Optional, Tuple, Union
from utils.logger import get_logger

logger = get_logger(__name__)


class SequenceFile(BaseModel):
    """On-disk form of a ComplexSeq: indices are decimal strings so big values survive."""
    base: int = 1
    entries: List[Tuple[Union[str, int], float, float]] = Field(default_factory=list)

    def validate_sequence(self):
        logger.debug(f"Validating sequence file with {len(self.entries)} entries")
        previous = None
        for raw_index, _, _ in self.entries:
            try:
                index = int(raw_index)
            except (TypeError, ValueError):
                logger.error(f"Index {raw_index!r} is not a decimal integer")
                raise ValueError(f"Index {raw_index!r} is not a decimal integer")
            if index < self.base:
                logger.error(f"Index {index} below base {self.base}")
                raise ValueError(f"Index {index} below base {self.base}")
            if previous is not None and index <= previous:
                logger.error("Sequence indices must be strictly increasing")
                raise ValueError("Sequence indices must be strictly increasing")
            previous = index
        return self


class BlockDescriptor(BaseModel):
    r: int
    start: str
    step: int
    count: str


class FamilyDescriptor(BaseModel):
    """JSON form of a dyadic family A(l,m): all big integers as decimal strings."""
    l: int
    m: int
    r_min: int
    blocks: List[BlockDescriptor] = Field(default_factory=list)

    def validate_family(self):
        if self.l < 1 or self.m < 1:
            logger.error(f"Family labels must be ≥ 1, got l={self.l}, m={self.m}")
            raise ValueError("Family labels must be ≥ 1")
        for block in self.blocks:
            if block.step != 2 * self.l:
                logger.error(f"Block r={block.r} has step {block.step}, expected {2 * self.l}")
                raise ValueError(f"Block step must be 2l={2 * self.l}")
        return self


class PolynomialTerm(BaseModel):
    exponents: List[int]
    re: float
    im: float = 0.0


class AlgebraDescriptor(BaseModel):
    """Product kind plus the data it needs: φ coefficients, x₀, Λ columns, rank."""
    product: str = "times"
    space_p: float = 2.0
    phi: Optional[List[Tuple[Union[str, int], float, float]]] = None
    x0: Optional[List[Tuple[Union[str, int], float, float]]] = None
    columns: Optional[List[List[Tuple[float, float]]]] = None
    column_schedule: str = "dense"
    max_denominator: Optional[int] = None
    rank: int = 64
    polynomial: List[PolynomialTerm] = Field(default_factory=list)

    def validate_algebra(self):
        logger.debug(f"Validating algebra descriptor for product {self.product}")
        if self.product not in ("hadamard", "phi", "x0-commutative", "times"):
            logger.error(f"Unknown product kind: {self.product}")
            raise ValueError(f"Unknown product kind: {self.product}")
        if self.product in ("phi", "x0-commutative") and not self.phi:
            logger.error("φ products need functional coefficients")
            raise ValueError("φ products need functional coefficients")
        if self.product == "x0-commutative" and not self.x0:
            logger.error("The commutative φ product needs x0")
            raise ValueError("The commutative φ product needs x0")
        if self.product == "times" and self.column_schedule == "cyclic" and not self.columns:
            logger.error("Cyclic column schedule needs explicit columns")
            raise ValueError("Cyclic column schedule needs explicit columns")
        if self.rank < 1:
            raise ValueError("Truncation rank must be ≥ 1")
        return self

    def polynomial_terms(self) -> Dict[Tuple[int, ...], complex]:
        terms: Dict[Tuple[int, ...], complex] = {}
        for term in self.polynomial:
            key = tuple(term.exponents)
            terms[key] = terms.get(key, 0j) + complex(term.re, term.im)
        return terms
