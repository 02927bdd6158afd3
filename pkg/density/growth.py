from dataclasses import dataclass
from typing import List, Optional

from density.index_family import IndexFamily
from utils.errors import InvariantViolationError
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class LinearGrowthBound:
    """n_k ≤ M·k over the materialized range, hence n_{k+j} ≤ (2M)^j n_k.

    ``successor_multiplier`` is the least M′ with n_{k+1} − 1 ≤ M′·n_k, the
    quantity the Rolewicz obstruction consumes.
    """
    M: int
    successor_multiplier: int
    checked_terms: int

    def schedule(self, j: int) -> int:
        return (2 * self.M) ** j

    def schedule_list(self, depth: int) -> List[int]:
        return [self.schedule(j) for j in range(depth + 1)]


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def linear_growth_bound(A: IndexFamily, cap: int = 1000) -> Optional[LinearGrowthBound]:
    """M = ceil(max_k n_k/k) with k counted from 1 over the positive elements of A.

    Returns None when M exceeds ``cap`` (positive lower density presumed violated).
    """
    terms = [n for n in A.elements if n > 0]
    if not terms:
        raise ValueError(f"{A.descriptor}: linear growth bound needs a nonempty family")

    M = max(_ceil_div(n, k) for k, n in enumerate(terms, start=1))
    if M > cap:
        logger.warning(f"{A.descriptor}: growth ratio {M} exceeds cap {cap}")
        return None

    for current, following in zip(terms, terms[1:]):
        if following > 2 * M * current:
            raise InvariantViolationError(
                f"{A.descriptor}: n_(k+1)={following} exceeds 2M·n_k={2 * M * current}",
                {"M": M, "n_k": current, "n_k1": following},
            )
    successor = max((_ceil_div(following - 1, current) for current, following in zip(terms, terms[1:])), default=1)
    logger.debug(f"{A.descriptor}: M={M}, successor multiplier={successor} over {len(terms)} terms")
    return LinearGrowthBound(M, max(successor, 1), len(terms))


def verify_growth_schedule(A: IndexFamily, bound: LinearGrowthBound, depth: int) -> bool:
    """Exact check of n_{k+j} ≤ (2M)^j n_k for 1 ≤ j ≤ depth over the materialized range."""
    terms = [n for n in A.elements if n > 0]
    for j in range(1, depth + 1):
        factor = bound.schedule(j)
        for current, later in zip(terms, terms[j:]):
            if later > factor * current:
                logger.error(f"{A.descriptor}: schedule fails at j={j}, n_k={current}, n_(k+j)={later}")
                return False
    return True
