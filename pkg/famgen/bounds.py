import math

from famgen.bignat import log2_pow2_plus
from utils.logger import get_logger

logger = get_logger(__name__)


def density_limit(l: int, m: int) -> float:
    """1/(6l·2^ρ) with ρ = 2^{l+m}: where the lower-density estimate for A(l,m) converges."""
    rho = 1 << (l + m)
    return math.ldexp(1.0 / (6 * l), -rho)


def density_lower_bound(l: int, m: int, r: int) -> float:
    """(1/2l)·[log₂(2^{2^{r−ρ}·3/2} − 2l) − log₂(2^{2^{r−ρ}} + 2l)] / log₂(2^{2^r·3/2}).

    Lower bound on the proportion of A(l,m) up to the k-th element of B(l,r)
    counted from the block B(l, r−ρ) alone. Exponents stay symbolic: the
    logarithms are exponent plus a log1p correction.
    """
    rho = 1 << (l + m)
    if r - rho < 1:
        raise ValueError(f"density bound needs r − ρ ≥ 1 (ρ = {rho}), got r = {r}")
    inner = 1 << (r - rho)
    top = 3 * inner // 2
    if top < 64 and (1 << top) <= 2 * l:
        logger.warning(f"density bound for ({l},{m}) at r={r}: left block is empty")
        return 0.0
    difference = (top - inner) + (log2_pow2_plus(top, -2 * l) - top) - (log2_pow2_plus(inner, 2 * l) - inner)
    denominator = 3 * (1 << (r - 1))
    value = difference / denominator / (2 * l)
    logger.debug(f"density bound ({l},{m}) r={r}: {value:.6e} (limit {density_limit(l, m):.6e})")
    return max(value, 0.0)
