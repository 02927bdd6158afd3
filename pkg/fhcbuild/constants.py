from functools import lru_cache
from math import comb
from typing import Tuple


@lru_cache(maxsize=None)
def eulerian_row(k: int) -> Tuple[int, ...]:
    """Eulerian numbers A(k, 0..k−1)."""
    return tuple(
        sum((-1) ** i * comb(k + 1, i) * (j + 1 - i) ** k for i in range(j + 1))
        for j in range(k)
    )


def polylog_negative(k: int, x: float) -> float:
    """Li_{−k}(x) = Σ_{l≥1} l^k x^l for 0 ≤ x < 1, in closed form x·A_k(x)/(1−x)^{k+1}."""
    if not 0 <= x < 1:
        raise ValueError(f"series needs 0 ≤ x < 1, got {x}")
    if k == 0:
        return x / (1 - x)
    numerator = sum(a * x ** j for j, a in enumerate(eulerian_row(k)))
    return x * numerator / (1 - x) ** (k + 1)


def geometric_constant(lam: complex) -> float:
    """C = 1/(1 − |λ|^{−1})."""
    modulus = abs(lam)
    if modulus <= 1:
        raise ValueError(f"|λ| must exceed 1, got {lam}")
    return 1.0 / (1.0 - 1.0 / modulus)


def constant_Cm(lam: complex, m_prime: int) -> float:
    """C_{m′} = C·[Σ_{1≤m<m′} Σ_l l^{m′}|λ|^{−l} + Σ_{m≥m′} |λ|^{−m}·Σ_l l·|λ|^{−l}].

    Both inner sums are negative-order polylogarithms; the outer geometric sum
    is x^{m′}/(1−x) with x = 1/|λ|.
    """
    if m_prime < 1:
        raise ValueError(f"m′ must be ≥ 1, got {m_prime}")
    C = geometric_constant(lam)
    x = 1.0 / abs(lam)
    low = (m_prime - 1) * polylog_negative(m_prime, x)
    high = x ** m_prime / (1.0 - x) * polylog_negative(1, x)
    return C * (low + high)
