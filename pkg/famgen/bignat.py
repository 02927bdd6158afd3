"""Helpers for arbitrary-size naturals (Python ints)."""

import math
import sys

LN2 = math.log(2.0)


def bignat_log2(n: int) -> float:
    """log₂ n from the bit length plus a 64-bit leading window."""
    if n <= 0:
        raise ValueError(f"log₂ needs a positive integer, got {n}")
    bits = n.bit_length()
    if bits <= 64:
        return math.log2(n)
    shift = bits - 64
    return shift + math.log2(n >> shift)


def _safe_ldexp(x: float, exponent: int) -> float:
    if exponent < -2200:
        return 0.0
    return math.ldexp(x, exponent)


def log2_pow2_plus(exponent: int, offset: int) -> float:
    """log₂(2^exponent + offset) without forming 2^exponent.

    ``offset`` may be negative as long as the argument stays positive.
    """
    if exponent < 0:
        raise ValueError("exponent must be ≥ 0")
    if exponent <= 1000:
        value = (1 << exponent) + offset
        if value <= 0:
            raise ValueError(f"2^{exponent} + {offset} is not positive")
        return bignat_log2(value)
    return exponent + math.log1p(_safe_ldexp(float(offset), -exponent)) / LN2


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def to_decimal(n: int) -> str:
    """Decimal string of an arbitrary int, lifting the interpreter's digit cap if needed."""
    if hasattr(sys, "get_int_max_str_digits"):
        limit = sys.get_int_max_str_digits()
        if limit and n.bit_length() > 3 * limit:
            sys.set_int_max_str_digits(0)
    return str(n)


def from_decimal(text: str) -> int:
    if hasattr(sys, "get_int_max_str_digits"):
        limit = sys.get_int_max_str_digits()
        if limit and len(text) > limit:
            sys.set_int_max_str_digits(0)
    return int(text)
