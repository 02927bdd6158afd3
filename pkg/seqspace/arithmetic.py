import cmath

from seqspace.complex_seq import ComplexSeq
from seqspace.scaled import ScaledComplex, ldexp_complex


def hadamard(x: ComplexSeq, y: ComplexSeq) -> ComplexSeq:
    """Coordinatewise product; the support is the intersection of supports."""
    x._check_base(y)
    other = y.as_dict()
    entries = tuple((k, v * other[k]) for k, v in x.entries if k in other)
    return ComplexSeq(x.base, entries).normalized()


def _int_power(value: complex, m: int) -> complex:
    result = value
    for _ in range(m - 1):
        result = result * value
    return result


def power(x: ComplexSeq, m: int) -> ComplexSeq:
    """Coordinatewise m-th power, m ≥ 1.

    Repeated multiplication, so power(x, 2) agrees bit for bit with hadamard(x, x).
    """
    if m < 1:
        raise ValueError(f"power needs m ≥ 1, got {m}")
    if m == 1:
        return x.normalized()
    return ComplexSeq(x.base, tuple((k, _int_power(v, m)) for k, v in x.entries), x.support_bound).normalized()


def principal_root(value: complex, m: int) -> complex:
    """Principal m-th root: argument in (−π/m, π/m]."""
    if value == 0:
        return 0j
    # −0.0 imaginary parts would put negative reals at phase −π
    value = complex(value.real, value.imag + 0.0)
    if m == 1:
        return value
    modulus = abs(value) ** (1.0 / m)
    if value.imag == 0 and value.real > 0:
        return complex(modulus, 0.0)
    return cmath.rect(modulus, cmath.phase(value) / m)


def mth_root(y: ComplexSeq, m: int) -> ComplexSeq:
    if m < 1:
        raise ValueError(f"root order must be ≥ 1, got {m}")
    return ComplexSeq(y.base, tuple((k, principal_root(v, m)) for k, v in y.entries), y.support_bound).normalized()


def fractional_power(y: ComplexSeq, j: int, m: int) -> ComplexSeq:
    """y^{j/m} := (y^{1/m})^j with the principal root."""
    return power(mth_root(y, m), j)


def holder_power_bound(l: int, j: int, m: int) -> float:
    """l^{max(j/m, 1)}: bound on ‖y^{j/m}‖ when ‖y‖ ≤ l and y lives on l coordinates."""
    return float(l) ** max(j / m, 1.0)


def scaled_root(value: ScaledComplex, m: int) -> ScaledComplex:
    """Principal m-th root of a scaled number: the exponent splits as q·m + r."""
    if value.is_zero or m == 1:
        return value
    q, r = divmod(value.exponent, m)
    return ScaledComplex.normalize(principal_root(ldexp_complex(value.mantissa, r), m), q)
