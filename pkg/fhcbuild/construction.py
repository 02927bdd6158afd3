"""Assembly of x = Σ_{l,m} Σ_{n∈A(l,m)} λ^{−n/m} Fⁿ y_l^{1/m} and its orbit certificate.

Coordinates are kept as ``ScaledComplex`` because λ^{−n/m} leaves the double
range long before the indices of a geometric system run out. Only indices n
with n + L ≤ horizon are written; the rest is accounted for by the tail bound.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from config.settings import FHC_CONFIG
from fhcbuild.admissible import AdmissibleFamilySystem
from fhcbuild.constants import constant_Cm
from fhcbuild.test_sequences import DenseTestSequence
from seqspace.arithmetic import mth_root, principal_root
from seqspace.complex_seq import ComplexSeq
from seqspace.scaled import ScaledComplex, scaled_power
from seqspace.spaces import SpaceSpec, lp_norm
from utils.errors import InvariantViolationError
from utils.logger import get_logger

logger = get_logger(__name__)

Label = Tuple[int, int]


@dataclass
class ConstructedVector:
    lam: complex
    system: AdmissibleFamilySystem
    tests: DenseTestSequence
    horizon: int
    coordinates: Dict[int, ScaledComplex] = field(default_factory=dict)
    placements: List[Tuple[int, Label]] = field(default_factory=list)
    omitted: List[Tuple[int, Label]] = field(default_factory=list)
    tail_bound: float = 0.0

    @property
    def space(self) -> SpaceSpec:
        return self.tests.space

    @property
    def x(self) -> ComplexSeq:
        """The truncated vector as plain complex values (tiny coordinates flush to 0)."""
        return ComplexSeq.from_mapping({k: v.to_complex() for k, v in self.coordinates.items()}, 1,
                                       max(self.horizon, 1)).normalized()

    def norm(self) -> float:
        return lp_norm([v.magnitude() for v in self.coordinates.values()], self.space.exponent)


@dataclass(frozen=True)
class OrbitError:
    m_prime: int
    l_prime: int
    n_prime: int
    error: float
    bound: float
    certified: bool

    def to_dict(self) -> dict:
        return {"m_prime": self.m_prime, "l_prime": self.l_prime, "n_prime": self.n_prime,
                "error": self.error, "bound": self.bound, "certified": self.certified}


def _log_modulus(lam: complex) -> float:
    return math.log(abs(lam))


def build_vector(system: AdmissibleFamilySystem, tests: DenseTestSequence, lam: complex,
                 horizon: int) -> ConstructedVector:
    """Write λ^{−n/m}·y_l^{1/m}(j − n) at coordinate j for every n ∈ A(l,m) with n + L ≤ horizon."""
    if abs(lam) <= 1:
        raise ValueError(f"|λ| must exceed 1, got {lam}")
    cv = ConstructedVector(complex(lam), system, tests, horizon)
    tolerance = FHC_CONFIG["norm_tolerance"]
    log_modulus = _log_modulus(lam)
    roots: Dict[Label, ComplexSeq] = {}

    for n, (l, m) in system.merged():
        if n + system.L > horizon:
            cv.omitted.append((n, (l, m)))
            continue
        if (l, m) not in roots:
            roots[(l, m)] = mth_root(tests.term(l), m)
        factor = scaled_power(principal_root(complex(lam), m), -n)
        for position in range(n + 1, n + l + 1):
            if position in cv.coordinates:
                logger.error(f"Coordinate {position} written twice (n={n}, label={(l, m)})")
                raise InvariantViolationError(f"overlapping writes at coordinate {position}",
                                              {"n": n, "label": [l, m]})
            value = roots[(l, m)].get(position - n)
            cv.coordinates[position] = factor * value
        cv.placements.append((n, (l, m)))

    cv.tail_bound = math.fsum(l * math.exp(-(n / m) * log_modulus) for n, (l, m) in cv.omitted)
    size = cv.norm()
    cap = math.fsum(2.0 ** -(l + m) for l, m in system.labels)
    if size > cap + tolerance:
        logger.error(f"‖x‖ = {size} exceeds Σ 2^-(l+m) = {cap}")
        raise InvariantViolationError(f"constructed vector norm {size} exceeds {cap}")
    logger.info(f"Built x with {len(cv.placements)} spikes, ‖x‖={size:.6g}, tail bound {cv.tail_bound:.3g}")
    return cv


def orbit_tail_bound(cv: ConstructedVector, m_prime: int, n_prime: int) -> float:
    """Σ over omitted (l,m,n) with n > n′ of |λ|^{n′ − n·m′/m}·l^{max(m′/m, 1)}."""
    log_modulus = _log_modulus(cv.lam)
    terms = []
    for n, (l, m) in cv.omitted:
        if n <= n_prime:
            continue
        exponent = (n_prime - n * m_prime / m) * log_modulus + max(m_prime / m, 1.0) * math.log(l)
        terms.append(math.exp(exponent) if exponent < 700 else math.inf)
    return math.fsum(terms)


def _orbit_residual(cv: ConstructedVector, m_prime: int, n_prime: int, target: ComplexSeq,
                    alpha: complex = 1) -> float:
    """‖(λB)^{n′}(αx)^{m′} − target‖ evaluated on the scaled coordinates."""
    lift = scaled_power(complex(cv.lam), n_prime) * scaled_power(complex(alpha), m_prime)
    values: Dict[int, complex] = {}
    for position, value in cv.coordinates.items():
        if position <= n_prime or value.is_zero:
            continue
        values[position - n_prime] = (lift * scaled_power(value, m_prime)).to_complex()
    for k, v in target.entries:
        values[k] = values.get(k, 0j) - v
    return lp_norm(values.values(), cv.space.exponent)


def orbit_error(cv: ConstructedVector, m_prime: int, l_prime: int, n_prime: int) -> OrbitError:
    """‖(λB)^{n′} x^{m′} − y_{l′}‖ against C_{m′}|λ|^{−l′} plus the truncation contribution."""
    family = cv.system.families.get((l_prime, m_prime))
    if family is None or n_prime not in family:
        raise ValueError(f"n′={n_prime} is not in A({l_prime},{m_prime})")
    certified = n_prime + l_prime <= cv.horizon
    error = _orbit_residual(cv, m_prime, n_prime, cv.tests.term(l_prime))
    bound = constant_Cm(cv.lam, m_prime) * abs(cv.lam) ** (-l_prime) + orbit_tail_bound(cv, m_prime, n_prime)
    if not certified:
        logger.warning(f"n′={n_prime}: window beyond horizon {cv.horizon}, result uncertified")
    elif error > bound * (1 + FHC_CONFIG["residual_tolerance"]):
        logger.error(f"Orbit error {error} exceeds bound {bound} at (m′,l′,n′)=({m_prime},{l_prime},{n_prime})")
        raise InvariantViolationError("orbit error exceeds its certified bound",
                                      {"m_prime": m_prime, "l_prime": l_prime, "n_prime": n_prime,
                                       "error": error, "bound": bound})
    return OrbitError(m_prime, l_prime, n_prime, error, bound, certified)


def orbit_error_table(cv: ConstructedVector, threads: int = 1) -> List[OrbitError]:
    """Every written (m′, l′, n′) triple, in increasing n′."""
    triples = [(m, l, n) for n, (l, m) in cv.placements]

    def evaluate(triple):
        return orbit_error(cv, *triple)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(evaluate, triples))
    return [evaluate(triple) for triple in triples]


def scaled_orbit_error(cv: ConstructedVector, alpha: complex, m_prime: int, l_prime: int,
                       n_prime: int) -> Tuple[float, float]:
    """(‖(λB)^{n′}(αx)^{m′} − α^{m′}y_{l′}‖, |α|^{m′}·error): equal by homogeneity."""
    if alpha == 0:
        raise ValueError("α must be nonzero")
    target = cv.tests.term(l_prime).scale(complex(alpha) ** m_prime)
    scaled = _orbit_residual(cv, m_prime, n_prime, target, alpha)
    base = _orbit_residual(cv, m_prime, n_prime, cv.tests.term(l_prime))
    return scaled, abs(alpha) ** m_prime * base
