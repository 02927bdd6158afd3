import math
from itertools import islice

import pytest

from algprod.axioms import axiom_report
from algprod.columns import ConstantColumns, CyclicColumns, DenseColumnEnumeration
from algprod.functional import Functional
from algprod.polynomial import Polynomial
from algprod.products import (CommutativePhiProduct, HadamardProduct, PhiProduct, TimesProduct, build_product,
                              commutative_phi_product, phi_power_law_residual, powers_linearly_dependent)
from algprod.times_algebra import (TimesAlgebra, a_index, monomial_cross_check, monomial_eval,
                                   phi_norm_floor_check, times_associativity_check, x_index)
from algprod.witness import (gamma_coefficient, independence_witness, random_polynomial, random_witness_suite,
                             witness_is_sound)
from schemas.sequence_schema import AlgebraDescriptor
from seqspace.complex_seq import ComplexSeq
from seqspace.spaces import SpaceSpec
from utils.errors import InvalidConfigError


def _constant_algebra(rank: int = 16) -> TimesAlgebra:
    return TimesAlgebra(ConstantColumns((1 + 0j,)), rank)


def test_functionals():
    """Coordinate functionals and dual norms"""
    x = ComplexSeq.from_values([1, 2j, 3])
    assert Functional.coordinate(2)(x) == 2j, "e₂* picks the second coordinate"
    phi = Functional.from_mapping({1: 0.5, 3: -0.5j})
    assert phi(x) == pytest.approx(0.5 - 1.5j), "φ(x) = Σ c(k)x(k)"
    assert phi.dual_norm == pytest.approx(math.sqrt(0.5)), "ℓ₂ is self-dual"
    assert Functional.from_mapping({1: 0.5, 3: -0.5}, SpaceSpec.Lp(1)).dual_norm == 0.5, "ℓ₁ pairs with sup"
    assert Functional.from_mapping({1: 3, 2: 4}).normalized_to_unit().dual_norm == pytest.approx(1.0), \
        "rescaled onto the unit ball"


def test_phi_products():
    """φ(y)·x and φ(y)φ(x)·x₀"""
    phi = Functional.from_mapping({1: 0.5})
    x = ComplexSeq.from_values([2, 1])
    assert PhiProduct(phi).multiply(x, x) == ComplexSeq.from_values([2, 1]), "φ(x)·x with φ(x) = 1"
    assert phi_power_law_residual(phi, ComplexSeq.from_values([3, 1j]), 4) <= 1e-12, "x^j = φ(x)^{j−1}x"
    assert powers_linearly_dependent(PhiProduct(phi), ComplexSeq.from_values([3, 1j])), \
        "φ-product powers lie on one line"

    x0 = ComplexSeq.from_values([0, 0.5])
    assert commutative_phi_product(phi, x0, x, ComplexSeq.unit(1)) == ComplexSeq.from_mapping({2: 0.25}), \
        "φ(y)φ(x)·x₀ = 1·0.5·x₀"
    with pytest.raises(ValueError):
        PhiProduct(Functional.from_mapping({1: 2}))
    with pytest.raises(ValueError):
        PhiProduct(Functional.from_mapping({}))
    with pytest.raises(ValueError):
        CommutativePhiProduct(phi, ComplexSeq.from_values([3]))


def test_hadamard_powers_independent():
    """x² and x³ are independent for the coordinatewise product"""
    assert not powers_linearly_dependent(HadamardProduct(SpaceSpec.Lp()), ComplexSeq.from_values([1, 2])), \
        "(1,4) and (1,8) span a plane"


def test_axiom_reports():
    """Every product is a Banach algebra product on sample triples"""
    triples = [
        (ComplexSeq.from_values([1, 0.5j]), ComplexSeq.from_values([0.25, -1]), ComplexSeq.from_values([2, 0, 1j])),
        (ComplexSeq.unit(1), ComplexSeq.unit(3), ComplexSeq.unit(2)),
    ]
    phi = Functional.from_mapping({1: 0.6, 2: 0.8j})
    products = [HadamardProduct(SpaceSpec.Lp()), PhiProduct(phi),
                CommutativePhiProduct(phi, ComplexSeq.from_values([0.3, 0.4])), TimesProduct(_constant_algebra())]
    for product in products:
        report = axiom_report(product, triples)
        assert report["status"] == "pass", f"{product.name} fails {report['checks']}"
    assert "commutativity" not in axiom_report(PhiProduct(phi), triples)["checks"], \
        "the φ product is not claimed commutative"


def test_times_structure():
    """‖φ_r‖ = √2 and the basic products for the constant column"""
    alg = _constant_algebra()
    assert (x_index(3), a_index(3)) == (5, 6), "x_l = e_{2l−1}, a_r = e_{2r}"
    assert alg.phi_norm(4) == pytest.approx(math.sqrt(2)), "φ_r = a_r* + x₁*"
    e1_squared = alg.times(ComplexSeq.unit(1), ComplexSeq.unit(1))
    for r in range(1, 6):
        assert e1_squared.get(a_index(r)) == pytest.approx(2.0 ** (-r - 1)), f"e₁×e₁ at a_{r}"
    a1_squared = alg.times(alg.a(1), alg.a(1))
    assert a1_squared.indices == (2,) and a1_squared.get(2) == pytest.approx(0.25), "a₁×a₁ = a₁/4"
    assert phi_norm_floor_check(alg, 8), "φ_r(a_s) = δ_rs and ‖φ_r‖ ≥ 1"


def test_times_associativity_and_monomials():
    """Both bracketings agree with the collapsed triple sum"""
    alg = _constant_algebra()
    check = times_associativity_check(alg, ComplexSeq.unit(1), ComplexSeq.unit(3), alg.a(1))
    assert check["passed"], f"associativity residuals {check}"
    assert monomial_cross_check(alg, (3,)) <= 1e-15, "closed form equals x₁×x₁×x₁"
    assert monomial_eval(alg, (2,), R=3).indices == (2, 4, 6), "R caps the a_r terms"
    with pytest.raises(ValueError):
        monomial_eval(alg, (1,))


def test_column_schedules():
    """Constant, cyclic and dense schedules with their recurrences"""
    assert list(islice(ConstantColumns((0.5,)).recurrences(3), 3)) == [3, 4, 5], "constant columns recur everywhere"
    cyclic = CyclicColumns(((1,), (0.5j,)))
    assert cyclic.column(4) == (0.5j,), "period two"
    assert list(islice(cyclic.recurrences(2), 3)) == [2, 4, 6], "same column every other index"
    with pytest.raises(ValueError):
        ConstantColumns((2,))

    dense = DenseColumnEnumeration()
    assert dense.element(0) == (-1 + 0j,) and dense.element(4) == (1 + 0j,), "level-1 grid in (a, b) order"
    assert dense.first_index_of((1,)) == 4, "first occurrence of the column (1)"
    assert list(islice(dense.recurrences(1), 4)) == [1, 2, 4, 7], "E₀ opens every diagonal block"
    assert all(dense.column(r) == dense.column(1) for r in (2, 4, 7)), "recurrences share the column"

    finite = DenseColumnEnumeration(max_denominator=1)
    assert finite.size == 5, "five Gaussian integers in the closed unit disc"
    with pytest.raises(IndexError):
        finite.element(5)
    assert finite.column(21) == finite.column(1), "saturated blocks wrap around"


def test_polynomials():
    """Like terms merge and zero coefficients drop"""
    P = Polynomial.from_terms([((2,), 1), ((3,), -1), ((2, 0), 0.5)])
    assert P == Polynomial({(2,): 1.5, (3,): -1}), "X₁² terms merge"
    assert P.degrees == [2, 3] and P.lowest_degree == 2, "degrees"
    assert P([2]) == pytest.approx(1.5 * 4 - 8), "evaluation"
    assert Polynomial.from_terms([((1, 1), 1), ((1, 1), -1)]).is_zero, "X₁X₂ − X₂X₁ = 0"
    with pytest.raises(ValueError):
        Polynomial({(-1,): 1})


def test_witness_for_square():
    """x₁×x₁ ≠ 0 is seen at the first column"""
    alg = _constant_algebra()
    result = independence_witness(alg, Polynomial({(2,): 1}))
    assert result.status == "witness found" and result.witness_index == 1, "witness at r = 1"
    assert result.gamma.to_complex() == pytest.approx(0.25), "γ₁ = 2^{−1}/‖φ₁‖²"


def test_witness_with_higher_part():
    """x₁² − x₁³: the cubic part weighs a quarter, the witness margin holds"""
    alg = _constant_algebra()
    P = Polynomial({(2,): 1, (3,): -1})
    result = independence_witness(alg, P, threads=2)
    assert result.witness_index == 1, "the quadratic part dominates at r = 1"
    assert result.gamma.to_complex() == pytest.approx(0.1875), "γ₁ = 1/4 − 1/16"
    assert result.margin(alg).to_complex() == pytest.approx(0.125), "margin ½·|P₂|/4"
    assert result.gamma.magnitude() >= result.margin(alg).magnitude(), "γ exceeds the margin"
    assert gamma_coefficient(alg, P, 2).to_complex() == pytest.approx(2.0 ** -3 - 2.0 ** -6), "γ₂"


def test_witness_edge_cases():
    """Zero polynomial, linear part and vanishing columns"""
    alg = _constant_algebra()
    with pytest.raises(ValueError):
        independence_witness(alg, Polynomial.from_terms([((1, 1), 1), ((1, 1), -1)]))
    assert independence_witness(alg, Polynomial({(1,): 1, (2,): 1})).status == "linear part", "x₁ + x₁² ≠ 0"
    blank = TimesAlgebra(ConstantColumns((0j,)), 8)
    missing = independence_witness(blank, Polynomial({(2,): 1}), budget=50)
    assert missing.status == "witness not found at budget" and not missing.found, "zero column never witnesses"

    dense = TimesAlgebra(DenseColumnEnumeration(), 16)
    assert independence_witness(dense, Polynomial({(2,): 1})).witness_index == 1, "E₀ = (−1) gives P = 1"


def test_random_polynomials_have_a_pure_lead(rng):
    """Lowest degree j ≥ 2, at most three variables, X₁^j in the lowest part"""
    for _ in range(50):
        P = random_polynomial(rng)
        j = P.lowest_degree
        assert 2 <= j <= 4 and P.degree <= 4, f"degrees {P.degrees}"
        assert 1 <= P.num_variables <= 3, "at most three variables"
        assert abs(P.coefficients[(j,)]) >= 0.5, "X₁^j carries a coefficient of modulus ≥ 1/2"
        assert P.homogeneous_part(1).is_zero, "no linear part"


def test_random_witness_suite(rng):
    """Twenty random polynomials all get sound witnesses on both schedules"""
    for alg in (_constant_algebra(), TimesAlgebra(DenseColumnEnumeration(), 16)):
        suite = random_witness_suite(alg, rng, 20)
        assert suite["cases"] == 20 and len(suite["details"]) == 20, "one entry per polynomial"
        assert suite["passed"] and suite["sound"] == 20, f"unsound cases: {suite['details']}"
        assert all(case["status"] == "witness found" for case in suite["details"]), "no linear parts"


def test_witness_soundness_rejects_misses():
    """A budget miss or a bogus linear-part claim is not sound"""
    alg = _constant_algebra()
    P = Polynomial({(2,): 1, (3,): -1})
    assert witness_is_sound(alg, P, independence_witness(alg, P)), "X₁² − X₁³ has a sound witness"
    blank = TimesAlgebra(ConstantColumns((0j,)), 8)
    missing = independence_witness(blank, Polynomial({(2,): 1}), budget=20)
    assert not witness_is_sound(blank, Polynomial({(2,): 1}), missing), "budget misses are unsound"
    linear = independence_witness(alg, Polynomial({(1,): 1, (2,): 1}))
    assert not witness_is_sound(alg, P, linear), "a linear-part claim needs a linear part"


def test_build_product_from_descriptor():
    """Descriptors become products; bad ones are configuration errors"""
    times = build_product(AlgebraDescriptor(product="times", column_schedule="constant",
                                            columns=[[(1.0, 0.0)]], rank=8))
    assert isinstance(times, TimesProduct) and times.algebra.rank == 8, "× product with rank 8"
    assert isinstance(build_product(AlgebraDescriptor(product="hadamard")), HadamardProduct), "hadamard"
    with pytest.raises(InvalidConfigError):
        build_product(AlgebraDescriptor(product="phi"))
    with pytest.raises(InvalidConfigError):
        build_product(AlgebraDescriptor(product="phi", phi=[("1", 2.0, 0.0)]))
    with pytest.raises(InvalidConfigError):
        build_product(AlgebraDescriptor(product="times", column_schedule="sparse"))
