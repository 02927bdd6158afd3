import math

import pytest
from hypothesis import given, settings, strategies as st

from seqspace.arithmetic import fractional_power, hadamard, holder_power_bound, mth_root, power, principal_root
from seqspace.complex_seq import ComplexSeq, linear_combination
from seqspace.scaled import ScaledComplex, scaled_power
from seqspace.serialization import load_sequence, save_sequence
from seqspace.shifts import ShiftSpec, apply_shift, shift_factorization_check, shift_is_multiplicative_check
from seqspace.spaces import SpaceSpec, lp_norm, norm
from seqspace.weights import ConstantWeights, PowerWeights, TabulatedWeights, weights_from_mapping
from utils.errors import IncompatibleSpacesError

complex_values = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
vectors = st.lists(complex_values, min_size=1, max_size=12)


def test_lp_norms():
    """Norms on ℓ_p, c₀ and the Taylor seminorm"""
    x = ComplexSeq.from_values([3, 4])
    assert norm(x, SpaceSpec.Lp(2)) == 5.0, "‖(3,4)‖₂ should be 5"
    assert norm(x, SpaceSpec.Lp(1)) == 7.0, "‖(3,4)‖₁ should be 7"
    assert norm(x, SpaceSpec.C0()) == 4.0, "sup norm of (3,4) should be 4"

    taylor = ComplexSeq.from_values([1, -2j, 3], base=0)
    assert norm(taylor, SpaceSpec.TaylorL1()) == 6.0, "Taylor ‖(1,−2i,3)‖₁ should be 6"
    assert norm(ComplexSeq.zero(), SpaceSpec.Lp(3)) == 0.0, "empty sequence has norm 0"


def test_space_spec_validation():
    """ℓ_p needs finite p ≥ 1 and the dual exponent pairs correctly"""
    with pytest.raises(ValueError):
        SpaceSpec.Lp(0.5)
    assert SpaceSpec.Lp(2).dual_exponent == 2.0, "ℓ₂ is self-dual"
    assert SpaceSpec.Lp(1).dual_exponent == math.inf, "ℓ₁ pairs with ℓ_∞"
    assert SpaceSpec.C0().dual_exponent == 1.0, "c₀ pairs with ℓ₁"
    assert SpaceSpec.Lp(3).dual_exponent == pytest.approx(1.5), "1/3 + 1/q = 1"


def test_sequence_construction():
    """Indices must increase and stay above the base"""
    with pytest.raises(ValueError):
        ComplexSeq(1, ((3, 1), (2, 1)))
    with pytest.raises(ValueError):
        ComplexSeq(1, ((0, 1),))
    x = ComplexSeq(1, ((2, 0), (5, 1j)))
    assert x.top_index == 5, "top index ignores stored zeros"
    assert x.normalized().indices == (5,), "normalized drops stored zeros"
    assert list(x.to_dense()) == [0, 0, 0, 0, 1j], "dense view starts at the base"


def test_mixed_bases_rejected():
    """ℓ_p vectors and Taylor coefficients never combine"""
    with pytest.raises(IncompatibleSpacesError):
        ComplexSeq.unit(1) + ComplexSeq.unit(1, base=0)
    with pytest.raises(IncompatibleSpacesError):
        hadamard(ComplexSeq.unit(1), ComplexSeq.unit(1, base=0))


def test_power_and_hadamard():
    """Coordinatewise products and powers"""
    x = ComplexSeq.from_values([2, 1j])
    squared = power(x, 2)
    assert squared.get(1) == 4 and squared.get(2) == -1, "power((2, i), 2) should be (4, −1)"
    assert power(x, 2) == hadamard(x, x), "power(x, 2) must agree with x⊙x exactly"
    assert hadamard(ComplexSeq.unit(1), ComplexSeq.unit(2)).is_zero, "disjoint supports multiply to 0"
    with pytest.raises(ValueError):
        power(x, 0)


def test_principal_root_branch():
    """Principal roots keep the argument in (−π/m, π/m]"""
    assert principal_root(-8 + 0j, 3) == pytest.approx(1 + math.sqrt(3) * 1j), "cube root of −8"
    assert principal_root(16 + 0j, 4) == 2, "positive reals keep real roots"
    assert principal_root(0j, 5) == 0, "root of zero is zero"
    assert principal_root(complex(-4, -0.0), 2) == pytest.approx(2j), "−0.0 imaginary part keeps the upper branch"
    assert principal_root(complex(-8, -0.0), 3) == pytest.approx(principal_root(-8 + 0j, 3)), \
        "signed zero does not change the cube root"


@settings(max_examples=60, deadline=None)
@given(vectors, st.integers(min_value=1, max_value=6))
def test_root_power_consistency(values, m):
    """power(y^{1/m}, m) returns y within 1e−12"""
    y = ComplexSeq.from_values(values)
    back = power(mth_root(y, m), m)
    scale = max(1.0, lp_norm(y.values, math.inf))
    assert lp_norm((back - y).values, math.inf) <= 1e-12 * scale, "root then power should be the identity"


def test_fractional_power_and_holder_bound():
    """y^{j/m} and the bound l^{max(j/m, 1)}"""
    y = ComplexSeq.from_values([4, 9])
    assert list(fractional_power(y, 3, 2).values) == pytest.approx([8, 27]), "(4, 9)^{3/2} = (8, 27)"
    assert holder_power_bound(4, 1, 2) == 4.0, "j < m keeps the linear bound"
    assert holder_power_bound(4, 4, 2) == 16.0, "j > m raises l to j/m"


def test_rolewicz_shift():
    """λBⁿ moves coordinates down and multiplies by λⁿ"""
    result = apply_shift(ShiftSpec.rolewicz(2), 3, ComplexSeq.unit(5))
    assert result == ComplexSeq.from_mapping({2: 8}), "(2B)³e₅ should be 8e₂"
    assert apply_shift(ShiftSpec.rolewicz(2), 5, ComplexSeq.unit(5)).is_zero, "e₅ leaves after 5 steps"
    assert ShiftSpec.rolewicz(2).label == "2B", "label of 2B"
    with pytest.raises(ValueError):
        ShiftSpec.rolewicz(0.5)


def test_maclane_shift():
    """D acts on Taylor coefficients with falling-factorial weights"""
    result = apply_shift(ShiftSpec.maclane(), 2, ComplexSeq.unit(2, base=0))
    assert result.indices == (0,), "D²e₂ lives at index 0"
    assert result.get(0) == pytest.approx(2), "D²(z²) = 2"
    with pytest.raises(IncompatibleSpacesError):
        apply_shift(ShiftSpec.maclane(), 1, ComplexSeq.unit(2))


def test_forward_and_weighted_shift():
    """F shifts up; B_w with w ≡ 2 agrees with 2B"""
    x = ComplexSeq.from_values([1, 2, 3])
    assert apply_shift(ShiftSpec.forward(), 2, x).indices == (3, 4, 5), "F² shifts indices by 2"
    weighted = apply_shift(ShiftSpec.weighted(ConstantWeights(2)), 2, x)
    rolewicz = apply_shift(ShiftSpec.rolewicz(2), 2, x)
    assert list(weighted.values) == pytest.approx(list(rolewicz.values)), "constant weights give the Rolewicz operator"


def test_multiplicativity():
    """Only B and F are multiplicative; every backward shift factorizes"""
    x = ComplexSeq.from_values([1, 2j, -3, 4])
    y = ComplexSeq.from_values([0.5, 1, 1j, 2])
    assert shift_is_multiplicative_check(ShiftSpec.backward(), 2, x, y), "B is multiplicative"
    assert shift_is_multiplicative_check(ShiftSpec.forward(), 2, x, y), "F is multiplicative"
    assert not shift_is_multiplicative_check(ShiftSpec.rolewicz(3), 1, x, y), "3B is not multiplicative"
    assert shift_factorization_check(ShiftSpec.rolewicz(3), 2, x, y), "(λB)ⁿ(x⊙y) = (λB)ⁿx ⊙ Bⁿy"
    assert shift_factorization_check(ShiftSpec.weighted(PowerWeights(0.5)), 1, x, y), "B_w factorizes"


def test_power_weights_telescope():
    """w(2)⋯w(n) = n^α for power weights"""
    w = PowerWeights(0.5)
    assert w.product(2, 9).magnitude() == pytest.approx(3.0), "(9/1)^{1/2} = 3"
    assert w.product(5, 4).to_complex() == 1, "empty product is one"
    assert weights_from_mapping(w.describe()).product(2, 9).magnitude() == pytest.approx(3.0), \
        "describe() form rebuilds the same weights"


def test_tabulated_weights():
    """Explicit weights with a default"""
    w = TabulatedWeights({2: 3, 3: 0.5}, default=2)
    assert w.product(2, 4).magnitude() == pytest.approx(3.0), "3·0.5·2 = 3"
    with pytest.raises(KeyError):
        TabulatedWeights({2: 1}).weight(7)
    with pytest.raises(ValueError):
        TabulatedWeights({2: 0})


def test_scaled_arithmetic_survives_overflow():
    """λⁿ for n far beyond the double range keeps its log"""
    big = scaled_power(2 + 0j, 5000)
    assert big.log2_abs() == pytest.approx(5000), "log₂|2^5000| = 5000"
    product = big * scaled_power(2 + 0j, -5000)
    assert product.to_complex() == pytest.approx(1), "2^5000·2^−5000 = 1"
    assert ScaledComplex.of(0).is_zero, "zero stays zero"


def test_linear_combination():
    """Σ c_i x_i over a shared base"""
    combo = linear_combination([(2, ComplexSeq.unit(1)), (1j, ComplexSeq.unit(3))])
    assert combo == ComplexSeq.from_mapping({1: 2, 3: 1j}), "2e₁ + ie₃"


def test_sequence_file_round_trip(tmp_path):
    """Sequence JSON stores indices as decimal strings"""
    x = ComplexSeq.from_mapping({1: 1 + 2j, 10 ** 30: -0.5}, base=1)
    path = save_sequence(x, str(tmp_path / "x.json"))
    assert load_sequence(path) == x, "saved sequence should load back unchanged"


nonzero_values = st.complex_numbers(min_magnitude=1e-3, max_magnitude=10, allow_nan=False, allow_infinity=False)
entries = st.one_of(st.just(0j), nonzero_values)
SPACES = [SpaceSpec.Lp(1), SpaceSpec.Lp(2), SpaceSpec.Lp(3.5), SpaceSpec.C0(), SpaceSpec.TaylorL1()]


def _base(space: SpaceSpec) -> int:
    return 0 if space.kind == "taylor_l1" else 1


def _sup(x: ComplexSeq) -> float:
    return lp_norm(x.values, math.inf)


def _sup_gap(a: ComplexSeq, b: ComplexSeq) -> float:
    return _sup(a - b)


@settings(max_examples=200, deadline=None)
@given(st.lists(entries, min_size=1, max_size=16), st.lists(entries, min_size=1, max_size=16),
       st.sampled_from(SPACES))
def test_hadamard_is_submultiplicative(xs, ys, space):
    """‖x⊙y‖ ≤ ‖x‖‖y‖ in every supported norm"""
    x = ComplexSeq.from_values(xs, base=_base(space))
    y = ComplexSeq.from_values(ys, base=_base(space))
    assert norm(hadamard(x, y), space) <= norm(x, space) * norm(y, space) * (1 + 1e-12), \
        f"submultiplicativity fails in {space.label}"


@pytest.mark.slow
@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.label)
def test_submultiplicativity_suite(rng, space):
    """10⁴ seeded random pairs per space"""
    violations = 0
    for _ in range(10 ** 4):
        size = int(rng.integers(1, 21))
        values = rng.normal(size=(2, size)) + 1j * rng.normal(size=(2, size))
        values *= rng.uniform(0.01, 10.0, size=(2, 1))
        x = ComplexSeq.from_values(list(values[0]), base=_base(space))
        y = ComplexSeq.from_values(list(values[1]), base=_base(space))
        if norm(hadamard(x, y), space) > norm(x, space) * norm(y, space) * (1 + 1e-12):
            violations += 1
    assert violations == 0, f"{violations} pairs break ‖x⊙y‖ ≤ ‖x‖‖y‖ in {space.label}"


SEMIGROUP_SHIFTS = [
    ShiftSpec.forward(),
    ShiftSpec.rolewicz(2),
    ShiftSpec.rolewicz(1.5 + 0.5j),
    ShiftSpec.weighted(PowerWeights(0.5)),
    ShiftSpec.weighted(TabulatedWeights({2: 3, 5: 0.5j}, default=-1.25)),
    ShiftSpec.maclane(),
]


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(SEMIGROUP_SHIFTS), st.integers(min_value=0, max_value=10),
       st.integers(min_value=0, max_value=10), st.lists(entries, min_size=1, max_size=14))
def test_shift_powers_compose(op, n, k, values):
    """opⁿ(opᵏx) = opⁿ⁺ᵏx"""
    x = ComplexSeq.from_values(values, base=0 if op.kind == "maclane" else 1)
    stepwise = apply_shift(op, n, apply_shift(op, k, x))
    direct = apply_shift(op, n + k, x)
    if op.kind == "forward":
        assert stepwise == direct, "forward shifts compose exactly"
    scale = max(1.0, _sup(direct))
    assert _sup_gap(stepwise, direct) <= 1e-12 * scale, f"{op.label}: powers {n} and {k} do not compose"


@settings(max_examples=100, deadline=None)
@given(st.lists(entries, min_size=1, max_size=12), st.lists(entries, min_size=1, max_size=12),
       st.lists(entries, min_size=1, max_size=12), nonzero_values, nonzero_values)
def test_hadamard_is_bilinear(xs, zs, ys, a, b):
    """(ax + bz)⊙y = a(x⊙y) + b(z⊙y), and ⊙ is symmetric"""
    x, z, y = (ComplexSeq.from_values(v) for v in (xs, zs, ys))
    left = hadamard(linear_combination([(a, x), (b, z)]), y)
    right = linear_combination([(a, hadamard(x, y)), (b, hadamard(z, y))])
    scale = 1.0 + (abs(a) * _sup(x) + abs(b) * _sup(z)) * _sup(y)
    assert _sup_gap(left, right) <= 1e-12 * scale, "hadamard is not linear in its first argument"
    assert hadamard(x, y) == hadamard(y, x), "hadamard is commutative"


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=10), st.integers(min_value=1, max_value=5),
       st.integers(min_value=1, max_value=5), st.data(),
       st.sampled_from([SpaceSpec.Lp(1), SpaceSpec.Lp(2), SpaceSpec.Lp(3.5), SpaceSpec.C0()]))
def test_fractional_power_respects_holder_bound(l, j, m, data, space):
    """‖y‖ ≤ l on l coordinates gives ‖y^{j/m}‖ ≤ l^{max(j/m, 1)}"""
    values = data.draw(st.lists(entries, min_size=1, max_size=l))
    fraction = data.draw(st.floats(min_value=0.0, max_value=1.0))
    y = ComplexSeq.from_values(values)
    size = norm(y, space)
    if size > 0:
        y = y.scale(l * fraction / size)
    bound = holder_power_bound(l, j, m)
    assert norm(fractional_power(y, j, m), space) <= bound * (1 + 1e-12), \
        f"‖y^({j}/{m})‖ exceeds {bound} in {space.label}"
