import pytest
from hypothesis import given, settings, strategies as st

from famgen.bignat import bignat_log2, from_decimal, log2_pow2_plus, to_decimal
from famgen.blocks import block, tower_block
from famgen.bounds import density_limit, density_lower_bound
from famgen.conditions import (family_conditions_check, gap_deficits, progression_intersection,
                               tower_disjointness_check)
from famgen.descriptor import family_from_descriptor, family_to_descriptor
from famgen.dyadic import DyadicClassSpec, dyadic_class_members, in_dyadic_class
from famgen.family import dyadic_system, family_spec, materialize_family, r_min, tower_family
from utils.errors import InvalidConfigError


def test_block_bounds():
    """B(1,2) runs from 18 to 62 in steps of 2"""
    b = block(1, 2)
    assert (b.start, b.step, b.count, b.upper) == (16, 2, 23, 64), "B(1,2) parameters"
    assert (b.first, b.last) == (18, 62), "first and last element of B(1,2)"
    assert b.check_invariant(), "start + 2(N+1)l ≤ upper < start + 2(N+2)l"
    assert block(2, 2).count == 11, "B(2,2) has 11 elements"
    assert b.contains(40) and not b.contains(16) and not b.contains(64), "membership stays inside the block"
    assert b.element(1) == 18 and b.element(23) == 62, "element(i) = start + 2l·i"
    with pytest.raises(IndexError):
        b.element(24)


def test_block_materialization_limits():
    """Large radii stay symbolic"""
    assert len(block(1, 3).materialize()) == block(1, 3).count, "B(1,3) materializes fully"
    with pytest.raises(ValueError):
        block(1, 5).materialize()
    assert block(1, 5).materialize(horizon=2 ** 32 + 10) == (2 ** 32 + 2, 2 ** 32 + 4, 2 ** 32 + 6, 2 ** 32 + 8, 2 ** 32 + 10), \
        "a horizon cuts the block"


def test_r_min_values():
    """Smallest admissible radius per label"""
    assert r_min(1, 1) == 1, "r_min(1,1)"
    assert r_min(2, 1) == 2, "r_min(2,1)"
    assert r_min(1, 2) == 3, "r_min(1,2)"
    assert r_min(2, 2) == 3, "r_min(2,2)"
    with pytest.raises(ValueError):
        r_min(0, 1)


def test_dyadic_classes():
    """I(l,m) by bit pattern and by residue"""
    assert dyadic_class_members(DyadicClassSpec(1, 1), 20).elements == (1, 5, 9, 13, 17), "I(1,1) up to 20"
    assert dyadic_class_members(DyadicClassSpec(2, 1), 20).elements == (2, 10, 18), "I(2,1) up to 20"
    assert DyadicClassSpec(2, 2).residue == 6 and DyadicClassSpec(2, 2).modulus == 16, "I(2,2) is 6 mod 16"
    assert DyadicClassSpec(2, 2).first_at_least(7) == 22, "next member of I(2,2) after 6"
    with pytest.raises(ValueError):
        DyadicClassSpec(0, 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=4))
def test_dyadic_classes_partition(l, m):
    """Each positive n lies in exactly one I(l,m) once l, m range far enough"""
    n = (1 << (l - 1)) * ((1 << m) - 1) + (1 << (l + m)) * 3
    labels = [(a, b) for a in range(1, 8) for b in range(1, 8) if in_dyadic_class(n, a, b)]
    assert labels == [(l, m)], f"{n} should belong only to I({l},{m}), got {labels}"


def _digit_pattern(n: int, l: int, m: int) -> bool:
    """Binary digits of n from the least significant: l − 1 zeros, m ones, one zero."""
    digits = format(n, "b")[::-1] + "0" * (l + m + 1)
    return digits[:l + m] == "0" * (l - 1) + "1" * m + "0"


@pytest.mark.slow
def test_dyadic_membership_brute_force():
    """Residue rule and digit pattern agree for every n ≤ 2^16"""
    bound = 1 << 16
    for l in range(1, 5):
        for m in range(1, 5):
            mismatches = [n for n in range(1, bound + 1) if in_dyadic_class(n, l, m) != _digit_pattern(n, l, m)]
            assert not mismatches, f"I({l},{m}) disagrees at {mismatches[:5]}"
            members = dyadic_class_members(DyadicClassSpec(l, m), bound)
            assert len(members) == len(range(DyadicClassSpec(l, m).residue, bound + 1, 1 << (l + m))), \
                f"I({l},{m}) should hold one residue class below 2^16"


def test_family_materialization():
    """A(1,1) starts with B(1,1) = {6}"""
    spec = family_spec(1, 1)
    assert spec.radii(9) == [1, 5, 9], "radii of A(1,1)"
    assert materialize_family(spec, 4).elements == (6,), "A(1,1) below r = 4"
    assert family_spec(2, 2).radii(30) == [6, 22], "A(2,2) starts at r = 6"
    assert spec.label == "A(1,1)", "label"


def test_dyadic_system_passes_gap_conditions():
    """The dyadic system on [1,2]² is disjoint and separated"""
    report = family_conditions_check(dyadic_system(2), 6)
    assert report.passed, f"dyadic system should pass, first violation {report.first_violation}"
    assert report.blocks_checked > 0 and report.pairs_checked > 0, "blocks and pairs are counted"


def test_dyadic_system_on_three_by_three():
    """Labels in [1,3]²: exact blocks, disjoint progressions and charcond up to r_min + 3"""
    system = dyadic_system(3)
    r_cap = max(spec.r_min for spec in system.values()) + 3
    blocks = [(label, b) for label, spec in system.items() for b in spec.blocks(r_cap)]
    assert blocks, "some radius lies below the cap"
    for label, spec in system.items():
        for b in spec.blocks(spec.r_min + 3):
            assert b.check_invariant(), f"B({b.l},{b.r}) of A{label} breaks start + 2(N+1)l ≤ upper"
            assert spec.dyadic_class.contains(b.r) and b.r >= spec.r_min, f"radius {b.r} outside I{label}"
    for i, (left_label, left) in enumerate(blocks):
        for right_label, right in blocks[i + 1:]:
            if left_label != right_label:
                assert progression_intersection(left, right) is None, \
                    f"B({left.l},{left.r}) and B({right.l},{right.r}) share an element"
    for cap in (r_cap, 8):
        report = family_conditions_check(system, cap)
        assert report.passed, f"charcond fails at r_cap={cap}: {report.first_violation}"


def test_duplicate_family_overlaps():
    """Reusing A(1,1) under a second label is caught as an overlap"""
    spec = family_spec(1, 1)
    report = family_conditions_check({(1, 1): spec, (2, 2): spec}, 6)
    assert not report.passed, "two copies of the same family must fail"
    assert any(v["kind"] == "overlap" for v in report.violations), "the violation is an overlap"
    with pytest.raises(ValueError):
        family_conditions_check(dyadic_system(1), 4, condition="charcond3")


def test_gap_deficits():
    """Both inequalities can fail on one pair"""
    failures = gap_deficits(10, 11, (2, 1), (2, 1), "charcond")
    assert len(failures) == 2, "n' − n < l and m·n' < m'(n + l + l')"
    assert gap_deficits(10, 100, (1, 1), (1, 1), "charcond2") == [], "a wide gap passes charcond2"


def test_progression_intersection():
    """CRT on two blocks"""
    assert progression_intersection(block(1, 2), block(1, 2)) == 18, "a block meets itself at its first element"
    assert progression_intersection(block(1, 2), block(1, 3)) is None, "consecutive radii do not overlap"


def test_density_bound_approaches_limit():
    """The lower estimate tends to 1/(6l·2^ρ)"""
    assert density_limit(1, 1) == 1 / 96, "ρ = 4 gives 1/96"
    assert density_lower_bound(1, 1, 20) == pytest.approx(1 / 96, rel=0.05), "r = 20 within 5%"
    assert density_lower_bound(1, 1, 36) == pytest.approx(1 / 96, rel=1e-3), "r = 36 within 0.1%"
    with pytest.raises(ValueError):
        density_lower_bound(1, 1, 4)


def test_tower_families():
    """The scaled tower keeps blocks apart"""
    assert tower_block(1, 1).start == 2 ** 7, "e = ⌊4·1.75⌋ = 7"
    assert tower_disjointness_check(2, 6), "tower blocks never share an element"
    assert len(tower_family(1, 1, horizon=1 << 12)) > 0, "tower family is nonempty below 2^12"
    with pytest.raises(ValueError):
        tower_block(1, 1, beta=1.4)


def test_descriptor_round_trip():
    """Descriptors rebuild the same family and reject tampering"""
    spec = family_spec(1, 1)
    descriptor = family_to_descriptor(spec, 10)
    assert isinstance(descriptor["blocks"][-1]["start"], str), "big integers are decimal strings"
    assert family_from_descriptor(descriptor) == spec, "descriptor should rebuild A(1,1)"

    tampered = dict(descriptor, blocks=[dict(descriptor["blocks"][0], count="2")])
    with pytest.raises(InvalidConfigError):
        family_from_descriptor(tampered)
    with pytest.raises(InvalidConfigError):
        family_from_descriptor(dict(descriptor, r_min=2))


def test_bignat_helpers():
    """Logs and decimal strings of huge naturals"""
    assert bignat_log2(1 << 200) == 200.0, "log₂ 2^200"
    assert log2_pow2_plus(5000, 7) == pytest.approx(5000.0), "offset is negligible at 2^5000"
    assert log2_pow2_plus(4, -8) == 3.0, "log₂(16 − 8) = 3"
    big = 1 << 40000
    assert from_decimal(to_decimal(big)) == big, "decimal strings hold more than the default digit cap"
