"""Skew brace layer: validation, star maps, ideals, series, canonical forms."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bracekit.braces import (
    SkewBrace,
    annihilator,
    brace_isomorphisms,
    canonical_pair,
    classify_subset,
    cyclic_brace,
    direct_product,
    gamma_circ,
    gamma_plus,
    ideal_closure,
    ideals,
    is_brace_isomorphic,
    ker_lambda,
    nilpotency_class,
    opposite_brace,
    quotient_brace,
    series,
    socle_and_annihilator,
    star,
    structure_flags,
    sub_brace_closure,
    sub_braces,
    trivial_brace,
    validate_skew_brace,
)
from bracekit.errors import BadCyclicParameter, DistributivityFails
from bracekit.groups import (
    _as_rows,
    cyclic_group,
    dihedral_group,
    klein_four_group,
    quaternion_group,
    relabel,
)


def test_validate_rejects_distributivity_failure():
    with pytest.raises(DistributivityFails):
        validate_skew_brace(cyclic_group(6).op, dihedral_group(3).op)
    with pytest.raises(DistributivityFails):
        validate_skew_brace(dihedral_group(3).op, cyclic_group(6).op)


def test_validate_rejects_twisted_cyclic():
    z4 = cyclic_group(4)
    twisted = _as_rows(relabel(z4.np_op, [0, 2, 1, 3]).tolist())
    with pytest.raises(DistributivityFails):
        validate_skew_brace(z4.op, twisted)


def test_trivial_brace_star_vanishes():
    B = trivial_brace(dihedral_group(3))
    assert all(star(B, a, b) == 0 for a in range(6) for b in range(6))
    assert structure_flags(B).trivial


def test_opposite_brace_of_quaternions():
    B = opposite_brace(quaternion_group())
    flags = structure_flags(B)
    assert flags.two_sided and not flags.trivial
    # a*b equals the additive commutator [-a, b]
    add = B.add
    for a in range(8):
        for b in range(8):
            na = add.inv[a]
            # [-a,b]+ = -a + b + a - b
            expect = add.op[add.op[add.op[na][b]][a]][add.inv[b]]
            assert star(B, a, b) == expect


def test_cyclic_brace_example():
    B = cyclic_brace(4, 2)
    assert star(B, 1, 1) == 2
    assert gamma_plus(B, 1, 3) == 0
    assert gamma_circ(B, 1, 3) == 0
    ker, soc, ann = socle_and_annihilator(B)
    assert ann == (0, 2)
    assert soc == (0, 2)
    assert ker == (0, 2)
    assert nilpotency_class(B) == 2


def test_cyclic_brace_parameter_check():
    with pytest.raises(BadCyclicParameter):
        cyclic_brace(4, 1)
    with pytest.raises(BadCyclicParameter):
        cyclic_brace(4, 3)
    cyclic_brace(4, 4)
    cyclic_brace(12, 6)


@given(st.sampled_from([(2, 2), (4, 2), (8, 2), (9, 3), (12, 6), (16, 4)]))
def test_cyclic_brace_always_validates(nd):
    n, d = nd
    B = cyclic_brace(n, d)
    validate_skew_brace(B.add, B.mul)


def test_socle_annihilator_nesting_on_catalog():
    from bracekit.enumeration import skew_braces_of_order

    for n in (4, 6, 8):
        for entry in skew_braces_of_order(n).entries:
            ker, soc, ann = socle_and_annihilator(entry.brace)
            assert set(ann) <= set(soc) <= set(ker)


def test_series_of_cyclic_example():
    B = cyclic_brace(4, 2)
    assert [len(t) for t in series(B, "gamma")] == [4, 2, 1]
    assert [len(t) for t in series(B, "ann")] == [2, 4]
    assert [len(t) for t in series(B, "star_left")] == [4, 2, 1]
    assert [len(t) for t in series(B, "star_right")] == [4, 2, 1]


def test_nilpotency_of_trivial_nonnilpotent_group():
    B = trivial_brace(dihedral_group(3))
    assert nilpotency_class(B) is None
    assert nilpotency_class(trivial_brace(cyclic_group(1))) == 0
    assert nilpotency_class(trivial_brace(cyclic_group(5))) == 1


def test_classify_subset():
    B = cyclic_brace(4, 2)
    full = classify_subset(B, range(4))
    assert full.is_sub_brace and full.is_left_ideal and full.is_ideal
    half = classify_subset(B, (0, 2))
    assert half.is_ideal
    assert not classify_subset(B, (0, 1)).is_sub_brace
    assert not classify_subset(B, ()).is_sub_brace


def test_closures():
    B = opposite_brace(quaternion_group())
    assert sub_brace_closure(B, {2}) == (0, 1, 2, 3)
    assert ideal_closure(B, {2}) == (0, 1, 2, 3)
    assert ideal_closure(B, {1}) == (0, 1)


def test_sub_braces_and_ideals_of_cyclic_example():
    B = cyclic_brace(4, 2)
    assert sub_braces(B) == [(0,), (0, 2), (0, 1, 2, 3)]
    assert ideals(B) == [(0,), (0, 2), (0, 1, 2, 3)]


def test_quotient_brace_cosets_agree():
    B = opposite_brace(quaternion_group())
    Q, cmap = quotient_brace(B, annihilator(B))
    assert Q.n == 4
    # both quotient groups are Klein four
    assert set(Q.add.element_orders) <= {1, 2}
    assert set(Q.mul.element_orders) <= {1, 2}
    assert cmap[0] == 0


def test_brace_isomorphism_distinguishes():
    assert not is_brace_isomorphic(cyclic_brace(4, 2), trivial_brace(cyclic_group(4)))
    assert is_brace_isomorphic(cyclic_brace(4, 2), cyclic_brace(4, 2))


def test_direct_product_flags_and_order():
    B = direct_product(cyclic_brace(4, 2), trivial_brace(cyclic_group(3)))
    assert B.n == 12
    validate_skew_brace(B.add, B.mul)
    assert ker_lambda(B) != ()


@given(st.permutations(list(range(1, 4))))
def test_canonical_pair_relabeling_invariant(tail):
    sigma = [0] + list(tail)
    B = cyclic_brace(4, 2)
    add = _as_rows(relabel(B.add.np_op, sigma).tolist())
    mul = _as_rows(relabel(B.mul.np_op, sigma).tolist())
    C = validate_skew_brace(add, mul)
    assert canonical_pair(B) == canonical_pair(C)


@settings(max_examples=20, deadline=None)
@given(st.permutations(list(range(1, 8))))
def test_canonical_pair_relabeling_invariant_order_8(tail):
    sigma = [0] + list(tail)
    B = opposite_brace(quaternion_group())
    add = _as_rows(relabel(B.add.np_op, sigma).tolist())
    mul = _as_rows(relabel(B.mul.np_op, sigma).tolist())
    C = validate_skew_brace(add, mul)
    assert canonical_pair(B) == canonical_pair(C)


def test_structure_flags_of_known_braces():
    assert structure_flags(cyclic_brace(4, 2)).two_sided
    assert structure_flags(trivial_brace(klein_four_group())).symmetric
    flags = structure_flags(opposite_brace(quaternion_group()))
    assert flags.two_sided and flags.symmetric
