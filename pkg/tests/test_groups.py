"""Group table layer: validation, invariants, isomorphism, holomorphs."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bracekit.errors import IdentityNotZero, NotAssociative, NotLatinSquare
from bracekit.groups import (
    _as_rows,
    automorphism_group,
    canonical_form,
    center,
    centralizer,
    commutator_subgroup,
    conjugacy_class_sizes,
    cyclic_group,
    dihedral_group,
    direct_product_group,
    group_commuting_probability,
    holomorph,
    is_isomorphic,
    is_normal,
    is_subgroup,
    isomorphisms,
    klein_four_group,
    quaternion_group,
    quotient_group,
    regular_subgroups,
    relabel,
    subgroup_closure,
    validate_group,
)

# a Latin square with identity 0 that is not a group
NONASSOC = (
    (0, 1, 2, 3, 4),
    (1, 0, 3, 4, 2),
    (2, 3, 4, 0, 1),
    (3, 4, 1, 2, 0),
    (4, 2, 0, 1, 3),
)


def test_validate_rejects_identity_elsewhere():
    with pytest.raises(IdentityNotZero):
        validate_group([[1, 0], [0, 1]])


def test_validate_rejects_repeated_entry():
    with pytest.raises(NotLatinSquare):
        validate_group([[0, 1, 2], [1, 1, 0], [2, 0, 1]])


def test_validate_rejects_nonassociative_loop():
    with pytest.raises(NotAssociative):
        validate_group(NONASSOC)


def test_constructors_validate():
    for G in (
        cyclic_group(1),
        cyclic_group(7),
        klein_four_group(),
        dihedral_group(4),
        quaternion_group(),
        direct_product_group(cyclic_group(2), cyclic_group(4)),
    ):
        validate_group(G.op)


def test_cyclic_group_orders():
    G = cyclic_group(6)
    assert sorted(G.element_orders) == [1, 2, 3, 3, 6, 6]
    assert G.is_abelian


def test_quaternion_structure():
    q8 = quaternion_group()
    assert center(q8) == (0, 1)
    assert sorted(q8.element_orders) == [1, 2, 4, 4, 4, 4, 4, 4]
    assert not q8.is_abelian
    assert commutator_subgroup(q8) == (0, 1)


def test_dihedral_structure():
    d3 = dihedral_group(3)
    assert len(commutator_subgroup(d3)) == 3
    assert sorted(conjugacy_class_sizes(d3)) == [1, 2, 3]
    assert center(d3) == (0,)


def test_centralizer_and_subgroups():
    q8 = quaternion_group()
    # the cyclic subgroup generated by i
    assert subgroup_closure(q8, {2}) == (0, 1, 2, 3)
    assert is_subgroup(q8, (0, 1, 2, 3))
    assert is_normal(q8, (0, 1, 2, 3))
    assert centralizer(q8, 2) == (0, 1, 2, 3)


def test_quotient_of_quaternion_by_center():
    q8 = quaternion_group()
    Q, cmap = quotient_group(q8, center(q8))
    assert Q.n == 4
    assert set(Q.element_orders) <= {1, 2}
    assert len(set(cmap)) == 4


def test_commuting_probability_values():
    assert group_commuting_probability(dihedral_group(3)) == Fraction(1, 2)
    assert group_commuting_probability(quaternion_group()) == Fraction(5, 8)
    assert group_commuting_probability(dihedral_group(4)) == Fraction(5, 8)
    assert group_commuting_probability(cyclic_group(12)) == 1


def test_isomorphism_classification_order_4():
    z4, k4 = cyclic_group(4), klein_four_group()
    assert not is_isomorphic(z4, k4)
    assert is_isomorphic(dihedral_group(2), k4)
    assert isomorphisms(z4, k4) == []


def test_automorphism_counts():
    assert len(automorphism_group(cyclic_group(4))) == 2
    assert len(automorphism_group(klein_four_group())) == 6
    assert len(automorphism_group(quaternion_group())) == 24
    c2 = cyclic_group(2)
    e8 = direct_product_group(direct_product_group(c2, c2), c2)
    assert len(automorphism_group(e8)) == 168


@given(st.permutations(list(range(1, 4))))
def test_canonical_form_relabeling_invariant(tail):
    sigma = [0] + list(tail)
    G = dihedral_group(2)
    H = validate_group(_as_rows(relabel(G.np_op, sigma).tolist()))
    assert canonical_form(G)[0].op == canonical_form(H)[0].op


@given(st.permutations(list(range(1, 8))))
@settings(max_examples=25, deadline=None)
def test_canonical_form_relabeling_invariant_q8(tail):
    sigma = [0] + list(tail)
    G = quaternion_group()
    H = validate_group(_as_rows(relabel(G.np_op, sigma).tolist()))
    assert canonical_form(G)[0].op == canonical_form(H)[0].op


def test_canonical_witness_recovers_canonical_table():
    G = dihedral_group(4)
    C, sigma = canonical_form(G)
    assert _as_rows(relabel(G.np_op, sigma).tolist()) == C.op


def test_holomorph_orders_and_regular_subgroups():
    k4 = klein_four_group()
    hol = holomorph(k4)
    assert hol.degree == 4
    assert hol.group.n == 24
    assert len(regular_subgroups(hol)) == 4

    z4 = cyclic_group(4)
    hol4 = holomorph(z4)
    assert hol4.group.n == 8
    assert len(regular_subgroups(hol4)) == 2


def test_regular_subgroups_are_regular():
    hol = holomorph(cyclic_group(6))
    for R in regular_subgroups(hol):
        assert len(R) == 6
        # transitive on points and free: images of 0 all distinct
        assert len({hol.perms[r][0] for r in R}) == 6


def test_direct_product_group_shape():
    G = direct_product_group(cyclic_group(2), cyclic_group(3))
    assert G.n == 6
    assert is_isomorphic(G, cyclic_group(6))
