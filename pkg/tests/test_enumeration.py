"""Catalog generation: group counts, brace counts, oracle agreement, JSONL."""

import hashlib

import pytest

from bracekit.braces import brace_isomorphisms, cyclic_brace, is_brace_isomorphic, opposite_brace, validate_skew_brace
from bracekit.enumeration import (
    all_group_tables,
    brute_force_oracle,
    catalog_from_jsonl,
    catalog_manifest,
    catalog_to_jsonl,
    groups_of_order,
    resolve_cap,
    skew_braces_of_order,
    skew_braces_on,
)
from bracekit.errors import OrderCapExceeded
from bracekit.groups import (
    cyclic_group,
    is_isomorphic,
    klein_four_group,
    quaternion_group,
    validate_group,
)

GROUP_COUNTS = [1, 1, 1, 2, 1, 2, 1, 5]
BRACE_COUNTS = [1, 1, 1, 4, 1, 6, 1, 47]


def test_group_counts():
    assert [len(groups_of_order(n)) for n in range(1, 9)] == GROUP_COUNTS


def test_groups_cross_check_against_table_enumeration():
    # independent route: complete Cayley tables, then collapse isomorphism
    for n in range(1, 7):
        reps = []
        for table in all_group_tables(n):
            G = validate_group(table)
            if not any(is_isomorphic(G, R) for R in reps):
                reps.append(G)
        assert len(reps) == len(groups_of_order(n))


def test_groups_are_canonical_and_distinct():
    for n in (4, 6, 8):
        groups = groups_of_order(n)
        for i, G in enumerate(groups):
            validate_group(G.op)
            for H in groups[i + 1 :]:
                assert not is_isomorphic(G, H)


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        groups_of_order(9)
    with pytest.raises(OrderCapExceeded):
        skew_braces_of_order(9)
    assert len(groups_of_order(9, cap=9)) == 2


def test_cap_env_override(monkeypatch):
    monkeypatch.setenv("BRACEKIT_CAP", "10")
    assert resolve_cap() == 10
    monkeypatch.delenv("BRACEKIT_CAP")
    assert resolve_cap() == 8
    assert resolve_cap(12) == 12


def test_skew_braces_on_small_groups():
    assert len(skew_braces_on(cyclic_group(2))) == 1
    z4_braces = skew_braces_on(cyclic_group(4))
    assert len(z4_braces) == 2
    assert any(is_brace_isomorphic(b, cyclic_brace(4, 2)) for b in z4_braces)
    q8_braces = skew_braces_on(quaternion_group())
    assert any(is_brace_isomorphic(b, opposite_brace(quaternion_group())) for b in q8_braces)
    assert len(skew_braces_on(klein_four_group())) == 2


def test_brace_counts():
    assert [len(skew_braces_of_order(n).entries) for n in range(1, 9)] == BRACE_COUNTS


def test_catalog_entries_validate_and_are_distinct():
    for n in (4, 6):
        entries = skew_braces_of_order(n).entries
        for i, e in enumerate(entries):
            validate_skew_brace(e.brace.add, e.brace.mul)
            assert e.id == (n, i + 1)
            for f in entries[i + 1 :]:
                assert brace_isomorphisms(e.brace, f.brace) == []


def test_oracle_matches_holomorph_method():
    for n in range(1, 7):
        holo = skew_braces_of_order(n)
        brute = brute_force_oracle(n)
        key = lambda c: [(e.brace.add.op, e.brace.mul.op) for e in c.entries]
        assert key(holo) == key(brute)


def test_oracle_add_side_scan_agrees():
    for n in (4, 6):
        mul_side = brute_force_oracle(n, side="mul")
        add_side = brute_force_oracle(n, side="add")
        key = lambda c: [(e.brace.add.op, e.brace.mul.op) for e in c.entries]
        assert key(mul_side) == key(add_side)


def test_serialization_round_trip():
    catalog = skew_braces_of_order(6)
    text = catalog_to_jsonl(catalog)
    back = catalog_from_jsonl(text)
    assert [i for i, _ in back] == [e.id for e in catalog.entries]
    assert all(
        b.add.op == e.brace.add.op and b.mul.op == e.brace.mul.op
        for (_, b), e in zip(back, catalog.entries)
    )


def test_manifest_hash_matches_body():
    catalog = skew_braces_of_order(4)
    manifest = catalog_manifest(catalog)
    body = catalog_to_jsonl(catalog)
    assert manifest["sha256"] == hashlib.sha256(body.encode()).hexdigest()
    assert manifest["count"] == 4
    assert manifest["method"] == "holomorph"
    # regression pin: catalog ids and content are stable across runs
    assert (
        manifest["sha256"]
        == "ed2722f3ec3d733753aa92b6abc625c69141955df9cb98c1380b44d1fb7092d0"
    )


def test_not_two_sided_count_at_order_8():
    entries = skew_braces_of_order(8).entries
    nts = [e for e in entries if not e.report.flags.two_sided]
    assert len(nts) == 5
