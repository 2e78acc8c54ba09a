"""Skew left braces on Cayley-table pairs: validation, lambda maps, star
products, ideals, quotients, series and nilpotency."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    BadCyclicParameter,
    DistributivityFails,
    IdentityMismatch,
    IndexOutOfRange,
    NotAnIdeal,
)
from .groups import (
    Bijection,
    ElementSet,
    GroupTable,
    _as_rows,
    automorphism_group,
    canonical_form,
    center,
    isomorphisms,
    relabel,
    subgroup_closure,
    validate_group,
    _trusted_group,
)


@dataclass(frozen=True)
class SkewBrace:
    """Two group tables on a shared element set with identity 0, satisfying
    skew left distributivity.  Immutable; build via validate_skew_brace."""

    n: int
    add: GroupTable
    mul: GroupTable

    @cached_property
    def lambdas(self) -> np.ndarray:
        """lam[a, b] = -a + (a o b); each row is an automorphism of (B, +)."""
        arr = self.add.np_op[self.add.np_inv[:, None], self.mul.np_op]
        arr.flags.writeable = False
        return arr

    @cached_property
    def star_table(self) -> np.ndarray:
        """star[a, b] = lam_a(b) - b."""
        arr = self.add.np_op[self.lambdas, self.add.np_inv[None, :]]
        arr.flags.writeable = False
        return arr

    @cached_property
    def gamma_plus_table(self) -> np.ndarray:
        add, inv = self.add.np_op, self.add.np_inv
        arr = add[add[add, inv[:, None]], inv[None, :]]
        arr.flags.writeable = False
        return arr

    @cached_property
    def gamma_circ_table(self) -> np.ndarray:
        mul, inv = self.mul.np_op, self.mul.np_inv
        arr = mul[mul[mul, inv[:, None]], inv[None, :]]
        arr.flags.writeable = False
        return arr

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "add": [list(r) for r in self.add.op],
            "mul": [list(r) for r in self.mul.op],
        }


def _distributivity_ok(add: np.ndarray, neg: np.ndarray, mul: np.ndarray) -> bool:
    lhs = mul[:, add]  # lhs[a,b,c] = a o (b + c)
    t1 = add[mul, neg[:, None]]  # (a o b) - a
    rhs = add[t1[:, :, None], mul[:, None, :]]
    return bool((lhs == rhs).all())


def validate_skew_brace(
    add_table: Sequence[Sequence[int]] | GroupTable,
    mul_table: Sequence[Sequence[int]] | GroupTable,
) -> SkewBrace:
    """Validate both groups and skew left distributivity over all triples."""
    add = add_table if isinstance(add_table, GroupTable) else validate_group(add_table)
    mul = mul_table if isinstance(mul_table, GroupTable) else validate_group(mul_table)
    if add.n != mul.n:
        raise IdentityMismatch(f"orders differ: {add.n} vs {mul.n}")
    a_op, neg, m_op = add.np_op, add.np_inv, mul.np_op
    if not _distributivity_ok(a_op, neg, m_op):
        for a in range(add.n):
            for b in range(add.n):
                for c in range(add.n):
                    left = mul.op[a][add.op[b][c]]
                    right = add.op[add.op[mul.op[a][b]][add.inv[a]]][mul.op[a][c]]
                    if left != right:
                        raise DistributivityFails(a, b, c)
    B = SkewBrace(n=add.n, add=add, mul=mul)
    _assert_lambda_laws(B)
    return B


def _assert_lambda_laws(B: SkewBrace) -> None:
    """lam_a is an additive automorphism; a -> lam_a is multiplicative-side
    homomorphic; a o b = a + lam_a(b).  These follow from the axioms, so a
    failure means a construction bug."""
    L, add, mul = B.lambdas, B.add.np_op, B.mul.np_op
    # a o b = a + lam_a(b)
    assert (mul == add[np.arange(B.n)[:, None], L]).all()
    for a in range(B.n):
        la = L[a]
        assert len(set(la.tolist())) == B.n and la[0] == 0
        assert (la[add] == add[la[:, None], la[None, :]]).all()
        # lam_{a o b} = lam_a . lam_b
        assert (L[mul[a]] == la[L]).all()


def star(B: SkewBrace, a: int, b: int) -> int:
    """a * b = lam_a(b) - b."""
    _check(B, a), _check(B, b)
    return int(B.star_table[a, b])


def gamma_plus(B: SkewBrace, a: int, b: int) -> int:
    _check(B, a), _check(B, b)
    return B.add.op[B.add.op[B.add.op[a][b]][B.add.inv[a]]][B.add.inv[b]]


def gamma_circ(B: SkewBrace, a: int, b: int) -> int:
    _check(B, a), _check(B, b)
    return B.mul.op[B.mul.op[B.mul.op[a][b]][B.mul.inv[a]]][B.mul.inv[b]]


def commutators(B: SkewBrace, a: int, b: int) -> tuple[int, int]:
    """Additive and multiplicative commutators of (a, b)."""
    return gamma_plus(B, a, b), gamma_circ(B, a, b)


def _check(B: SkewBrace, x: int) -> None:
    if not 0 <= x < B.n:
        raise IndexOutOfRange(x, B.n)


# -- constructors ------------------------------------------------------------


def trivial_brace(G: GroupTable) -> SkewBrace:
    return validate_skew_brace(G, G)


def opposite_brace(G: GroupTable) -> SkewBrace:
    op = tuple(tuple(G.op[b][a] for b in range(G.n)) for a in range(G.n))
    return validate_skew_brace(G, validate_group(op))


def cyclic_brace(n: int, d: int) -> SkewBrace:
    """Z_n with x o y = x + y + dxy; requires p | d | n for every prime p | n."""
    if d <= 0 or n % d != 0 or any(d % p != 0 for p in _prime_divisors(n)):
        raise BadCyclicParameter(d, n)
    add = [[(x + y) % n for y in range(n)] for x in range(n)]
    mul = [[(x + y + d * x * y) % n for y in range(n)] for x in range(n)]
    return validate_skew_brace(add, mul)


def direct_product(B1: SkewBrace, B2: SkewBrace) -> SkewBrace:
    """Componentwise brace product with pair (i, j) encoded as i + B1.n * j."""
    n1, n2 = B1.n, B2.n
    n = n1 * n2

    def build(t1, t2):
        return [
            [t1[i % n1][j % n1] + n1 * t2[i // n1][j // n1] for j in range(n)]
            for i in range(n)
        ]

    return validate_skew_brace(build(B1.add.op, B2.add.op), build(B1.mul.op, B2.mul.op))


def _prime_divisors(n: int) -> list[int]:
    out = []
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


# -- structure flags ---------------------------------------------------------


@dataclass(frozen=True)
class StructureFlags:
    trivial: bool
    two_sided: bool
    symmetric: bool
    lambda_homomorphic: bool

    def to_json_dict(self) -> dict:
        return {
            "trivial": self.trivial,
            "two_sided": self.two_sided,
            "symmetric": self.symmetric,
            "lambda_homomorphic": self.lambda_homomorphic,
        }


def is_two_sided(B: SkewBrace) -> bool:
    """(b + c) o a = (b o a) - a + (c o a) for all triples."""
    add, neg, mul = B.add.np_op, B.add.np_inv, B.mul.np_op
    lhs = mul[add[:, :, None], np.arange(B.n)[None, None, :]]  # lhs[b,c,a] = (b+c) o a
    t1 = add[mul, neg[None, :]]  # t1[b,a] = (b o a) - a
    rhs = add[t1[:, None, :], mul[None, :, :]]  # rhs[b,c,a] = t1[b,a] + (c o a)
    return bool((lhs == rhs).all())


def is_symmetric(B: SkewBrace) -> bool:
    return _distributivity_ok(B.mul.np_op, B.mul.np_inv, B.add.np_op)


def is_lambda_homomorphic(B: SkewBrace) -> bool:
    """lam_{a+b} = lam_a . lam_b for all pairs."""
    L, add = B.lambdas, B.add.np_op
    for a in range(B.n):
        if not (L[add[a]] == L[a][L]).all():
            return False
    return True


def structure_flags(B: SkewBrace) -> StructureFlags:
    return StructureFlags(
        trivial=B.add.op == B.mul.op,
        two_sided=is_two_sided(B),
        symmetric=is_symmetric(B),
        lambda_homomorphic=is_lambda_homomorphic(B),
    )


# -- socle, annihilator, subsets, ideals ------------------------------------


def ker_lambda(B: SkewBrace) -> ElementSet:
    """{a : a + b = a o b for all b}."""
    eq = (B.add.np_op == B.mul.np_op).all(axis=1)
    return tuple(int(a) for a in np.flatnonzero(eq))


def socle_and_annihilator(B: SkewBrace) -> tuple[ElementSet, ElementSet, ElementSet]:
    """(Ker(lambda), Soc(B), Ann(B)); Ann is verified to be an ideal."""
    ker = ker_lambda(B)
    zadd = set(center(B.add))
    soc = tuple(a for a in ker if a in zadd)
    zmul = set(center(B.mul))
    ann = tuple(a for a in soc if a in zmul)
    assert classify_subset(B, ann).is_ideal
    return ker, soc, ann


def annihilator(B: SkewBrace) -> ElementSet:
    return socle_and_annihilator(B)[2]


@dataclass(frozen=True)
class SubsetClass:
    is_sub_brace: bool
    is_left_ideal: bool
    is_ideal: bool


def classify_subset(B: SkewBrace, S: Iterable[int]) -> SubsetClass:
    members = set(S)
    if not members:
        return SubsetClass(False, False, False)
    for x in members:
        _check(B, x)
    sub = (
        0 in members
        and all(
            B.add.op[a][b] in members and B.mul.op[a][b] in members
            for a in members
            for b in members
        )
        and all(B.add.inv[a] in members and B.mul.inv[a] in members for a in members)
    )
    left_ideal = sub and all(
        B.lambdas[a, x] in members for a in range(B.n) for x in members
    )
    ideal = (
        left_ideal
        and all(
            B.add.op[B.add.op[g][x]][B.add.inv[g]] in members
            for g in range(B.n)
            for x in members
        )
        and all(
            B.mul.op[B.mul.op[g][x]][B.mul.inv[g]] in members
            for g in range(B.n)
            for x in members
        )
    )
    return SubsetClass(sub, left_ideal, ideal)


def _worklist_closure(B: SkewBrace, S: Iterable[int], rules) -> ElementSet:
    members = {0}
    members.update(S)
    changed = True
    while changed:
        changed = False
        snapshot = tuple(members)
        for rule in rules:
            for x in rule(snapshot):
                if x not in members:
                    members.add(x)
                    changed = True
    return tuple(sorted(members))


def sub_brace_closure(B: SkewBrace, S: Iterable[int]) -> ElementSet:
    """Smallest sub-skew brace containing S (closure in both groups)."""
    for x in S:
        _check(B, x)

    def both_groups(snapshot):
        for a in snapshot:
            yield B.add.inv[a]
            yield B.mul.inv[a]
            for b in snapshot:
                yield B.add.op[a][b]
                yield B.mul.op[a][b]

    return _worklist_closure(B, S, [both_groups])


def left_ideal_closure(B: SkewBrace, S: Iterable[int]) -> ElementSet:
    for x in S:
        _check(B, x)

    def both_groups(snapshot):
        for a in snapshot:
            yield B.add.inv[a]
            yield B.mul.inv[a]
            for b in snapshot:
                yield B.add.op[a][b]
                yield B.mul.op[a][b]

    def lam_images(snapshot):
        for a in range(B.n):
            for x in snapshot:
                yield int(B.lambdas[a, x])

    return _worklist_closure(B, S, [both_groups, lam_images])


def ideal_closure(B: SkewBrace, S: Iterable[int]) -> ElementSet:
    for x in S:
        _check(B, x)

    def both_groups(snapshot):
        for a in snapshot:
            yield B.add.inv[a]
            yield B.mul.inv[a]
            for b in snapshot:
                yield B.add.op[a][b]
                yield B.mul.op[a][b]

    def lam_images(snapshot):
        for a in range(B.n):
            for x in snapshot:
                yield int(B.lambdas[a, x])

    def conjugates(snapshot):
        for g in range(B.n):
            for x in snapshot:
                yield B.add.op[B.add.op[g][x]][B.add.inv[g]]
                yield B.mul.op[B.mul.op[g][x]][B.mul.inv[g]]

    return _worklist_closure(B, S, [both_groups, lam_images, conjugates])


def quotient_brace(B: SkewBrace, I: Iterable[int]) -> tuple[SkewBrace, tuple[int, ...]]:
    """Quotient by an ideal; additive and multiplicative cosets coincide.

    Coset representatives are minimal elements; the coset of 0 maps to 0.
    """
    members = set(I)
    if not classify_subset(B, members).is_ideal:
        raise NotAnIdeal(f"{sorted(members)} is not an ideal")
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for x in range(B.n):
        if x in coset_of:
            continue
        add_coset = sorted(B.add.op[x][h] for h in members)
        mul_coset = sorted(B.mul.op[x][h] for h in members)
        assert add_coset == mul_coset
        for y in add_coset:
            coset_of[y] = len(reps)
        reps.append(add_coset[0])
    order = sorted(range(len(reps)), key=lambda i: reps[i])
    new_idx = {old: new for new, old in enumerate(order)}
    cmap = tuple(new_idx[coset_of[x]] for x in range(B.n))
    reps = [reps[i] for i in order]
    m = len(reps)
    add_q = [[cmap[B.add.op[reps[i]][reps[j]]] for j in range(m)] for i in range(m)]
    mul_q = [[cmap[B.mul.op[reps[i]][reps[j]]] for j in range(m)] for i in range(m)]
    return validate_skew_brace(add_q, mul_q), cmap


# -- series and nilpotency ---------------------------------------------------


def _star_set(B: SkewBrace, I: Iterable[int], J: Iterable[int]) -> ElementSet:
    """<x*y : x in I, y in J> as a subgroup of (B, +)."""
    gens = {int(B.star_table[x, y]) for x in I for y in J}
    return subgroup_closure(B.add, gens)


def series(B: SkewBrace, kind: str) -> list[ElementSet]:
    """Terms of one of the four standard chains, until stabilization.

    kind 'ann' ascends from Ann(B); 'gamma', 'star_left' and 'star_right'
    descend from B.  Gamma terms are verified to be ideals, star_left terms
    left ideals.
    """
    full = tuple(range(B.n))
    if kind == "ann":
        terms = [annihilator(B)]
        while True:
            prev = set(terms[-1])
            nxt = tuple(
                a
                for a in range(B.n)
                if all(
                    int(B.star_table[a, b]) in prev
                    and int(B.star_table[b, a]) in prev
                    and int(B.gamma_plus_table[a, b]) in prev
                    for b in range(B.n)
                )
            )
            if set(nxt) == prev or len(terms) > B.n:
                break
            terms.append(nxt)
        return terms
    if kind == "gamma":
        terms = [full]
        while True:
            prev = terms[-1]
            gens = {int(B.star_table[a, u]) for a in range(B.n) for u in prev}
            gens |= {int(B.star_table[u, a]) for a in range(B.n) for u in prev}
            gens |= {int(B.gamma_plus_table[a, u]) for a in range(B.n) for u in prev}
            nxt = subgroup_closure(B.add, gens)
            assert set(nxt) <= set(prev)
            if nxt == prev or len(terms) > B.n:
                break
            assert classify_subset(B, nxt).is_ideal
            terms.append(nxt)
        return terms
    if kind in ("star_left", "star_right"):
        terms = [full]
        while True:
            prev = terms[-1]
            if kind == "star_left":
                nxt = _star_set(B, full, prev)
            else:
                nxt = _star_set(B, prev, full)
            if nxt == prev or len(terms) > B.n:
                break
            if kind == "star_left":
                assert classify_subset(B, nxt).is_left_ideal
            else:
                assert classify_subset(B, nxt).is_ideal
            terms.append(nxt)
        return terms
    raise ValueError(f"unknown series kind {kind!r}")


def nilpotency_class(B: SkewBrace) -> Optional[int]:
    """Least n with Ann_n(B) = B, or None; cross-checked against the
    vanishing of the gamma chain."""
    if B.n == 1:
        return 0
    ann_terms = series(B, "ann")
    gamma_terms = series(B, "gamma")
    gamma_vanishes = gamma_terms[-1] == (0,)
    if len(ann_terms[-1]) == B.n:
        cls = len(ann_terms)
        assert gamma_vanishes and len(gamma_terms) == cls + 1
        return cls
    assert not gamma_vanishes
    return None


# -- brace isomorphisms and canonical forms ----------------------------------


def brace_isomorphisms(
    A: SkewBrace, B: SkewBrace, first_only: bool = False
) -> list[Bijection]:
    """Bijections that are isomorphisms for both tables, sorted by map.

    Filters the additive-group isomorphism list against the multiplicative
    tables (or the other way round, whichever candidate list is smaller).
    """
    if A.n != B.n:
        return []
    add_isos = isomorphisms(A.add, B.add)
    if not add_isos:
        return []
    mul_isos = isomorphisms(A.mul, B.mul)
    if not mul_isos:
        return []
    if len(mul_isos) < len(add_isos):
        cands, table_a, table_b = mul_isos, A.add.np_op, B.add.np_op
    else:
        cands, table_a, table_b = add_isos, A.mul.np_op, B.mul.np_op
    out = []
    for f in cands:
        m = np.array(f)
        if (m[table_a] == table_b[m[:, None], m[None, :]]).all():
            out.append(f)
            if first_only:
                break
    return sorted(out)


def is_brace_isomorphic(A: SkewBrace, B: SkewBrace) -> bool:
    return bool(brace_isomorphisms(A, B, first_only=True))


def canonical_pair(B: SkewBrace) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """Lexicographically minimal (add, mul) table pair over relabelings fixing 0.

    The minimizers of the add component are exactly the relabelings onto the
    additive canonical form composed with its automorphisms, so only those
    need scanning for the mul component.
    """
    add_c, sigma0 = canonical_form(B.add)
    auts = automorphism_group(add_c)
    mul8 = B.mul.np_op.astype(np.uint8)
    s0 = np.array(sigma0, dtype=np.uint8)
    best = None
    for alpha in auts:
        sigma = np.array(alpha, dtype=np.uint8)[s0]
        m = relabel(mul8, sigma).tobytes()
        if best is None or m < best:
            best = m
    mul_rows = _as_rows(
        np.frombuffer(best, dtype=np.uint8).reshape(B.n, B.n).tolist()
    )
    return add_c.op, mul_rows


def canonical_brace(B: SkewBrace) -> SkewBrace:
    add_rows, mul_rows = canonical_pair(B)
    return SkewBrace(n=B.n, add=_trusted_group(add_rows), mul=_trusted_group(mul_rows))


def sub_braces(B: SkewBrace) -> list[ElementSet]:
    """All sub-skew braces, via closure of generator subsets with dedup."""
    found: set[ElementSet] = {(0,), tuple(range(B.n))}
    frontier = [(0,)]
    while frontier:
        new: list[ElementSet] = []
        for S in frontier:
            for g in range(1, B.n):
                if g in S:
                    continue
                T = sub_brace_closure(B, set(S) | {g})
                if T not in found:
                    found.add(T)
                    new.append(T)
        frontier = new
    return sorted(found, key=lambda s: (len(s), s))


def ideals(B: SkewBrace) -> list[ElementSet]:
    return [S for S in sub_braces(B) if classify_subset(B, S).is_ideal]
