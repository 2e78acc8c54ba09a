"""Finite group arithmetic on Cayley tables.

Groups are given as n x n multiplication tables over elements 0..n-1 with the
identity pinned at index 0.  Element subsets are sorted tuples of indices and
bijections (isomorphisms, automorphisms) are length-n tuples mapping old index
to new index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    IdentityNotZero,
    IndexOutOfRange,
    NotAssociative,
    NotLatinSquare,
    NotNormal,
)

ElementSet = tuple[int, ...]
Bijection = tuple[int, ...]


@dataclass(frozen=True)
class GroupTable:
    """A finite group as a Cayley table with identity 0.  Immutable."""

    n: int
    op: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...] = field(compare=False)

    @cached_property
    def np_op(self) -> np.ndarray:
        arr = np.array(self.op, dtype=np.int64)
        arr.flags.writeable = False
        return arr

    @cached_property
    def np_inv(self) -> np.ndarray:
        arr = np.array(self.inv, dtype=np.int64)
        arr.flags.writeable = False
        return arr

    def mul(self, a: int, b: int) -> int:
        return self.op[a][b]

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.np_op == self.np_op.T).all())

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for a in range(self.n):
            k, x = 1, a
            while x != 0:
                x = self.op[x][a]
                k += 1
            orders.append(k)
        return tuple(orders)

    def power(self, a: int, k: int) -> int:
        x = 0
        for _ in range(k % self.element_orders[a]):
            x = self.op[x][a]
        return x

    def to_json_dict(self) -> dict:
        return {"n": self.n, "op": [list(row) for row in self.op]}


def _as_rows(table: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in row) for row in table)


def _trusted_group(op: tuple[tuple[int, ...], ...]) -> GroupTable:
    """Build a GroupTable from a table known to be a group (skips the n^3 check).

    Used for tables that are groups by construction, e.g. holomorphs, whose
    order makes the exhaustive associativity scan prohibitive.
    """
    n = len(op)
    inv = [0] * n
    for x in range(n):
        inv[x] = op[x].index(0)
    return GroupTable(n=n, op=op, inv=tuple(inv))


def validate_group(table: Sequence[Sequence[int]]) -> GroupTable:
    """Validate a Cayley table and return the corresponding GroupTable.

    Raises IdentityNotZero, NotLatinSquare or NotAssociative naming the first
    violating cell or triple.
    """
    op = _as_rows(table)
    n = len(op)
    if n == 0:
        raise IdentityNotZero(0, 0)
    for i, row in enumerate(op):
        if len(row) != n:
            raise NotLatinSquare(i, len(row), -1)
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise NotLatinSquare(i, j, v)
    for j in range(n):
        if op[0][j] != j:
            raise IdentityNotZero(0, j)
    for i in range(n):
        if op[i][0] != i:
            raise IdentityNotZero(i, 0)
    for i in range(n):
        if len(set(op[i])) != n:
            seen: set[int] = set()
            for j, v in enumerate(op[i]):
                if v in seen:
                    raise NotLatinSquare(i, j, v)
                seen.add(v)
    for j in range(n):
        col = [op[i][j] for i in range(n)]
        if len(set(col)) != n:
            seen = set()
            for i, v in enumerate(col):
                if v in seen:
                    raise NotLatinSquare(i, j, v)
                seen.add(v)
    arr = np.array(op, dtype=np.int64)
    lhs = arr[arr]  # lhs[x,y,z] = op[op[x,y], z]
    rhs = arr[:, arr]  # rhs[x,y,z] = op[x, op[y,z]]
    if not (lhs == rhs).all():
        bad = np.argwhere(lhs != rhs)[0]
        raise NotAssociative(int(bad[0]), int(bad[1]), int(bad[2]))
    inv = [0] * n
    for x in range(n):
        inv[x] = op[x].index(0)
    return GroupTable(n=n, op=op, inv=tuple(inv))


def assert_associative(G: GroupTable) -> None:
    """Re-assert associativity post-hoc (exhaustive)."""
    arr = G.np_op
    assert (arr[arr] == arr[:, arr]).all()


def _check_index(x: int, n: int) -> None:
    if not 0 <= x < n:
        raise IndexOutOfRange(x, n)


def centralizer(G: GroupTable, x: int) -> ElementSet:
    """Elements commuting with x."""
    _check_index(x, G.n)
    return tuple(y for y in range(G.n) if G.op[x][y] == G.op[y][x])


def center(G: GroupTable) -> ElementSet:
    members = set(range(G.n))
    for x in range(G.n):
        members &= set(centralizer(G, x))
    return tuple(sorted(members))


def subgroup_closure(G: GroupTable, S: Iterable[int]) -> ElementSet:
    """Smallest subgroup of G containing S, by worklist closure."""
    members = {0}
    work = []
    for s in S:
        _check_index(s, G.n)
        if s not in members:
            members.add(s)
            work.append(s)
    while work:
        x = work.pop()
        for new in (G.inv[x],) + tuple(G.op[x][y] for y in tuple(members)) + tuple(
            G.op[y][x] for y in tuple(members)
        ):
            if new not in members:
                members.add(new)
                work.append(new)
    return tuple(sorted(members))


def _closure_capped(mul_row, gens: Iterable[int], cap: int) -> Optional[frozenset[int]]:
    """Subgroup closure under a multiplication row-lookup, aborting above cap.

    mul_row(a, b) multiplies; 0 must be the identity.  Returns None when the
    closure exceeds cap elements.
    """
    members = {0}
    members.update(gens)
    frontier = list(members)
    while frontier:
        if len(members) > cap:
            return None
        new = []
        for a in frontier:
            for b in list(members):
                for c in (mul_row(a, b), mul_row(b, a)):
                    if c not in members:
                        members.add(c)
                        new.append(c)
                        if len(members) > cap:
                            return None
        frontier = new
    return frozenset(members)


def is_subgroup(G: GroupTable, H: Iterable[int]) -> bool:
    members = set(H)
    if 0 not in members:
        return False
    return all(G.op[a][b] in members and G.inv[a] in members for a in members for b in members)


def commutator_subgroup(G: GroupTable) -> ElementSet:
    comms = {G.op[G.op[x][y]][G.op[G.inv[x]][G.inv[y]]] for x in range(G.n) for y in range(G.n)}
    return subgroup_closure(G, comms)


def is_normal(G: GroupTable, H: Iterable[int]) -> bool:
    members = set(H)
    if not is_subgroup(G, members):
        return False
    return all(
        G.op[G.op[g][h]][G.inv[g]] in members for g in range(G.n) for h in members
    )


def conjugacy_class_sizes(G: GroupTable) -> tuple[int, ...]:
    seen: set[int] = set()
    sizes = []
    for x in range(G.n):
        if x in seen:
            continue
        cls = {G.op[G.op[g][x]][G.inv[g]] for g in range(G.n)}
        seen |= cls
        sizes.append(len(cls))
    return tuple(sorted(sizes))


def quotient_group(G: GroupTable, H: Iterable[int]) -> tuple[GroupTable, tuple[int, ...]]:
    """Quotient of G by a normal subgroup H; returns (quotient, coset map).

    Cosets are labelled by rank of their minimal representative, so the coset
    of 0 becomes the identity.
    """
    members = set(H)
    if not is_normal(G, members):
        raise NotNormal(f"subgroup {sorted(members)} is not normal")
    coset_of: dict[int, int] = {}
    reps = []
    for x in range(G.n):
        if x in coset_of:
            continue
        coset = sorted(G.op[x][h] for h in members)
        for y in coset:
            coset_of[y] = len(reps)
        reps.append(coset[0])
    order = sorted(range(len(reps)), key=lambda i: reps[i])
    relabel = {old: new for new, old in enumerate(order)}
    cmap = tuple(relabel[coset_of[x]] for x in range(G.n))
    reps = [reps[i] for i in order]
    m = len(reps)
    table = [[cmap[G.op[reps[i]][reps[j]]] for j in range(m)] for i in range(m)]
    return validate_group(table), cmap


def _generating_sequence(G: GroupTable) -> list[int]:
    """Greedy minimal-element generating sequence (canonical, increasing)."""
    gens: list[int] = []
    closed: ElementSet = (0,)
    while len(closed) < G.n:
        nxt = next(x for x in range(G.n) if x not in set(closed))
        gens.append(nxt)
        closed = subgroup_closure(G, gens)
    return gens


def _extend_by_words(
    G: GroupTable, H: GroupTable, gens: Sequence[int], images: Sequence[int]
) -> Optional[Bijection]:
    """Extend generator images to a full map via product derivations, or None."""
    img: dict[int, int] = {0: 0}
    for g, im in zip(gens, images):
        if g in img and img[g] != im:
            return None
        img[g] = im
    known = list(img)
    i = 0
    while len(img) < G.n:
        progressed = False
        known = list(img)
        for a in known:
            for b in known:
                p = G.op[a][b]
                q = H.op[img[a]][img[b]]
                if p in img:
                    if img[p] != q:
                        return None
                else:
                    img[p] = q
                    progressed = True
        if not progressed:
            return None
        i += 1
    mapped = tuple(img[x] for x in range(G.n))
    if len(set(mapped)) != G.n:
        return None
    m = np.array(mapped)
    if not (m[G.np_op] == H.np_op[m[:, None], m[None, :]]).all():
        return None
    return mapped


def isomorphisms(
    G: GroupTable, H: GroupTable, first_only: bool = False
) -> list[Bijection]:
    """All group isomorphisms G -> H, lexicographically sorted by map.

    Backtracks over generator images, pruning on element-order and
    conjugacy-class profiles.
    """
    if G.n != H.n:
        return []
    if sorted(G.element_orders) != sorted(H.element_orders):
        return []
    if conjugacy_class_sizes(G) != conjugacy_class_sizes(H):
        return []
    gens = _generating_sequence(G)
    cands = [
        [y for y in range(H.n) if H.element_orders[y] == G.element_orders[g]]
        for g in gens
    ]
    out: list[Bijection] = []

    def rec(idx: int, chosen: list[int]) -> bool:
        if idx == len(gens):
            m = _extend_by_words(G, H, gens, chosen)
            if m is not None:
                out.append(m)
                return first_only
            return False
        for y in cands[idx]:
            if y in chosen:
                continue
            chosen.append(y)
            if rec(idx + 1, chosen):
                return True
            chosen.pop()
        return False

    rec(0, [])
    out.sort()
    return out


def is_isomorphic(G: GroupTable, H: GroupTable) -> bool:
    return bool(isomorphisms(G, H, first_only=True))


@lru_cache(maxsize=None)
def _automorphisms_cached(G: GroupTable) -> tuple[Bijection, ...]:
    return tuple(isomorphisms(G, G))


def automorphism_group(G: GroupTable) -> list[Bijection]:
    return list(_automorphisms_cached(G))


def relabel(G_op: np.ndarray, sigma: Sequence[int]) -> np.ndarray:
    """Relabel a Cayley table by a bijection sigma (old index -> new index)."""
    s = np.asarray(sigma)
    p = np.argsort(s)  # preimages: p[new] = old
    return s[G_op[np.ix_(p, p)]]


@lru_cache(maxsize=None)
def canonical_form(G: GroupTable) -> tuple[GroupTable, Bijection]:
    """Lexicographically minimal relabeling of G fixing 0, with a witness map.

    Brute force over relabelings; feasible for the supported order range and
    deterministic, which is what catalog ids need.
    """
    n = G.n
    if n == 1:
        return G, (0,)
    op = G.np_op.astype(np.uint8)
    best_bytes = None
    best_sigma = None
    sigma = np.zeros(n, dtype=np.uint8)
    for per in itertools.permutations(range(1, n)):
        sigma[1:] = per
        m = relabel(op, sigma).tobytes()
        if best_bytes is None or m < best_bytes:
            best_bytes = m
            best_sigma = tuple(int(v) for v in sigma)
    arr = np.frombuffer(best_bytes, dtype=np.uint8).reshape(n, n)
    table = _as_rows(arr.tolist())
    return _trusted_group(table), best_sigma


def group_commuting_probability(G: GroupTable) -> Fraction:
    """Pr(G): fraction of commuting pairs, exact."""
    count = int((G.np_op == G.np_op.T).sum())
    return Fraction(count, G.n * G.n)


# -- standard small groups ---------------------------------------------------


def cyclic_group(n: int) -> GroupTable:
    return validate_group([[(i + j) % n for j in range(n)] for i in range(n)])


def direct_product_group(G: GroupTable, H: GroupTable) -> GroupTable:
    """Direct product with pair (i, j) encoded as i + G.n * j."""
    n1, n2 = G.n, H.n
    table = [
        [
            G.op[i1][j1] + n1 * H.op[i2][j2]
            for j1, j2 in ((j % n1, j // n1) for j in range(n1 * n2))
        ]
        for i1, i2 in ((i % n1, i // n1) for i in range(n1 * n2))
    ]
    return validate_group(table)


def klein_four_group() -> GroupTable:
    return direct_product_group(cyclic_group(2), cyclic_group(2))


def dihedral_group(m: int) -> GroupTable:
    """Dihedral group of order 2m: rotations r^i -> i, reflections s r^i -> m + i."""
    n = 2 * m

    def mul(a: int, b: int) -> int:
        ra, fa = a % m, a // m
        rb, fb = b % m, b // m
        # (s^fa r^ra)(s^fb r^rb) = s^(fa+fb) r^(rb + (-1)^fb ra)  with s r = r^-1 s
        r = (rb + (ra if fb == 0 else -ra)) % m
        return r + m * ((fa + fb) % 2)

    return validate_group([[mul(a, b) for b in range(n)] for a in range(n)])


def quaternion_group() -> GroupTable:
    """Q8 with elements 1, -1, i, -i, j, -j, k, -k as indices 0..7."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]

    def mul_name(a: str, b: str) -> str:
        def split(x: str) -> tuple[int, str]:
            return (-1, x[1:]) if x.startswith("-") else (1, x)

        sa, ua = split(a)
        sb, ub = split(b)
        base = {
            ("1", "1"): (1, "1"),
            ("1", "i"): (1, "i"),
            ("1", "j"): (1, "j"),
            ("1", "k"): (1, "k"),
            ("i", "1"): (1, "i"),
            ("j", "1"): (1, "j"),
            ("k", "1"): (1, "k"),
            ("i", "i"): (-1, "1"),
            ("j", "j"): (-1, "1"),
            ("k", "k"): (-1, "1"),
            ("i", "j"): (1, "k"),
            ("j", "i"): (-1, "k"),
            ("j", "k"): (1, "i"),
            ("k", "j"): (-1, "i"),
            ("k", "i"): (1, "j"),
            ("i", "k"): (-1, "j"),
        }
        s, u = base[(ua, ub)]
        s *= sa * sb
        return u if s == 1 else "-" + u

    idx = {name: i for i, name in enumerate(names)}
    return validate_group(
        [[idx[mul_name(a, b)] for b in names] for a in names]
    )


# -- holomorph and regular subgroups ----------------------------------------


@dataclass(frozen=True)
class Holomorph:
    """Hol(G) = G x Aut(G) acting faithfully on 0..G.n-1 as x -> a + phi(x)."""

    group: GroupTable
    perms: tuple[tuple[int, ...], ...]
    degree: int


def holomorph(G: GroupTable) -> Holomorph:
    n = G.n
    auts = automorphism_group(G)
    perms = {tuple(G.op[a][phi[x]] for x in range(n)) for a in range(n) for phi in auts}
    ident = tuple(range(n))
    ordered = [ident] + sorted(p for p in perms if p != ident)
    P = np.array(ordered, dtype=np.int64)
    m = len(ordered)
    weights = n ** np.arange(n, dtype=np.int64)
    codes = P @ weights
    order = np.argsort(codes)
    sorted_codes = codes[order]
    rows = []
    for g in range(m):
        comp = P[g][P]  # comp[h] = P[g] o P[h]
        cc = comp @ weights
        rows.append(tuple(int(v) for v in order[np.searchsorted(sorted_codes, cc)]))
    table = _trusted_group(tuple(rows))
    return Holomorph(group=table, perms=tuple(ordered), degree=n)


def _uniform_cycle_length(perm: Sequence[int]) -> Optional[int]:
    """Cycle length if all cycles of perm have equal length > 1, else None."""
    n = len(perm)
    seen = [False] * n
    length = None
    for start in range(n):
        if seen[start]:
            continue
        k, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            k += 1
        if k == 1:
            return None
        if length is None:
            length = k
        elif length != k:
            return None
    return length


def regular_subgroups(hol: Holomorph) -> list[ElementSet]:
    """All order-n subgroups of Hol acting regularly on 0..n-1.

    Only fixed-point-free elements with uniform cycle length dividing n can
    sit in a semiregular subgroup, which prunes the generator search hard; a
    semiregular subgroup of full order n is automatically transitive.
    """
    n = hol.degree
    table = hol.group
    candidates = [
        g
        for g in range(1, table.n)
        if (L := _uniform_cycle_length(hol.perms[g])) is not None and n % L == 0
    ]
    cand_set = set(candidates)
    results: set[frozenset[int]] = set()
    seen: set[frozenset[int]] = set()
    op = table.op

    def mul(a: int, b: int) -> int:
        return op[a][b]

    def extend(S: frozenset[int], last: int) -> None:
        for g in candidates:
            if g <= last or g in S:
                continue
            T = _closure_capped(mul, S | {g}, n)
            if T is None:
                continue
            if any(x != 0 and x not in cand_set for x in T):
                continue
            if T in seen:
                continue
            seen.add(T)
            if len(T) == n:
                results.add(T)
            elif n % len(T) == 0:
                extend(T, g)

    base = frozenset({0})
    if n == 1:
        results.add(base)
    else:
        extend(base, -1)
    return sorted(tuple(sorted(R)) for R in results)
