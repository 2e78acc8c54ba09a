"""Exhaustive catalogs: all groups and all skew braces of a small order, up to
isomorphism, with an independent brute-force oracle for cross-checking."""

from __future__ import annotations

import hashlib
import itertools
import json
import os
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .braces import (
    SkewBrace,
    _distributivity_ok,
    canonical_pair,
    validate_skew_brace,
)
from .errors import OrderCapExceeded, ParseError
from .groups import (
    GroupTable,
    _as_rows,
    _trusted_group,
    automorphism_group,
    canonical_form,
    conjugacy_class_sizes,
    cyclic_group,
    holomorph,
    is_isomorphic,
    regular_subgroups,
    validate_group,
)
from .report import BraceReport, brace_report

DEFAULT_CAP = 8
GROUP_CATALOG_VERSION = "1"
CAP_ENV_VAR = "BRACEKIT_CAP"


def resolve_cap(cap: Optional[int] = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(CAP_ENV_VAR)
    if env is not None:
        return int(env)
    return DEFAULT_CAP


def _check_cap(n: int, cap: Optional[int]) -> None:
    limit = resolve_cap(cap)
    if n > limit:
        raise OrderCapExceeded(n, limit)


# -- groups of a given order -------------------------------------------------


def _prime_factors(n: int) -> list[int]:
    out = []
    m, p = n, 2
    while p * p <= m:
        while m % p == 0:
            out.append(p)
            m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def _cyclic_extensions(N: GroupTable, p: int) -> Iterator[GroupTable]:
    """Candidate extensions of N by a cyclic group of prime order p.

    Every solvable group has a normal subgroup of prime index, so running this
    over all (smaller group, prime) pairs reaches every group in the supported
    order range.  Invalid (automorphism, t^p) choices simply fail validation.
    """
    m = N.n
    n = m * p
    ident = tuple(range(m))
    for alpha in automorphism_group(N):
        powers = [ident]
        for _ in range(p - 1):
            powers.append(tuple(alpha[x] for x in powers[-1]))
        for z in range(m):
            zpow = [0]
            for _ in range(p):
                zpow.append(N.op[zpow[-1]][z])
            table = [
                [
                    N.op[N.op[x][powers[i][y]]][zpow[(i + j) // p]] + m * ((i + j) % p)
                    for y, j in ((c % m, c // m) for c in range(n))
                ]
                for x, i in ((r % m, r // m) for r in range(n))
            ]
            try:
                yield validate_group(table)
            except Exception:
                continue


def _fingerprint(G: GroupTable) -> tuple:
    return (
        tuple(sorted(G.element_orders)),
        conjugacy_class_sizes(G),
        G.is_abelian,
    )


_GROUPS_CACHE: dict[int, list[GroupTable]] = {}


def groups_of_order(n: int, cap: Optional[int] = None) -> list[GroupTable]:
    """All isomorphism classes of groups of order n, as canonical tables
    sorted by canonical form."""
    _check_cap(n, cap)
    if n in _GROUPS_CACHE:
        return list(_GROUPS_CACHE[n])
    if n == 1:
        out = [cyclic_group(1)]
    else:
        reps: dict[tuple, list[GroupTable]] = {}
        for p in sorted(set(_prime_factors(n))):
            for N in groups_of_order(n // p, cap=resolve_cap(cap)):
                for G in _cyclic_extensions(N, p):
                    key = _fingerprint(G)
                    bucket = reps.setdefault(key, [])
                    if not any(is_isomorphic(G, R) for R in bucket):
                        bucket.append(G)
        out = [canonical_form(G)[0] for bucket in reps.values() for G in bucket]
        out.sort(key=lambda G: G.op)
    _GROUPS_CACHE[n] = out
    return list(out)


def all_group_tables(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every Cayley table on 0..n-1 with identity 0 that forms a group.

    Independent cross-check for groups_of_order: backtracking over cells with
    Latin-square masks and associativity propagation, plus a full
    associativity re-check on completion.
    """
    if n == 1:
        yield ((0,),)
        return
    op = [[-1] * n for _ in range(n)]
    for j in range(n):
        op[0][j] = j
    for i in range(n):
        op[i][0] = i
    row_free = [set(range(n)) - {i} - {0} if i else set() for i in range(n)]
    col_free = [set(range(n)) - {j} - {0} if j else set() for j in range(n)]
    for i in range(1, n):
        row_free[i] = set(range(n)) - set(op[i][j] for j in range(n) if op[i][j] != -1)
        col_free[i] = set(range(n)) - set(op[a][i] for a in range(n) if op[a][i] != -1)
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]

    def assign(i: int, j: int, k: int, trail: list) -> bool:
        queue = [(i, j, k)]
        while queue:
            a, b, v = queue.pop()
            cur = op[a][b]
            if cur != -1:
                if cur != v:
                    return False
                continue
            if v not in row_free[a] or v not in col_free[b]:
                return False
            op[a][b] = v
            row_free[a].discard(v)
            col_free[b].discard(v)
            trail.append((a, b, v))
            # (a.b).c = a.(b.c) with the new cell as the pair (a, b)
            for c in range(n):
                u = op[b][c]
                if u == -1:
                    continue
                w1, w2 = op[v][c], op[a][u]
                if w1 != -1 and w2 == -1:
                    queue.append((a, u, w1))
                elif w2 != -1 and w1 == -1:
                    queue.append((v, c, w2))
                elif w1 != -1 and w1 != w2:
                    return False
            # (x.a).b = x.(a.b) with the new cell as the pair (a, b)
            for x in range(n):
                u = op[x][a]
                if u == -1:
                    continue
                w1, w2 = op[u][b], op[x][v]
                if w1 != -1 and w2 == -1:
                    queue.append((x, v, w1))
                elif w2 != -1 and w1 == -1:
                    queue.append((u, b, w2))
                elif w1 != -1 and w1 != w2:
                    return False
        return True

    def undo(trail: list, mark: int) -> None:
        while len(trail) > mark:
            a, b, v = trail.pop()
            op[a][b] = -1
            row_free[a].add(v)
            col_free[b].add(v)

    results: list[tuple[tuple[int, ...], ...]] = []

    def search(trail: list) -> Iterator[tuple[tuple[int, ...], ...]]:
        target = next(((i, j) for (i, j) in cells if op[i][j] == -1), None)
        if target is None:
            rows = _as_rows(op)
            arr = np.array(rows)
            if (arr[arr] == arr[:, arr]).all():
                yield rows
            return
        i, j = target
        for k in sorted(row_free[i] & col_free[j]):
            mark = len(trail)
            if assign(i, j, k, trail):
                yield from search(trail)
            undo(trail, mark)

    yield from search([])


# -- skew brace catalogs -----------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    id: tuple[int, int]
    brace: SkewBrace
    report: BraceReport


@dataclass(frozen=True)
class BraceCatalog:
    order: int
    entries: tuple[CatalogEntry, ...]
    method: str
    cap: int
    group_catalog_version: str = GROUP_CATALOG_VERSION

    @property
    def braces(self) -> list[SkewBrace]:
        return [e.brace for e in self.entries]


def _canonical_braces(raw_pairs: set) -> list[SkewBrace]:
    keys = {canonical_pair_from_rows(add, mul) for add, mul in raw_pairs}
    out = [
        SkewBrace(n=len(add), add=_trusted_group(add), mul=_trusted_group(mul))
        for add, mul in sorted(keys)
    ]
    return out


def canonical_pair_from_rows(add_rows, mul_rows):
    B = SkewBrace(
        n=len(add_rows), add=_trusted_group(add_rows), mul=_trusted_group(mul_rows)
    )
    return canonical_pair(B)


def skew_braces_on(A: GroupTable, cap: Optional[int] = None) -> list[SkewBrace]:
    """All skew braces with additive group A up to brace isomorphism, via
    regular subgroups of the holomorph of A.  Returns canonical-form braces."""
    _check_cap(A.n, cap)
    hol = holomorph(A)
    raw = set()
    for R in regular_subgroups(hol):
        by_zero = {hol.perms[r][0]: r for r in R}
        assert len(by_zero) == A.n
        mul_rows = tuple(hol.perms[by_zero[a]] for a in range(A.n))
        brace = validate_skew_brace(A, validate_group(mul_rows))
        raw.add((brace.add.op, brace.mul.op))
    return _canonical_braces(raw)


def _build_catalog(
    braces: list[SkewBrace], order: int, method: str, cap: int
) -> BraceCatalog:
    braces = sorted(braces, key=lambda b: (b.add.op, b.mul.op))
    entries = tuple(
        CatalogEntry(id=(order, k + 1), brace=b, report=brace_report(b))
        for k, b in enumerate(braces)
    )
    return BraceCatalog(order=order, entries=entries, method=method, cap=cap)


_CATALOG_CACHE: dict[tuple[int, str], BraceCatalog] = {}


def skew_braces_of_order(
    n: int, method: str = "holomorph", cap: Optional[int] = None
) -> BraceCatalog:
    """Catalog of all skew braces of order n up to brace isomorphism."""
    if method not in ("holomorph", "brute"):
        raise ValueError(f"unknown method {method!r}")
    _check_cap(n, cap)
    key = (n, method)
    if key in _CATALOG_CACHE:
        return _CATALOG_CACHE[key]
    if method == "brute":
        catalog = brute_force_oracle(n, cap=cap)
    else:
        seen: dict[tuple, SkewBrace] = {}
        for A in groups_of_order(n, cap=cap):
            for b in skew_braces_on(A, cap=cap):
                seen.setdefault((b.add.op, b.mul.op), b)
        catalog = _build_catalog(
            list(seen.values()), n, "holomorph", resolve_cap(cap)
        )
    _CATALOG_CACHE[key] = catalog
    return catalog


def brute_force_oracle(n: int, cap: Optional[int] = None, side: str = "mul") -> BraceCatalog:
    """Catalog by raw bijection scan, with no holomorph machinery.

    side='mul': for each additive group A and abstract group M, pull the
    multiplication back along every identity-fixing bijection onto M and keep
    the pairs satisfying skew left distributivity.  side='add' runs the
    mirrored scan with the multiplicative table fixed instead.
    """
    limit = resolve_cap(cap)
    if n > min(limit, 8):
        raise OrderCapExceeded(n, min(limit, 8))
    groups = groups_of_order(n, cap=cap)
    raw = set()
    for A in groups:
        a_op, a_neg = A.np_op, A.np_inv
        for M in groups:
            m_op = M.np_op
            for per in itertools.permutations(range(1, n)):
                f = np.array((0,) + per)
                finv = np.argsort(f)
                if side == "mul":
                    pulled = finv[m_op[np.ix_(f, f)]]
                    ok = _distributivity_ok(a_op, a_neg, pulled)
                    pair = (A.op, _as_rows(pulled.tolist()))
                else:
                    pulled = finv[a_op[np.ix_(f, f)]]
                    neg = (pulled == 0).argmax(axis=1)
                    ok = _distributivity_ok(pulled, neg, m_op)
                    pair = (_as_rows(pulled.tolist()), M.op)
                if ok:
                    raw.add(pair)
    return _build_catalog(_canonical_braces(raw), n, "brute_force", limit)


# -- serialization -----------------------------------------------------------


def catalog_to_jsonl(catalog: BraceCatalog) -> str:
    lines = []
    for e in catalog.entries:
        lines.append(
            json.dumps(
                {
                    "id": list(e.id),
                    "add": [list(r) for r in e.brace.add.op],
                    "mul": [list(r) for r in e.brace.mul.op],
                    "report": e.report.to_json_dict(),
                },
                sort_keys=True,
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")


def catalog_manifest(catalog: BraceCatalog) -> dict:
    body = catalog_to_jsonl(catalog)
    return {
        "order": catalog.order,
        "count": len(catalog.entries),
        "method": catalog.method,
        "cap": catalog.cap,
        "group_catalog_version": catalog.group_catalog_version,
        "sha256": hashlib.sha256(body.encode()).hexdigest(),
    }


def brace_from_json_dict(obj: dict) -> SkewBrace:
    try:
        add = obj["add"]
        mul = obj["mul"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"missing brace tables: {exc}") from exc
    return validate_skew_brace(add, mul)


def catalog_from_jsonl(text: str) -> list[tuple[tuple[int, int], SkewBrace]]:
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from exc
        out.append((tuple(obj.get("id", (0, 0))), brace_from_json_dict(obj)))
    return out
