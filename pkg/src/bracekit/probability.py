"""Brace centralizers, exact commuting probability, and the bound predicates."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .braces import (
    SkewBrace,
    _check,
    _prime_divisors,
    annihilator,
    cyclic_brace,
    gamma_plus,
    star,
)
from .errors import BadCyclicParameter, GapViolation
from .groups import ElementSet, centralizer, group_commuting_probability


@dataclass(frozen=True)
class CentralizerSuite:
    """The five centralizer-style sets attached to one element."""

    x: int
    cb: ElementSet
    cb_left: ElementSet
    cb_right: ElementSet
    fix_left: ElementSet
    fix_right: ElementSet


def centralizer_suite(B: SkewBrace, x: int) -> CentralizerSuite:
    """Exhaustive scan for Cb, Cb^l, Cb^r, Fix^l, Fix^r of x.

    Asserts cb = cb_left ∩ cb_right and that cb is closed under the
    multiplicative operation and inverses.
    """
    _check(B, x)
    n = B.n
    lam = B.lambdas
    fix_left = tuple(b for b in range(n) if lam[b, x] == x)
    fix_right = tuple(b for b in range(n) if lam[x, b] == b)
    c_mul = set(centralizer(B.mul, x))
    c_add = set(centralizer(B.add, x))
    cb_left = tuple(b for b in fix_left if b in c_mul)
    cb_right = tuple(b for b in fix_right if b in c_add)
    cb = tuple(
        b
        for b in range(n)
        if B.star_table[x, b] == 0
        and B.gamma_circ_table[x, b] == 0
        and B.gamma_plus_table[x, b] == 0
    )
    assert cb == tuple(sorted(set(cb_left) & set(cb_right)))
    members = set(cb)
    assert 0 in members
    assert all(
        B.mul.op[a][b] in members and B.mul.inv[a] in members
        for a in members
        for b in members
    )
    return CentralizerSuite(
        x=x, cb=cb, cb_left=cb_left, cb_right=cb_right,
        fix_left=fix_left, fix_right=fix_right,
    )


def commuting_probability(B: SkewBrace) -> Fraction:
    """Exact Pb(B), computed by the direct pair count of the defining triple
    condition and, independently, by the centralizer sum; both must agree."""
    n = B.n
    direct = 0
    for a in range(n):
        for b in range(n):
            if (
                star(B, a, b) == 0
                and star(B, b, a) == 0
                and gamma_plus(B, a, b) == 0
            ):
                direct += 1
    by_centralizers = sum(len(centralizer_suite(B, x).cb) for x in range(n))
    assert direct == by_centralizers
    return Fraction(direct, n * n)


def cyclic_pb_formula(n: int, d: int) -> Fraction:
    """Closed-form Pb for the brace Z_n with x o y = x + y + dxy.

    Sums gcd(dx mod n, n) over x, with gcd(0, n) = n; asserts agreement with
    the pair-count probability of the constructed table.
    """
    if d <= 0 or n % d != 0 or any(d % p != 0 for p in _prime_divisors(n)):
        raise BadCyclicParameter(d, n)
    total = sum(gcd((d * x) % n, n) for x in range(n))
    value = Fraction(total, n * n)
    assert value == commuting_probability(cyclic_brace(n, d))
    return value


@dataclass(frozen=True)
class BoundVerdict:
    name: str
    applicable: bool
    holds: Optional[bool]
    lhs: Optional[Fraction]
    rhs: Optional[Fraction]

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "applicable": self.applicable,
            "holds": self.holds,
            "lhs": _frac_json(self.lhs),
            "rhs": _frac_json(self.rhs),
        }


def _frac_json(x: Optional[Fraction]) -> Optional[dict]:
    if x is None:
        return None
    return {"num": str(x.numerator), "den": str(x.denominator)}


@dataclass(frozen=True)
class BoundReport:
    d: int
    pb: Fraction
    verdicts: tuple[BoundVerdict, ...]

    @property
    def all_hold(self) -> bool:
        return all(v.holds for v in self.verdicts if v.applicable)

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "pb": _frac_json(self.pb),
            "verdicts": [v.to_json_dict() for v in self.verdicts],
        }


def _second_smallest_prime(n: int) -> Optional[int]:
    ps = _prime_divisors(n)
    return ps[1] if len(ps) >= 2 else None


def bound_report(B: SkewBrace) -> BoundReport:
    """Evaluate every commuting-probability bound whose hypotheses hold for B."""
    n = B.n
    pb = commuting_probability(B)
    ann = annihilator(B)
    d = n // len(ann)
    p = _prime_divisors(n)[0] if n > 1 else None
    verdicts: list[BoundVerdict] = []

    def add(name: str, applicable: bool, lhs=None, rhs=None, holds=None):
        verdicts.append(BoundVerdict(name, applicable, holds, lhs, rhs))

    # 2/|B| <= Pb, for |B| > 1
    if n > 1:
        lhs = Fraction(2, n)
        add("lower-2-over-order", True, lhs, pb, lhs <= pb)
    else:
        add("lower-2-over-order", False)

    # (2d-1)/d^2 <= Pb <= (d+1)/(2d)
    lo, hi = Fraction(2 * d - 1, d * d), Fraction(d + 1, 2 * d)
    add("lower-annihilator-index", True, lo, pb, lo <= pb)
    add("upper-annihilator-index", True, pb, hi, pb <= hi)

    # Pb <= min(Pr(B,+), Pr(B,o))
    gm = min(group_commuting_probability(B.add), group_commuting_probability(B.mul))
    add("upper-group-min", True, pb, gm, pb <= gm)

    # Pb <= (p+d-1)/(pd), smallest prime p of |B|
    if p is not None:
        rhs = Fraction(p + d - 1, p * d)
        add("upper-smallest-prime", True, pb, rhs, pb <= rhs)
    else:
        add("upper-smallest-prime", False)

    # strict-centralizer refinement: if Ann ⊊ Cb(x) for all x, Pb >= (pd+d-p)/d^2
    if p is not None and d > 1:
        hyp = all(
            set(ann) < set(centralizer_suite(B, x).cb) for x in range(n)
        )
        if hyp:
            lhs = Fraction(p * d + d - p, d * d)
            add("lower-strict-centralizers", True, lhs, pb, lhs <= pb)
        else:
            add("lower-strict-centralizers", False)
    else:
        add("lower-strict-centralizers", False)

    # non-prime-power quotient refinement
    q = _second_smallest_prime(n)
    if p is not None and d > 1 and len(_prime_divisors(d)) >= 2 and q is not None:
        s = q if p * p > q else p * p
        rhs = (
            Fraction(1, p)
            + Fraction(len(ann) * (p - 1) - 1, p * n)
            + Fraction(1, s * n)
        )
        add("upper-non-prime-power", True, pb, rhs, pb <= rhs)
    else:
        add("upper-non-prime-power", False)

    # trivial-annihilator prime-power refinement
    if (
        p is not None
        and len(_prime_divisors(n)) == 1
        and len(ann) == 1
        and not _is_elementary_abelian(B)
    ):
        exp = _p_exponent(n, p)
        rhs = Fraction(1, p) + Fraction((p - 1) ** 2, p ** (exp + 2))
        add("upper-trivial-annihilator", True, pb, rhs, pb <= rhs)
    else:
        add("upper-trivial-annihilator", False)

    return BoundReport(d=d, pb=pb, verdicts=tuple(verdicts))


def _is_elementary_abelian(B: SkewBrace) -> bool:
    """Whether (B, o) is abelian with every non-identity element of prime order p."""
    mul = B.mul
    if not mul.is_abelian:
        return False
    primes = _prime_divisors(B.n)
    if len(primes) != 1:
        return B.n == 1
    p = primes[0]
    return set(mul.element_orders) <= {1, p}


def _p_exponent(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


class GapClass(enum.Enum):
    ONE = "ONE"
    THREE_QUARTERS = "THREE_QUARTERS"
    AT_MOST_5_8 = "AT_MOST_5_8"


def gap_classify(B: SkewBrace) -> GapClass:
    """Place Pb(B) in the gap trichotomy 1 / 3/4 / (0, 5/8].

    Asserts the exact characterizations: Pb = 3/4 iff the annihilator has
    index 2, and Pb = 5/8 iff the index is 4 with every outer centralizer of
    order |B|/2.  A value in (5/8, 1) other than 3/4 raises GapViolation.
    """
    pb = commuting_probability(B)
    ann = annihilator(B)
    d = B.n // len(ann)
    if pb == 1:
        assert d == 1
        return GapClass.ONE
    assert d > 1
    if pb == Fraction(3, 4):
        assert d == 2
        return GapClass.THREE_QUARTERS
    assert d != 2
    if pb > Fraction(5, 8):
        raise GapViolation(f"Pb = {pb} lies in (5/8, 1) \\ {{3/4}}")
    is_5_8 = pb == Fraction(5, 8)
    chr_5_8 = d == 4 and all(
        2 * len(centralizer_suite(B, x).cb) == B.n
        for x in range(B.n)
        if x not in set(ann)
    )
    assert is_5_8 == chr_5_8
    return GapClass.AT_MOST_5_8
