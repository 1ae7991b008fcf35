"""Integer and group-theoretic subroutines: factorization, multiplicative
orders, the divisor function, and baby-step giant-step discrete logarithms.

Group multiplications performed on behalf of a caller are charged to an
explicit QueryCounter owned by that caller; nothing here keeps ambient
state, so parallel callers each count their own work and merge by adding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import MemoryCap, ZeroElement
from .fields import FieldElement, _is_prime

TRIAL_DIVISION_BOUND = 10 ** 6
BSGS_TABLE_CAP = 1 << 24

is_prime = _is_prime


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of composite n, Brent's cycle variant.

    The polynomial is x^2 + c with c = 1, 2, 3, ... so runs are
    reproducible; n must be composite, odd, and have no factor below the
    trial division bound.
    """
    for c in range(1, 64):
        y, r, s = 2, 1, 1
        g = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                prod = 1
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    prod = prod * abs(x - y) % n
                g = math.gcd(prod, n)
                k += 128
            r *= 2
        if g == n:
            # backtrack one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise AssertionError(f"pollard rho failed on {n}")


@dataclass(frozen=True)
class Factorization:
    value: int
    prime_powers: tuple[tuple[int, int], ...]


def factorize(m: int) -> Factorization:
    """Complete prime factorization; trial division then Pollard rho."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    powers: dict[int, int] = {}
    rem = m
    for d in range(2, 4):
        while rem % d == 0:
            powers[d] = powers.get(d, 0) + 1
            rem //= d
    f = 5
    while f <= TRIAL_DIVISION_BOUND and f * f <= rem:
        for d in (f, f + 2):
            while rem % d == 0:
                powers[d] = powers.get(d, 0) + 1
                rem //= d
        f += 6
    stack = [rem] if rem > 1 else []
    while stack:
        v = stack.pop()
        if v == 1:
            continue
        if is_prime(v):
            powers[v] = powers.get(v, 0) + 1
            continue
        d = _pollard_brent(v)
        stack.append(d)
        stack.append(v // d)
    return Factorization(m, tuple(sorted(powers.items())))


def divisor_count(m: int) -> int:
    """d(m), the number of positive divisors."""
    return math.prod(e + 1 for _, e in factorize(m).prime_powers)


def naive_divisor_count(m: int) -> int:
    """Independent O(sqrt(m)) divisor enumeration, used as an oracle."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    count = 0
    d = 1
    while d * d <= m:
        if m % d == 0:
            count += 2 if d * d != m else 1
        d += 1
    return count


def divisors(m: int) -> list[int]:
    """All positive divisors of m, ascending."""
    divs = [1]
    for p, e in factorize(m).prime_powers:
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


@dataclass(frozen=True)
class OrderInfo:
    element: FieldElement
    order: int


@dataclass
class QueryCounter:
    """Accumulator for classical query accounting.

    group_mults counts field multiplications in the unit group (inversions
    are charged as one multiplication).  Buckets break the same total down
    by phase; they always sum to group_mults.
    """

    group_mults: int = 0
    dlog_calls: int = 0
    outer_points_visited: int = 0
    buckets: dict = field(default_factory=dict)

    def mults(self, k: int, bucket: str = "misc"):
        self.group_mults += k
        self.buckets[bucket] = self.buckets.get(bucket, 0) + k

    def merge(self, other: "QueryCounter"):
        self.group_mults += other.group_mults
        self.dlog_calls += other.dlog_calls
        self.outer_points_visited += other.outer_points_visited
        for key, v in other.buckets.items():
            self.buckets[key] = self.buckets.get(key, 0) + v

    def to_dict(self) -> dict:
        return {
            "group_mults": self.group_mults,
            "dlog_calls": self.dlog_calls,
            "outer_points_visited": self.outer_points_visited,
            "buckets": dict(sorted(self.buckets.items())),
        }


def counted_pow(x: FieldElement, k: int, counter: QueryCounter | None,
                bucket: str = "pow") -> FieldElement:
    """Square-and-multiply x^k, charging each multiplication performed."""
    if k < 0:
        raise ValueError("counted_pow needs k >= 0")
    spec = x.spec
    result = spec.one()
    base = x
    n_mults = 0
    while k:
        if k & 1:
            result = result * base
            n_mults += 1
        k >>= 1
        if k:
            base = base * base
            n_mults += 1
    if counter is not None:
        counter.mults(n_mults, bucket)
    return result


def multiplicative_order(g: FieldElement, fact: Factorization) -> OrderInfo:
    """Order of the unit g given the factorization of q - 1.

    Starts at s = q - 1 and strips every prime factor that keeps g^s = 1.
    """
    if g.is_zero():
        raise ZeroElement("zero has no multiplicative order")
    q_minus_1 = g.spec.cardinality - 1
    if fact.value != q_minus_1:
        raise ValueError(
            f"factorization is of {fact.value}, need q-1 = {q_minus_1}")
    one = g.spec.one()
    s = q_minus_1
    for p, e in fact.prime_powers:
        for _ in range(e):
            if g ** (s // p) == one:
                s //= p
            else:
                break
    return OrderInfo(g, s)


def subgroup_membership(g: FieldElement, s: int, target: FieldElement,
                        counter: QueryCounter | None = None) -> bool:
    """Whether target lies in <g>, for g of order s.

    F_q^x is cyclic, so <g> is exactly the set of units whose order
    divides s; the test is target^s = 1.
    """
    return counted_pow(target, s, counter, "membership") == g.spec.one()


class BsgsTable:
    """Reusable baby-step table for discrete logs to a fixed base g.

    Building costs about sqrt(s) multiplications once; each lookup costs
    at most another sqrt(s).  Solvers that resolve many targets against
    the same base share one table.
    """

    __slots__ = ("g", "s", "m", "table", "giant")

    def __init__(self, g: FieldElement, s: int,
                 counter: QueryCounter | None = None):
        if s < 1:
            raise ValueError(f"order must be >= 1, got {s}")
        m = math.isqrt(s - 1) + 1 if s > 1 else 1
        if m > BSGS_TABLE_CAP:
            raise MemoryCap(f"baby table of {m} entries exceeds cap")
        self.g = g
        self.s = s
        self.m = m
        table = {}
        cur = g.spec.one()
        n_mults = 0
        for j in range(m):
            table.setdefault(cur.packed(), j)
            if j + 1 < m:
                cur = cur * g
                n_mults += 1
        if counter is not None:
            counter.mults(n_mults, "bsgs_table")
        self.table = table
        # giant stride g^(-m); the inversion is charged as one mult
        gm = counted_pow(g, m, counter, "bsgs_table")
        self.giant = gm.inverse()
        if counter is not None:
            counter.mults(1, "bsgs_table")

    def lookup(self, target: FieldElement,
               counter: QueryCounter | None = None) -> int | None:
        """x in [0, s) with g^x = target, or None if target not in <g>."""
        cur = target
        n_mults = 0
        n_giant = (self.s + self.m - 1) // self.m
        found = None
        for i in range(n_giant):
            j = self.table.get(cur.packed())
            if j is not None:
                x = i * self.m + j
                if x < self.s:
                    found = x
                    break
            cur = cur * self.giant
            n_mults += 1
        if counter is not None:
            counter.mults(n_mults, "bsgs_lookup")
        return found


def bsgs_dlog(g: FieldElement, s: int, target: FieldElement,
              counter: QueryCounter | None = None) -> int | None:
    """Discrete log of target to base g of order s; None when absent."""
    if counter is not None:
        counter.dlog_calls += 1
    return BsgsTable(g, s, counter).lookup(target, counter)
