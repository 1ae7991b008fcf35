"""Reduction of an equation by multiplicative order.

Units of the same order s generate the same cyclic subgroup, so for any
two of them g_2 = g_1^l with gcd(l, s) = 1; terms therefore partition
into groups indexed by the distinct orders among the g_i, and the number
of groups mu is at most d(q-1) (orders divide q-1, one group per
divisor at most).  The grouping keeps every variable: it exhibits the
relations, it does not eliminate exponents.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .arith import QueryCounter, bsgs_dlog, divisor_count, factorize
from .charsum import ExpEquation
from .errors import CapExceeded, OrderMismatch
from .fields import FieldElement, FieldSpec
from .instances import random_equation

MU_REPORT_CAP = 1 << 62


def _verify_order(g: FieldElement, s: int) -> bool:
    one = g.spec.one()
    if g ** s != one:
        return False
    return all(g ** (s // p) != one for p, _ in factorize(s).prime_powers)


def relate_same_order(g1: FieldElement, g2: FieldElement, s: int,
                      counter: QueryCounter | None = None) -> int:
    """l with g1^l = g2, gcd(l, s) = 1, for g1, g2 both of order s."""
    for g in (g1, g2):
        if not _verify_order(g, s):
            raise OrderMismatch(f"{g!r} does not have order {s}")
    l = bsgs_dlog(g1, s, g2, counter)
    assert l is not None, "same order implies same cyclic subgroup"
    if l == 0:
        l = 1  # only when s = 1, where g1 = g2 = one and any l works
    assert math.gcd(l, s) == 1
    assert g1 ** l == g2
    return l


@dataclass(frozen=True)
class OrderGroup:
    order: int
    rep_index: int  # lowest original index in the group
    members: tuple[int, ...]  # original term indices, ascending
    relations: tuple[int, ...]  # per member: l with g_rep^l = g_member

    def to_dict(self) -> dict:
        return {"order": self.order, "rep_index": self.rep_index,
                "members": list(self.members),
                "relations": list(self.relations)}


@dataclass(frozen=True)
class ReducedEquation:
    eq: ExpEquation
    groups: tuple[OrderGroup, ...]  # descending order
    mu: int
    d_bound: int  # d(q-1)

    def to_dict(self) -> dict:
        return {"schema": 1, "kind": "reduced_equation",
                "eq": self.eq.to_dict(),
                "groups": [g.to_dict() for g in self.groups],
                "mu": self.mu, "d_bound": self.d_bound}


def reduce_equation(eq: ExpEquation,
                    counter: QueryCounter | None = None) -> ReducedEquation:
    """Group terms by order and verify the base-power relations."""
    by_order: dict[int, list[int]] = {}
    for i, s in enumerate(eq.orders):
        by_order.setdefault(s, []).append(i)
    groups = []
    for s in sorted(by_order, reverse=True):
        members = tuple(by_order[s])
        rep = members[0]
        g_rep = eq.terms[rep][1]
        relations = tuple(
            1 if i == rep else relate_same_order(g_rep, eq.terms[i][1], s,
                                                 counter)
            for i in members)
        groups.append(OrderGroup(s, rep, members, relations))
    mu = len(groups)
    d_bound = divisor_count(eq.q - 1)
    assert mu <= d_bound, "more distinct orders than divisors of q-1"
    return ReducedEquation(eq, tuple(groups), mu, d_bound)


@dataclass(frozen=True)
class MuBoundReport:
    q: int
    d_bound: int
    mu_values: tuple[int, ...]  # one per sampled equation
    max_mu: int
    n: int
    samples: int
    seed: int

    def to_dict(self) -> dict:
        return {"schema": 1, "kind": "mu_bound_report", "q": self.q,
                "d_bound": self.d_bound, "max_mu": self.max_mu,
                "mu_values": list(self.mu_values), "n": self.n,
                "samples": self.samples, "seed": self.seed}


def mu_bound_report(spec: FieldSpec, samples: int = 100, n: int = 4,
                    seed: int = 0) -> MuBoundReport:
    """Empirical mu over random equations versus the d(q-1) bound."""
    q = spec.cardinality
    if q > MU_REPORT_CAP:
        raise CapExceeded(f"cardinality {q} exceeds cap")
    rng = random.Random(seed)
    mus = []
    for _ in range(samples):
        eq = random_equation(spec, n, rng)
        mus.append(len(set(eq.orders)))
    d_bound = divisor_count(q - 1)
    max_mu = max(mus)
    assert max_mu <= d_bound
    return MuBoundReport(q, d_bound, tuple(mus), max_mu, n, samples, seed)
