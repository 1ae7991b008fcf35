"""Additive characters over F_q and character-sum solution counting.

The canonical additive character is psi(u) = exp(2 pi i Tr(u) / p).
Averaging psi(u mu) over all mu in F_q gives the indicator [u = 0], which
turns counting zeros of

    f_b(x_1, ..., x_n) = a_1 g_1^{x_1} + ... + a_n g_n^{x_n} - b

over a box X_1 x ... x X_{n-1} x X_n(r) (X_j = [0, s_j), last coordinate
truncated to r) into a complete sum over mu that factors term by term:

    N(r) = (1/q) sum_mu psi(-mu b) prod_j sum_{x_j < limit_j} psi(mu a_j g_j^{x_j}).

The inner sums are partial Gauss sums; at full order their modulus is at
most sqrt(q), which is what the density bounds in density.py rest on.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .arith import factorize, multiplicative_order
from .errors import CapExceeded, FieldMismatch, Overflow, ZeroElement
from .fields import DEFAULT_ENUM_CAP, FieldElement, FieldSpec, raw_ops

TERM_CAP = 16
LIST_CAP = 1 << 16
MU_CHUNK = 1 << 12
MAX_CARD = (1 << 63) - 1


@dataclass(frozen=True)
class ExpEquation:
    """The data (a_i, g_i)_{i=1..n} and b, with verified orders s_i."""

    spec: FieldSpec
    terms: tuple[tuple[FieldElement, FieldElement], ...]
    b: FieldElement
    orders: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.terms)

    @property
    def q(self) -> int:
        return self.spec.cardinality

    def to_dict(self) -> dict:
        return {
            "p": self.spec.p,
            "nu": self.spec.nu,
            "terms": [[a.packed(), g.packed()] for a, g in self.terms],
            "b": self.b.packed(),
            "orders": list(self.orders),
        }


def make_equation(spec: FieldSpec, terms, b, n_cap: int = TERM_CAP
                  ) -> ExpEquation:
    """Build an ExpEquation, computing and verifying the orders s_i.

    Term entries and b may be FieldElements or packed integers.
    """
    coerced = []
    for a, g in terms:
        a = spec.element(a)
        g = spec.element(g)
        if a.is_zero() or g.is_zero():
            raise ZeroElement("equation terms need nonzero a_i and g_i")
        coerced.append((a, g))
    if not coerced:
        raise ValueError("need at least one term")
    if len(coerced) > n_cap:
        raise CapExceeded(f"n = {len(coerced)} terms exceeds cap {n_cap}")
    b = spec.element(b)
    if b.spec != spec:
        raise FieldMismatch("b belongs to a different field")
    fact = factorize(spec.cardinality - 1)
    orders = tuple(multiplicative_order(g, fact).order for _, g in coerced)
    return ExpEquation(spec, tuple(coerced), b, orders)


def equation_from_dict(doc: dict) -> ExpEquation:
    from .fields import make_field
    spec = make_field(doc["p"], doc["nu"])
    eq = make_equation(spec, doc["terms"], doc["b"])
    if "orders" in doc and tuple(doc["orders"]) != eq.orders:
        raise ValueError("stored orders disagree with recomputation")
    return eq


@dataclass(frozen=True)
class SearchBox:
    """Sorted search domain X_1 x ... x X_{n-1} x X_n(r), s_1 >= ... >= s_n.

    perm[k] is the original term index occupying sorted position k; ties
    in the orders are broken by original index, so sorting is stable.
    """

    perm: tuple[int, ...]
    orders_sorted: tuple[int, ...]
    r: int
    card: int

    @property
    def n(self) -> int:
        return len(self.perm)

    def limits(self) -> tuple[int, ...]:
        """Per-coordinate ranges: full orders, last truncated to r."""
        return self.orders_sorted[:-1] + (self.r,)

    def to_dict(self) -> dict:
        return {"perm": list(self.perm),
                "orders_sorted": list(self.orders_sorted),
                "r": self.r, "card": self.card}


def make_box(eq: ExpEquation, r: int | None = None) -> SearchBox:
    """Sort the terms by descending order and truncate the last to r."""
    perm = tuple(sorted(range(eq.n), key=lambda i: (-eq.orders[i], i)))
    orders_sorted = tuple(eq.orders[i] for i in perm)
    if r is None:
        r = orders_sorted[-1]
    if not 1 <= r <= orders_sorted[-1]:
        raise ValueError(
            f"r = {r} outside [1, s_n = {orders_sorted[-1]}]")
    card = math.prod(orders_sorted[:-1]) * r
    if card > MAX_CARD:
        raise Overflow(f"box cardinality {card} exceeds 2^63-1")
    return SearchBox(perm, orders_sorted, r, card)


def sorted_terms(eq: ExpEquation, box: SearchBox
                 ) -> tuple[tuple[FieldElement, FieldElement], ...]:
    return tuple(eq.terms[i] for i in box.perm)


# ---------------------------------------------------------------------------
# character tables


class FieldTables:
    """Per-field caches: p-th roots of unity and trace contraction data.

    For u with coefficients (u_0..u_{nu-1}) and mu with (m_0..m_{nu-1}),
    Tr(mu u) = m . (H u) mod p where H[k][j] = Tr(X^{k+j}): trace is
    F_p-linear, so one Hankel matrix of monomial traces covers every
    product.  Prime fields skip all of this (Tr is the identity).
    """

    __slots__ = ("spec", "p", "nu", "q", "roots", "tau", "hankel")

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.nu = spec.nu
        self.q = spec.cardinality
        self.roots = np.exp(2j * np.pi * np.arange(self.p) / self.p)
        if self.nu > 1:
            taus = []
            x = spec.element([0, 1])
            cur = spec.one()
            for _ in range(2 * self.nu - 1):
                taus.append(cur.trace())
                cur = cur * x
            self.tau = tuple(taus)
            self.hankel = np.array(
                [[taus[k + j] for j in range(self.nu)]
                 for k in range(self.nu)], dtype=np.int64)
        else:
            self.tau = (1,)
            self.hankel = np.ones((1, 1), dtype=np.int64)

    def digits(self, packed: np.ndarray) -> np.ndarray:
        """Base-p digit matrix, one row per packed value."""
        powers = self.p ** np.arange(self.nu, dtype=np.int64)
        return (packed[:, None] // powers[None, :]) % self.p

    def trace_rows(self, packed: np.ndarray) -> np.ndarray:
        """Row k is H @ coeffs(packed[k]) mod p; Tr(mu u) = digits(mu) . row."""
        return (self.digits(packed) @ self.hankel) % self.p

    def traces(self, packed: np.ndarray) -> np.ndarray:
        if self.nu == 1:
            return packed % self.p
        return (self.digits(packed) @ np.array(self.tau[:self.nu],
                                               dtype=np.int64)) % self.p


_tables: dict[FieldSpec, FieldTables] = {}


def tables_for(spec: FieldSpec) -> FieldTables:
    """Cached FieldTables; refuses p beyond the root-table budget."""
    if spec.p > DEFAULT_ENUM_CAP:
        raise CapExceeded(
            f"characteristic {spec.p} exceeds root-table cap")
    tab = _tables.get(spec)
    if tab is None:
        tab = _tables[spec] = FieldTables(spec)
    return tab


def psi(u: FieldElement) -> complex:
    """Canonical additive character exp(2 pi i Tr(u) / p)."""
    tr = u.trace()
    p = u.spec.p
    if p <= DEFAULT_ENUM_CAP:
        return complex(tables_for(u.spec).roots[tr])
    return cmath.exp(2j * cmath.pi * tr / p)


def delta_indicator(u: FieldElement, cap: int = DEFAULT_ENUM_CAP) -> float:
    """(1/q) sum_mu psi(u mu): 1.0 at u = 0, else 0.0 (to 1e-9)."""
    spec = u.spec
    q = spec.cardinality
    if q > cap:
        raise CapExceeded(f"cardinality {q} exceeds cap {cap}")
    tab = tables_for(spec)
    if spec.nu == 1:
        vals = np.arange(q, dtype=np.int64) * u.packed() % spec.p
    else:
        t_u = (tab.hankel @ np.array(u.coeffs, dtype=np.int64)) % spec.p
        vals = (tab.digits(np.arange(q, dtype=np.int64)) @ t_u) % spec.p
    return float(tab.roots[vals].sum().real) / q


def _power_walk(a: FieldElement, g: FieldElement, limit: int) -> np.ndarray:
    """Packed values a * g^x for x = 0..limit-1."""
    ops = raw_ops(a.spec)
    gp = g.packed()
    out = np.empty(limit, dtype=np.int64)
    cur = a.packed()
    for x in range(limit):
        out[x] = cur
        cur = ops.mul(cur, gp)
    return out


def gauss_partial_sum(a: FieldElement, mu: FieldElement, g: FieldElement,
                      limit: int) -> complex:
    """sum_{x=0}^{limit-1} psi(a mu g^x); |.| <= sqrt(q) at limit = order."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if a.is_zero() or mu.is_zero() or g.is_zero():
        raise ZeroElement("gauss_partial_sum needs units")
    spec = a.spec
    vals = _power_walk(a * mu, g, limit)
    if spec.p <= DEFAULT_ENUM_CAP:
        tab = tables_for(spec)
        return complex(tab.roots[tab.traces(vals)].sum())
    # huge characteristic: no root table, exponentiate directly
    if spec.nu == 1:
        tr = vals % spec.p
    else:
        tr = np.array([spec.from_packed(int(v)).trace() for v in vals],
                      dtype=np.int64)
    return complex(np.exp(2j * np.pi * (tr / spec.p)).sum())


def count_via_charsum(eq: ExpEquation, box: SearchBox,
                      cap: int = DEFAULT_ENUM_CAP) -> float:
    """Evaluate N_{f_b}(r) by the factored complete character sum.

    Within 1e-6 * box.card of the exact integer count.  The mu-sum is
    accumulated with math.fsum in packed order, so the result does not
    depend on chunking.
    """
    spec = eq.spec
    q, p, nu = spec.cardinality, spec.p, spec.nu
    if q > cap:
        raise CapExceeded(f"cardinality {q} exceeds cap {cap}")
    tab = tables_for(spec)
    terms = sorted_terms(eq, box)
    limits = box.limits()
    walks = [_power_walk(a, g, limit)
             for (a, g), limit in zip(terms, limits)]
    neg_b = -eq.b
    contrib = np.empty(q, dtype=np.complex128)
    if nu == 1:
        nb = neg_b.packed()
        for lo in range(0, q, MU_CHUNK):
            hi = min(lo + MU_CHUNK, q)
            mus = np.arange(lo, hi, dtype=np.int64)
            prod = tab.roots[mus * nb % p].astype(np.complex128)
            for walk in walks:
                prod = prod * tab.roots[mus[:, None] * walk[None, :] % p
                                        ].sum(axis=1)
            contrib[lo:hi] = prod
    else:
        walk_rows = [tab.trace_rows(walk) for walk in walks]
        tb = (tab.hankel @ np.array(neg_b.coeffs, dtype=np.int64)) % p
        for lo in range(0, q, MU_CHUNK):
            hi = min(lo + MU_CHUNK, q)
            D = tab.digits(np.arange(lo, hi, dtype=np.int64))
            prod = tab.roots[(D @ tb) % p].astype(np.complex128)
            for rows in walk_rows:
                prod = prod * tab.roots[(D @ rows.T) % p].sum(axis=1)
            contrib[lo:hi] = prod
    return math.fsum(contrib.real) / q


def brute_count(eq: ExpEquation, box: SearchBox,
                cap: int = DEFAULT_ENUM_CAP,
                list_cap: int = LIST_CAP
                ) -> tuple[int, list[tuple[int, ...]] | None]:
    """Exhaustive count over the box; the oracle for every other count.

    Iterates the box in lexicographic order of the sorted coordinates.
    Returns (N, solutions) with solution tuples in *original* term order,
    or (N, None) when box.card exceeds list_cap.
    """
    if box.card > cap:
        raise CapExceeded(f"box cardinality {box.card} exceeds cap {cap}")
    spec = eq.spec
    n = box.n
    terms = sorted_terms(eq, box)
    limits = box.limits()
    keep_list = box.card <= list_cap
    solutions: list[tuple[int, ...]] | None = [] if keep_list else None
    count = 0
    if spec.nu == 1:
        p = spec.p
        walks = [[int(v) for v in _power_walk(a, g, limit)]
                 for (a, g), limit in zip(terms, limits)]
        target = eq.b.packed()
        x = [0] * n
        partial = [0] * (n + 1)
        for j in range(n):
            partial[j + 1] = (partial[j] + walks[j][0]) % p
        while True:
            if partial[n] == target:
                count += 1
                if keep_list:
                    sol = [0] * n
                    for k in range(n):
                        sol[box.perm[k]] = x[k]
                    solutions.append(tuple(sol))
            j = n - 1
            while j >= 0:
                x[j] += 1
                if x[j] < limits[j]:
                    break
                x[j] = 0
                j -= 1
            if j < 0:
                return count, solutions
            for k in range(j, n):
                partial[k + 1] = (partial[k] + walks[k][x[k]]) % p
    # extension fields: coefficient tuples, componentwise mod-p addition
    p = spec.p
    value_rows = []
    for (a, g), limit in zip(terms, limits):
        cur = a
        row = []
        for _ in range(limit):
            row.append(cur.coeffs)
            cur = cur * g
        value_rows.append(row)
    target = eq.b.coeffs
    x = [0] * n
    partial = [spec.zero().coeffs] * (n + 1)
    for j in range(n):
        partial[j + 1] = tuple(
            (s + t) % p for s, t in zip(partial[j], value_rows[j][0]))
    while True:
        if partial[n] == target:
            count += 1
            if keep_list:
                sol = [0] * n
                for k in range(n):
                    sol[box.perm[k]] = x[k]
                solutions.append(tuple(sol))
        j = n - 1
        while j >= 0:
            x[j] += 1
            if x[j] < limits[j]:
                break
            x[j] = 0
            j -= 1
        if j < 0:
            return count, solutions
        for k in range(j, n):
            partial[k + 1] = tuple(
                (s + t) % p for s, t in zip(partial[k], value_rows[k][x[k]]))
