"""Full-b density sweeps: deviation terms, the energy bound, and the
exceptional-b census.

For a fixed term family (a_j, g_j) and box, one pass over the box
histograms the value sum_j a_j g_j^{x_j} over F_q, giving N_{f_b}(r) for
every b at once.  Writing main = r prod_{l<n} s_l / q,

    Delta_b(r) = N_{f_b}(r) - main,      E(r) = sum_b Delta_b(r)^2,

the mean-value bound E(r) < q^{n-1} r forces all but q/delta^2 values of
b to satisfy |Delta_b(r)| < delta sqrt(r q^{n-2}).  Everything here is
exact: counts are integers, main and E are Fractions, and the census
compares integers, so boundary cases are deterministic.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .charsum import ExpEquation, SearchBox, sorted_terms, _power_walk
from .errors import BadDelta, CapExceeded, Overflow
from .fields import DEFAULT_ENUM_CAP

SWEEP_CARD_CAP = 1 << 22


@dataclass(frozen=True)
class DensityReport:
    """Per-b counts over one box; the constant term of eq is irrelevant."""

    eq: ExpEquation
    box: SearchBox
    counts: np.ndarray  # int64, counts[packed(b)] = N_{f_b}(r)
    main: Fraction
    energy: Fraction

    @property
    def q(self) -> int:
        return self.eq.q

    def delta(self, b_packed: int) -> Fraction:
        return int(self.counts[b_packed]) - self.main

    def deltas_float(self) -> np.ndarray:
        return self.counts.astype(np.float64) - float(self.main)

    def to_dict(self) -> dict:
        return {
            "eq": self.eq.to_dict(),
            "box": self.box.to_dict(),
            "counts": self.counts.tolist(),
            "main": [self.main.numerator, self.main.denominator],
            "energy": [self.energy.numerator, self.energy.denominator],
        }


def sweep_b(eq: ExpEquation, box: SearchBox,
            cap: int = DEFAULT_ENUM_CAP,
            card_cap: int = SWEEP_CARD_CAP) -> DensityReport:
    """Count N_{f_b}(r) for every b in one box pass (eq.b is ignored)."""
    spec = eq.spec
    q, p = spec.cardinality, spec.p
    if q > cap:
        raise CapExceeded(f"cardinality {q} exceeds cap {cap}")
    if box.card > card_cap:
        raise CapExceeded(f"box cardinality {box.card} exceeds cap {card_cap}")
    terms = sorted_terms(eq, box)
    limits = box.limits()
    if spec.nu == 1:
        acc = None
        for (a, g), limit in zip(terms, limits):
            walk = _power_walk(a, g, limit)
            if acc is None:
                acc = walk.copy()
            else:
                acc = (acc[:, None] + walk[None, :]).reshape(-1) % p
        counts = np.bincount(acc, minlength=q).astype(np.int64)
    else:
        nu = spec.nu
        acc = None
        for (a, g), limit in zip(terms, limits):
            cur = a
            rows = np.empty((limit, nu), dtype=np.int64)
            for x in range(limit):
                rows[x] = cur.coeffs
                cur = cur * g
            if acc is None:
                acc = rows.copy()
            else:
                acc = (acc[:, None, :] + rows[None, :, :]
                       ).reshape(-1, nu) % p
        powers = p ** np.arange(nu, dtype=np.int64)
        counts = np.bincount(acc @ powers, minlength=q).astype(np.int64)
    assert int(counts.sum()) == box.card
    main = Fraction(box.card, q)
    ssq = sum(c * c for c in counts.tolist())
    energy = Fraction(q * ssq - box.card * box.card, q)
    return DensityReport(eq, box, counts, main, energy)


def energy_bound_check(report: DensityReport) -> tuple[bool, Fraction]:
    """E(r) < q^(n-1) r, with the exact margin."""
    q, n = report.q, report.box.n
    bound = Fraction(q) ** (n - 1) * report.box.r
    margin = bound - report.energy
    return report.energy < bound, margin


@dataclass(frozen=True)
class CensusResult:
    """Exceptional-b census at one delta."""

    delta: float
    delta_sq: Fraction  # exact square of the delta actually used
    threshold_sq: Fraction  # delta^2 r q^(n-2)
    flags: tuple[bool, ...]  # flags[packed(b)]
    exceptional: tuple[int, ...]  # packed b values, ascending
    bound: Fraction  # q / delta^2
    size_ok: bool

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "delta_sq": [self.delta_sq.numerator, self.delta_sq.denominator],
            "threshold_sq": [self.threshold_sq.numerator,
                             self.threshold_sq.denominator],
            "exceptional": list(self.exceptional),
            "bound": [self.bound.numerator, self.bound.denominator],
            "size_ok": self.size_ok,
        }


def exceptional_census(report: DensityReport, delta) -> CensusResult:
    """All b with |Delta_b(r)| >= delta sqrt(r q^(n-2)), exactly.

    delta may be an int, float, or Fraction; it is squared exactly, and
    the threshold comparison is integer arithmetic, so ties (|Delta|
    exactly equal to the threshold counts as exceptional) are decided
    deterministically.  Postcondition: census size <= q / delta^2.
    """
    q, n, r = report.q, report.box.n, report.box.r
    if delta <= 0:
        raise BadDelta(f"need delta > 0, got {delta}")
    delta_sq = Fraction(delta) ** 2
    if delta_sq > q:
        raise BadDelta(f"need delta <= sqrt(q), got delta^2 = {delta_sq}")
    threshold_sq = delta_sq * r * Fraction(q) ** (n - 2)
    # |N - card/q|^2 >= thr  <=>  den*(q N - card)^2 >= num*q^2
    scaled = threshold_sq * q * q
    num, den = scaled.numerator, scaled.denominator
    card = report.box.card
    flags = []
    exceptional = []
    for b, count in enumerate(report.counts.tolist()):
        dev = q * count - card
        exc = den * dev * dev >= num
        flags.append(exc)
        if exc:
            exceptional.append(b)
    bound = Fraction(q) / delta_sq
    size_ok = len(exceptional) <= bound
    assert size_ok, "census exceeded q/delta^2; energy bound violated?"
    return CensusResult(float(delta_sq) ** 0.5, delta_sq, threshold_sq,
                        tuple(flags), tuple(exceptional), bound, size_ok)


def corollary_min_r(q: int, orders, log_base: str = "natural"
                    ) -> tuple[int, bool]:
    """Least r with r > q^n (prod_{l<n} s_l)^(-2) log q, and whether it
    fits under s_n (so non-emptiness is guaranteed for non-exceptional b).
    """
    orders = list(orders)
    if any(orders[i] < orders[i + 1] for i in range(len(orders) - 1)):
        raise ValueError("orders must be sorted descending")
    n = len(orders)
    logq = math.log(q) if log_base == "natural" else math.log2(q)
    big = Fraction(q ** n, math.prod(orders[:-1]) ** 2)
    try:
        val = float(big) * logq
    except OverflowError as exc:
        raise Overflow(f"q^n/P^2 too large: {big}") from exc
    if val > float(1 << 62):
        raise Overflow(f"minimal r {val:.3e} exceeds 2^62")
    r0 = math.floor(val) + 1
    return r0, r0 <= orders[-1]


# ---------------------------------------------------------------------------
# serialization


def report_to_dict(report: DensityReport,
                   census: CensusResult | None = None) -> dict:
    doc = {"schema": 1, "kind": "density_report", **report.to_dict()}
    if census is not None:
        doc["census"] = census.to_dict()
    return doc


def report_from_dict(doc: dict) -> DensityReport:
    from .charsum import equation_from_dict, make_box
    if doc.get("schema") != 1:
        raise ValueError(f"unsupported schema {doc.get('schema')}")
    eq = equation_from_dict(doc["eq"])
    box = make_box(eq, doc["box"]["r"])
    if box.to_dict() != doc["box"]:
        raise ValueError("stored box disagrees with recomputation")
    counts = np.array(doc["counts"], dtype=np.int64)
    main = Fraction(*doc["main"])
    energy = Fraction(*doc["energy"])
    return DensityReport(eq, box, counts, main, energy)


def write_per_b_csv(report: DensityReport, census: CensusResult, out) -> None:
    """Per-b table: b_index, N, main_num, main_den, delta, exceptional_flag."""
    writer = csv.writer(out)
    writer.writerow(["b_index", "N", "main_num", "main_den", "delta",
                     "exceptional_flag"])
    main = report.main
    for b, count in enumerate(report.counts.tolist()):
        writer.writerow([b, count, main.numerator, main.denominator,
                         repr(float(count - main)),
                         int(census.flags[b])])
