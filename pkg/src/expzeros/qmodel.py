"""Quantum query-cost models: Grover amplitude dynamics (closed form and
exact small-scale simulation), the unknown-m exponential guessing schedule,
modeled costs for the two quantum search strategies, and the
classical-vs-quantum exponent table.

Quantum subroutines are modeled, not executed: order finding and discrete
logs are answered classically and charged polylog cost; Grover is charged
oracle queries.  The two strategies differ in what one oracle query is:

  thm2: Grover over the outer grid of t points, one subroutine call per
        query, ceil(sqrt(t)) queries charged.
  thm3: the grid radius comes from the floor formula (valid only under
        the size hypothesis (prod_{l<n} s_l)^2 s_n > q^n log q), the box
        then holds M = Theta(r prod s_l / q) solutions, and the
        unknown-m search needs only about sqrt(t/M) queries.

Exact M is recovered by brute force at desk scale and compared against
the r prod s_l / q estimate; the comparison is restricted to b that are
non-exceptional at delta = 1, the regime where the estimate is provably
within a factor 4 (tighter deltas admit counterexamples at small r).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .charsum import ExpEquation, brute_count, make_box
from .density import corollary_min_r  # noqa: F401  (re-export for demos)
from .errors import BadCounts, CapExceeded, HypothesisFailed
from .fields import DEFAULT_ENUM_CAP
from .solver import build_box, log_of

GROVER_SIM_CAP = 1 << 14
BBHT_GROWTH = 6 / 5


def grover_success(t: int, m: int, k: int) -> float:
    """Closed-form success probability sin^2((2k+1) theta) after k
    iterations, theta = arcsin(sqrt(m/t))."""
    if t < 1 or not 1 <= m <= t or k < 0:
        raise BadCounts(f"need 1 <= m <= t and k >= 0, got t={t} m={m} k={k}")
    theta = math.asin(math.sqrt(m / t))
    return math.sin((2 * k + 1) * theta) ** 2


def grover_optimal_k(t: int, m: int) -> int:
    """floor(pi / (4 theta)), the standard iteration count."""
    if t < 1 or not 1 <= m <= t:
        raise BadCounts(f"need 1 <= m <= t, got t={t} m={m}")
    theta = math.asin(math.sqrt(m / t))
    return int(math.pi / (4 * theta))


def grover_simulate(t: int, marked, k: int, cap: int = GROVER_SIM_CAP,
                    return_drift: bool = False):
    """Exact state-vector run of k Grover iterations on t items.

    Returns the probability mass on the marked set; with return_drift,
    also the largest |norm - 1| observed after any iteration.
    """
    if t > cap:
        raise CapExceeded(f"t = {t} exceeds simulation cap {cap}")
    idx = sorted(set(int(i) for i in marked))
    if not idx or idx[0] < 0 or idx[-1] >= t:
        raise BadCounts("marked set must be a nonempty subset of [0, t)")
    if k < 0:
        raise BadCounts(f"need k >= 0, got {k}")
    idx = np.array(idx, dtype=np.intp)
    state = np.full(t, 1.0 / math.sqrt(t))
    drift = 0.0
    for _ in range(k):
        state[idx] *= -1.0  # oracle: phase flip on marked items
        state = 2.0 * state.mean() - state  # inversion about the mean
        drift = max(drift, abs(float(np.dot(state, state)) - 1.0))
    prob = float(np.square(state[idx]).sum())
    if return_drift:
        return prob, drift
    return prob


def bbht_expected_queries(t: int, m: int, trials: int,
                          rng_seed: int = 0) -> float:
    """Empirical mean oracle queries of the exponential guessing schedule.

    Round j draws k uniformly from [0, ceil(c^j)) with c = 6/5, runs k
    Grover iterations (k+1 oracle queries counted, one per iteration plus
    the measurement's verification query), and succeeds with probability
    grover_success(t, m, k).  Trial i uses seed rng_seed + i, so the mean
    is reproducible and trials can run in any order.
    """
    if t < 1 or not 1 <= m <= t:
        raise BadCounts(f"need 1 <= m <= t, got t={t} m={m}")
    if trials < 1:
        raise BadCounts(f"need trials >= 1, got {trials}")
    theta = math.asin(math.sqrt(m / t))
    totals = []
    for trial in range(trials):
        rng = random.Random(rng_seed + trial)
        queries = 0
        j = 0
        while True:
            limit = math.ceil(BBHT_GROWTH ** j)
            k = rng.randrange(limit)
            queries += k + 1
            if rng.random() < math.sin((2 * k + 1) * theta) ** 2:
                break
            j += 1
            assert j < 10_000, "guessing schedule failed to terminate"
        totals.append(queries)
    return math.fsum(totals) / trials


# ---------------------------------------------------------------------------
# exponent table


@dataclass(frozen=True)
class ExponentRow:
    """Query exponents (cost = q^exponent up to polylog) for n terms."""

    n: int
    classical_exp: Fraction  # n/2, what the classical search achieves
    classical_thm_exp: Fraction  # n(n+1)/(2(2n-1)), the stated bound
    quantum_exp: Fraction  # n(n-1)/(2(2n-1))
    ratio: Fraction  # classical/quantum = (2n-1)/(n-1)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "classical_exp": str(self.classical_exp),
            "classical_thm_exp": str(self.classical_thm_exp),
            "quantum_exp": str(self.quantum_exp),
            "ratio": str(self.ratio),
        }


def classical_exponent(n: int) -> Fraction:
    return Fraction(n, 2)


def classical_stated_exponent(n: int) -> Fraction:
    return Fraction(n * (n + 1), 2 * (2 * n - 1))


def quantum_exponent(n: int) -> Fraction:
    return Fraction(n * (n - 1), 2 * (2 * n - 1))


def exponent_row(n: int) -> ExponentRow:
    if n < 2:
        raise BadCounts(f"exponent rows start at n = 2, got {n}")
    classical = classical_exponent(n)
    quantum = quantum_exponent(n)
    ratio = Fraction(2 * n - 1, n - 1)
    assert ratio == classical / quantum
    return ExponentRow(n, classical, classical_stated_exponent(n),
                       quantum, ratio)


@dataclass(frozen=True)
class ExponentTable:
    rows: tuple[ExponentRow, ...]

    def to_dict(self) -> dict:
        return {"schema": 1, "kind": "exponent_table",
                "rows": [row.to_dict() for row in self.rows],
                "discrepancies": discrepancy_report(self.rows[-1].n)}

    def to_text(self) -> str:
        lines = [f"{'n':>4}  {'classical':>10}  {'quantum':>10}  {'C/Q':>8}"]
        for row in self.rows:
            lines.append(f"{row.n:>4}  {str(row.classical_exp):>10}  "
                         f"{str(row.quantum_exp):>10}  {str(row.ratio):>8}")
        notes = discrepancy_report(self.rows[-1].n)
        if notes:
            lines.append("")
            lines.append("stated deterministic exponent n(n+1)/(2(2n-1)) "
                         "disagrees with the derived n/2 for:")
            for d in notes:
                lines.append(f"  n={d['n']}: stated {d['stated']} "
                             f"vs derived {d['derived']}")
        return "\n".join(lines)


def exponent_table(n_max: int) -> ExponentTable:
    if n_max < 2:
        raise BadCounts(f"need n_max >= 2, got {n_max}")
    return ExponentTable(tuple(exponent_row(n) for n in range(2, n_max + 1)))


def discrepancy_report(n_max: int) -> list[dict]:
    """Rows where the stated deterministic exponent n(n+1)/(2(2n-1))
    differs from the n/2 the search actually achieves (all n >= 3)."""
    out = []
    for n in range(2, n_max + 1):
        stated = classical_stated_exponent(n)
        derived = classical_exponent(n)
        if stated != derived:
            out.append({"n": n, "stated": str(stated),
                        "derived": str(derived)})
    return out


# ---------------------------------------------------------------------------
# cost model


@dataclass(frozen=True)
class QueryCostReport:
    mode: str  # "thm2" | "thm3"
    q: int
    n: int
    r: int  # box radius actually used
    r_raw: int  # pre-clamp value from the ceiling/floor formula
    r_clamped: bool
    t: int  # Grover search-space size (outer grid)
    m_exact: int | None  # solutions in the box, when brute force ran
    m_estimate: float | None  # r prod_{l<n} s_l / q (thm3)
    m_ratio: float | None  # m_exact / m_estimate
    b_exceptional: bool | None  # |Delta_b| >= sqrt(r q^(n-2)), delta = 1
    modeled_queries: int
    empirical_queries: float | None  # guessing-schedule mean, small t only
    shor_calls: int  # n order findings + one dlog per query
    theoretical_bound: float
    within_bound: bool
    chain_case: str | None  # thm2 grid-bound chain: "r<=s_n" | "r>s_n"
    chain_holds: bool | None
    hypothesis_ok: bool | None
    log_base: str
    slack_exponent: int

    def to_dict(self) -> dict:
        doc = {"schema": 1, "kind": "query_cost_report"}
        doc.update(self.__dict__)
        return doc


def grid_chain_check(orders_sorted, r_raw: int) -> tuple[str, bool]:
    """The thm2 grid-bound chain, as exact integer comparisons.

    case r<=s_n:  r prod_{l=2..n-1} s_l <= ((prod_{l<n} s_l)^2 r)^((n-1)/(2n-1))
    case r>s_n :  prod_{l=2..n} s_l    <= ((prod_{l<n} s_l)^2 s_n)^((n-1)/(2n-1))

    Neither is a theorem for every order profile; callers get the verdict.
    """
    n = len(orders_sorted)
    if n == 1:
        return "n=1", True  # no outer grid, nothing to bound
    prod_front = math.prod(orders_sorted[:-1])
    if r_raw <= orders_sorted[-1]:
        lhs = r_raw * math.prod(orders_sorted[1:-1])
        rhs_base = prod_front * prod_front * r_raw
        case = "r<=s_n"
    else:
        lhs = math.prod(orders_sorted[1:])
        rhs_base = prod_front * prod_front * orders_sorted[-1]
        case = "r>s_n"
    holds = lhs ** (2 * n - 1) <= rhs_base ** (n - 1)
    return case, holds


def _count_in_box(eq: ExpEquation, box, enum_cap: int) -> int | None:
    if box.card > enum_cap:
        return None
    count, _ = brute_count(eq, box, cap=enum_cap, list_cap=0)
    return count


def model_quantum_solve(eq: ExpEquation, mode: str,
                        log_base: str = "natural",
                        slack_exponent: int = 3,
                        rng_seed: int = 1,
                        sim_trials: int = 300,
                        enum_cap: int = DEFAULT_ENUM_CAP
                        ) -> QueryCostReport:
    """Model the quantum search cost for one instance.

    thm2 needs no hypothesis and charges ceil(sqrt(t)) queries over the
    outer grid; thm3 requires (prod_{l<n} s_l)^2 s_n > q^n log q, uses the
    floor radius, and charges ceil(sqrt(t/M)).  The theoretical bound gets
    a (log q)^slack_exponent factor standing in for the usual q^eps slack.
    """
    q, n = eq.q, eq.n
    logq = log_of(q, log_base)
    slack = logq ** slack_exponent
    if mode == "thm2":
        box, r_raw = build_box(eq, log_base)
        r_clamped = r_raw > box.orders_sorted[-1]
        limits = box.limits()
        t = math.prod(limits[1:]) if n > 1 else 1
        m_exact = _count_in_box(eq, box, enum_cap)
        modeled = math.isqrt(max(t - 1, 0)) + 1 if t > 1 else 1  # ceil(sqrt t)
        bound = float(q) ** float(quantum_exponent(n)) * slack
        case, holds = grid_chain_check(box.orders_sorted, r_raw)
        empirical = None
        if m_exact and t <= GROVER_SIM_CAP:
            empirical = bbht_expected_queries(t, m_exact, sim_trials,
                                              rng_seed)
        return QueryCostReport(
            mode="thm2", q=q, n=n, r=box.r, r_raw=r_raw,
            r_clamped=r_clamped, t=t, m_exact=m_exact, m_estimate=None,
            m_ratio=None, b_exceptional=_exceptional_at_delta1(eq, box,
                                                               m_exact),
            modeled_queries=modeled, empirical_queries=empirical,
            shor_calls=n + modeled, theoretical_bound=bound,
            within_bound=modeled <= bound, chain_case=case,
            chain_holds=holds, hypothesis_ok=None, log_base=log_base,
            slack_exponent=slack_exponent)
    if mode != "thm3":
        raise ValueError(f"unknown mode {mode!r}; use thm2 or thm3")

    perm = sorted(range(n), key=lambda i: (-eq.orders[i], i))
    orders_sorted = [eq.orders[i] for i in perm]
    prod_front = math.prod(orders_sorted[:-1])
    hyp_lhs = prod_front * prod_front * orders_sorted[-1]
    if not float(hyp_lhs) > q ** n * logq:
        raise HypothesisFailed(
            "hypothesis (∏s)²sₙ > qⁿ log q failed: "
            f"{hyp_lhs} <= {q ** n * logq:.6g}")
    r_raw = math.floor(float(Fraction(q ** n, prod_front * prod_front))
                       * logq)
    r = max(r_raw, 1)
    box = make_box(eq, r)
    limits = box.limits()
    t = math.prod(limits[1:]) if n > 1 else r
    m_exact = _count_in_box(eq, box, enum_cap)
    m_estimate = float(Fraction(r * prod_front, q))
    if m_exact is not None and m_exact > 0:
        m_used = m_exact
    elif m_exact == 0:
        m_used = None  # nothing to find; schedule would run forever
    else:
        m_used = max(1, round(m_estimate))
    if m_used is None:
        modeled = math.isqrt(max(t - 1, 0)) + 1 if t > 1 else 1
    else:
        ratio = t / m_used
        modeled = max(1, math.ceil(math.sqrt(ratio)))
    bound = (math.sqrt(q)
             * float(hyp_lhs) ** (-1.0 / (2 * (2 * n - 1))) * slack)
    m_ratio = (m_exact / m_estimate
               if m_exact is not None and m_estimate > 0 else None)
    empirical = None
    if m_exact and t <= GROVER_SIM_CAP:
        empirical = bbht_expected_queries(t, m_exact, sim_trials, rng_seed)
    return QueryCostReport(
        mode="thm3", q=q, n=n, r=r, r_raw=r_raw, r_clamped=r_raw < 1,
        t=t, m_exact=m_exact, m_estimate=m_estimate, m_ratio=m_ratio,
        b_exceptional=_exceptional_at_delta1(eq, box, m_exact),
        modeled_queries=modeled, empirical_queries=empirical,
        shor_calls=n + modeled, theoretical_bound=bound,
        within_bound=modeled <= bound, chain_case=None, chain_holds=None,
        hypothesis_ok=True, log_base=log_base,
        slack_exponent=slack_exponent)


def _exceptional_at_delta1(eq: ExpEquation, box, m_exact: int | None
                           ) -> bool | None:
    """Is this b exceptional at delta = 1, i.e. (qN - card)^2 >= r q^n?

    Needs the exact in-box count; None when that was out of reach.
    """
    if m_exact is None:
        return None
    q, n = eq.q, box.n
    dev = q * m_exact - box.card
    return dev * dev >= box.r * q ** n
