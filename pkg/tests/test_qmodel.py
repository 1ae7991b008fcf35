"""Tests for the Grover closed form vs exact simulation, the unknown-m
guessing schedule, the exponent table, and the two query-cost models.
"""

import math
from fractions import Fraction

import pytest

from expzeros.charsum import brute_count, make_box, make_equation
from expzeros.errors import BadCounts, CapExceeded, HypothesisFailed
from expzeros.fields import make_field
from expzeros.qmodel import (
    GROVER_SIM_CAP,
    bbht_expected_queries,
    classical_exponent,
    classical_stated_exponent,
    discrepancy_report,
    exponent_row,
    exponent_table,
    grover_optimal_k,
    grover_simulate,
    grover_success,
    model_quantum_solve,
    quantum_exponent,
)
from expzeros.solver import FOUND, solve_classical


# ---------------------------------------------------------------------------
# Grover closed form


def test_grover_success_frozen_examples():
    # t = 4, m = 1: theta = pi/6, one iteration is exact
    assert grover_success(4, 1, 1) == pytest.approx(1.0, abs=1e-12)
    # zero iterations leave the uniform superposition
    for t, m in [(4, 1), (100, 7), (1024, 33)]:
        assert grover_success(t, m, 0) == pytest.approx(m / t, abs=1e-12)
    assert grover_success(7, 7, 0) == pytest.approx(1.0, abs=1e-12)


def test_grover_optimal_k_near_certainty():
    assert grover_optimal_k(1024, 1) == 25
    assert grover_success(1024, 1, 25) >= 1 - 1 / 1024
    for t, m in [(64, 1), (256, 3), (4096, 5), (100, 25)]:
        k = grover_optimal_k(t, m)
        assert grover_success(t, m, k) >= 1 - m / t - 1e-12


def test_grover_success_validation():
    for t, m, k in [(0, 1, 1), (4, 0, 1), (4, 5, 1), (4, 1, -1)]:
        with pytest.raises(BadCounts):
            grover_success(t, m, k)
    with pytest.raises(BadCounts):
        grover_optimal_k(4, 0)


# ---------------------------------------------------------------------------
# exact simulation


def test_simulation_matches_closed_form_grid():
    worst = 0.0
    worst_drift = 0.0
    for t in [2, 4, 8, 16, 64, 256, 1024]:
        for m in sorted({1, 2, t // 4, t // 2, t} - {0}):
            marked = list(range(m))
            for k in [0, 1, 2, grover_optimal_k(t, m)]:
                sim, drift = grover_simulate(t, marked, k,
                                             return_drift=True)
                closed = grover_success(t, m, k)
                worst = max(worst, abs(sim - closed))
                worst_drift = max(worst_drift, drift)
    assert worst <= 1e-9
    assert worst_drift <= 1e-12


def test_simulation_invariant_under_marked_placement():
    a = grover_simulate(64, [0, 1, 2], 3)
    b = grover_simulate(64, [5, 17, 63], 3)
    assert abs(a - b) < 1e-12
    # duplicate indices collapse to the set
    c = grover_simulate(64, [5, 5, 17, 63, 63], 3)
    assert abs(b - c) < 1e-12


def test_simulation_validation_and_cap():
    with pytest.raises(CapExceeded):
        grover_simulate(GROVER_SIM_CAP + 1, [0], 1)
    with pytest.raises(BadCounts):
        grover_simulate(8, [], 1)
    with pytest.raises(BadCounts):
        grover_simulate(8, [8], 1)
    with pytest.raises(BadCounts):
        grover_simulate(8, [-1], 1)
    with pytest.raises(BadCounts):
        grover_simulate(8, [0], -1)


# ---------------------------------------------------------------------------
# unknown-m guessing schedule


def test_bbht_known_m_equals_one_query():
    # m = t succeeds on the k = 0 guess of round zero, deterministically
    assert bbht_expected_queries(16, 16, 200) == 1.0
    assert bbht_expected_queries(5, 5, 50) == 1.0


def test_bbht_reproducible_and_bounded():
    a = bbht_expected_queries(256, 1, 400, rng_seed=7)
    b = bbht_expected_queries(256, 1, 400, rng_seed=7)
    assert a == b
    assert 1.0 <= a <= 4 * math.sqrt(256)
    c = bbht_expected_queries(256, 1, 400, rng_seed=8)
    assert c != a   # different seed, different draw sequence
    # easy instance: half the items marked
    mean = bbht_expected_queries(16, 8, 500)
    assert mean <= 4 * math.sqrt(2)


def test_bbht_validation():
    with pytest.raises(BadCounts):
        bbht_expected_queries(4, 0, 10)
    with pytest.raises(BadCounts):
        bbht_expected_queries(4, 5, 10)
    with pytest.raises(BadCounts):
        bbht_expected_queries(4, 1, 0)


# ---------------------------------------------------------------------------
# exponent table


def test_exponent_rows_frozen():
    r2 = exponent_row(2)
    assert (r2.classical_exp, r2.classical_thm_exp, r2.quantum_exp,
            r2.ratio) == (Fraction(1), Fraction(1), Fraction(1, 3),
                          Fraction(3))
    r3 = exponent_row(3)
    assert (r3.classical_exp, r3.classical_thm_exp, r3.quantum_exp,
            r3.ratio) == (Fraction(3, 2), Fraction(6, 5), Fraction(3, 5),
                          Fraction(5, 2))
    r4 = exponent_row(4)
    assert (r4.classical_exp, r4.quantum_exp, r4.ratio) == (
        Fraction(2), Fraction(6, 7), Fraction(7, 3))
    with pytest.raises(BadCounts):
        exponent_row(1)
    with pytest.raises(BadCounts):
        exponent_table(1)


def test_exponent_ratio_identity_and_monotonicity():
    prev_ratio = None
    prev_quantum = None
    for n in range(2, 10_001):
        ratio = Fraction(2 * n - 1, n - 1)
        assert ratio - 2 == Fraction(1, n - 1)
        assert classical_exponent(n) == ratio * quantum_exponent(n)
        if prev_ratio is not None:
            assert ratio < prev_ratio
            assert quantum_exponent(n) > prev_quantum
        assert ratio > 2
        prev_ratio = ratio
        prev_quantum = quantum_exponent(n)


def test_discrepancy_report_starts_at_three():
    notes = discrepancy_report(6)
    assert [d["n"] for d in notes] == [3, 4, 5, 6]
    assert notes[0] == {"n": 3, "stated": "6/5", "derived": "3/2"}
    assert classical_stated_exponent(2) == classical_exponent(2)


def test_exponent_table_rendering():
    table = exponent_table(4)
    text = table.to_text()
    assert "3/2" in text and "3/5" in text and "5/2" in text
    assert "n=3: stated 6/5 vs derived 3/2" in text
    doc = table.to_dict()
    assert doc["schema"] == 1 and doc["kind"] == "exponent_table"
    assert len(doc["rows"]) == 3
    assert doc["rows"][1]["ratio"] == "5/2"
    assert doc["discrepancies"][0]["n"] == 3


# ---------------------------------------------------------------------------
# cost model: thm2


def test_thm2_model_f7_example():
    eq = make_equation(make_field(7), [(1, 3), (1, 2)], 3)
    rep = model_quantum_solve(eq, "thm2")
    assert rep.mode == "thm2" and (rep.q, rep.n) == (7, 2)
    assert (rep.r, rep.r_raw, rep.t) == (3, 3, 3)
    assert rep.m_exact == 3
    assert rep.modeled_queries == 2           # ceil(sqrt(3))
    assert rep.shor_calls == 2 + 2
    assert rep.chain_case == "r<=s_n" and rep.chain_holds
    assert rep.within_bound
    assert rep.b_exceptional is False
    # t = m = 3: the schedule needs exactly one query
    assert rep.empirical_queries == 1.0
    doc = rep.to_dict()
    assert doc["schema"] == 1 and doc["kind"] == "query_cost_report"
    assert doc["mode"] == "thm2" and doc["t"] == 3


def test_thm2_found_iff_box_nonempty():
    spec = make_field(41)
    for b in range(41):
        eq = make_equation(spec, [(2, 36), (3, 36)], b)
        rep = model_quantum_solve(eq, "thm2", sim_trials=20)
        classical = solve_classical(eq)
        assert (classical.status == FOUND) == (rep.m_exact > 0)
        if rep.m_exact == 0:
            assert rep.empirical_queries is None
            assert rep.b_exceptional is True


def test_thm2_single_term():
    eq = make_equation(make_field(101), [(1, 2)], 17)
    rep = model_quantum_solve(eq, "thm2")
    assert rep.t == 1 and rep.modeled_queries == 1
    assert rep.chain_case == "n=1" and rep.chain_holds
    assert rep.m_exact == 1
    with pytest.raises(ValueError):
        model_quantum_solve(eq, "thm5")


# ---------------------------------------------------------------------------
# cost model: thm3


def test_thm3_hypothesis_gate():
    f7 = make_field(7)
    eq = make_equation(f7, [(1, 6), (2, 6)], 0)   # orders (2, 2)
    with pytest.raises(HypothesisFailed) as err:
        model_quantum_solve(eq, "thm3")
    assert "hypothesis" in str(err.value)
    # n = 1 can never satisfy the hypothesis: s_1 <= q - 1 < q log q
    with pytest.raises(HypothesisFailed):
        model_quantum_solve(make_equation(make_field(101), [(1, 2)], 3),
                            "thm3")


def test_thm3_model_q101():
    spec = make_field(101)
    eq = make_equation(spec, [(1, 2), (1, 5)], 44)   # orders (100, 25)
    rep = model_quantum_solve(eq, "thm3", sim_trials=50)
    assert rep.mode == "thm3" and rep.hypothesis_ok
    assert rep.r_raw == 4 and rep.r == 4 and not rep.r_clamped
    assert rep.t == 4
    assert rep.m_estimate == pytest.approx(400 / 101)
    box = make_box(eq, r=4)
    want_m, _ = brute_count(eq, box, list_cap=0)
    assert rep.m_exact == want_m
    if not rep.b_exceptional:
        assert 0.25 <= rep.m_ratio <= 4
        assert rep.within_bound
    assert rep.chain_case is None and rep.chain_holds is None


def test_thm3_nonexceptional_ratio_window_full_sweep():
    spec = make_field(101)
    n_checked = 0
    for b in range(101):
        eq = make_equation(spec, [(1, 2), (1, 5)], b)
        rep = model_quantum_solve(eq, "thm3", sim_trials=10)
        if rep.b_exceptional:
            continue
        assert rep.m_exact is not None and rep.m_exact >= 1
        assert 0.25 <= rep.m_ratio <= 4
        assert rep.within_bound
        n_checked += 1
    assert n_checked >= 90   # exceptional b are rare by the census bound


def test_thm3_radius_clamp():
    spec = make_field(101)
    eq = make_equation(spec, [(1, 2), (3, 2), (7, 2)], 55)  # orders 100^3
    rep = model_quantum_solve(eq, "thm3", sim_trials=20)
    assert rep.r_raw == 0 and rep.r == 1 and rep.r_clamped
    assert rep.t == 100
    assert rep.hypothesis_ok


def test_thm3_exceptional_zero_count_path():
    spec = make_field(41)
    eq = make_equation(spec, [(2, 36), (3, 36)], 0)
    rep = model_quantum_solve(eq, "thm3")
    assert rep.r == 15 and rep.t == 15
    assert rep.m_exact == 0
    assert rep.b_exceptional is True
    assert rep.modeled_queries == math.ceil(math.sqrt(15))
    assert rep.empirical_queries is None
