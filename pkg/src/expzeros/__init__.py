"""Zeros of n-term exponential equations a_1 g_1^{x_1} + ... + a_n g_n^{x_n} = b
over finite fields F_q: exact counting via character sums, full-b density
sweeps with the energy bound and exceptional census, the classical
grid-search solver with query accounting, and quantum query-cost models.

Modules:
    fields     -- F_{p^nu} arithmetic (polynomial basis, packed encoding)
    arith      -- factorization, orders, divisor counts, BSGS dlogs
    charsum    -- additive characters, counting identity, Gauss sums
    density    -- per-b deviations, energy E(r), exceptional-b census
    solver     -- the classical search with three-valued outcome
    qmodel     -- Grover/guessing-schedule models, exponent table
    reduction  -- grouping terms by order, mu <= d(q-1)
    instances  -- seeded random instance generation
    cli        -- command-line front end (expzeros ...)
"""

from .fields import FieldElement, FieldSpec, enumerate_units, make_field
from .charsum import (ExpEquation, SearchBox, brute_count,
                      count_via_charsum, delta_indicator, gauss_partial_sum,
                      make_box, make_equation, psi)
from .arith import (BsgsTable, Factorization, OrderInfo, QueryCounter,
                    bsgs_dlog, divisor_count, factorize, is_prime,
                    multiplicative_order, subgroup_membership)
from .density import (CensusResult, DensityReport, corollary_min_r,
                      energy_bound_check, exceptional_census, sweep_b)
from .solver import (SolutionReport, build_box, solve_classical,
                     subroutine_S, verify_solution)
from .qmodel import (ExponentRow, ExponentTable, QueryCostReport,
                     bbht_expected_queries, exponent_table, grover_simulate,
                     grover_success, model_quantum_solve)
from .reduction import (MuBoundReport, ReducedEquation, mu_bound_report,
                        reduce_equation, relate_same_order)

__version__ = "0.1.0"
