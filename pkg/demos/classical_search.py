"""The deterministic grid search, its statuses, and its query ledger.

The solver fixes the outer exponents (all coordinates but the one with
the largest order), subtracts the partial sum from b, and asks a
baby-step giant-step table whether the remainder is a power of g1.
Every group multiplication is charged to a named bucket.  Three
outcomes are possible: a verified solution, a certificate that no
solution exists anywhere (when the prescribed radius exceeds the last
order, the searched box is the whole domain), or plain exhaustion of a
truncated box.
"""

from collections import Counter

from expzeros.charsum import make_equation
from expzeros.fields import make_field
from expzeros.solver import build_box, solve_classical, verify_solution


def describe(eq, rep):
    print(f"  b={eq.b.packed():3d}: {rep.status:24s} x={rep.x}")


def main():
    spec = make_field(101)
    e = spec.element
    # orders (25, 5): 16 = 2^4 and 95 = 2^20 under the generator 2
    terms = [(e([1]), e([16])), (e([1]), e([95]))]

    eq0 = make_equation(spec, terms, e([0]))
    box, r_raw = build_box(eq0)
    print(f"instance orders {list(eq0.orders)}: raw radius {r_raw} exceeds "
          f"s_n = {box.orders_sorted[-1]}, so the box is the full domain "
          f"({box.card} points) and misses become certificates")

    print()
    print("a few b values:")
    statuses = Counter()
    for bv in (0, 1, 2, 3, 17, 30, 55):
        eq = make_equation(spec, terms, e([bv]))
        rep = solve_classical(eq)
        statuses[rep.status] += 1
        describe(eq, rep)
        if rep.x is not None:
            assert verify_solution(eq, rep.x)

    print()
    print("full sweep over all 101 b:")
    statuses = Counter()
    for bv in range(101):
        eq = make_equation(spec, terms, e([bv]))
        statuses[solve_classical(eq).status] += 1
    for status, count in sorted(statuses.items()):
        print(f"  {status:24s} {count}")

    print()
    print("query ledger for one found case:")
    eq = make_equation(spec, terms, e([17]))
    rep = solve_classical(eq)
    q = rep.queries
    print(f"  status {rep.status}, x = {rep.x}")
    print(f"  group multiplications by bucket:")
    for bucket, count in sorted(q.buckets.items()):
        print(f"    {bucket:12s} {count}")
    print(f"  total {q.group_mults} mults, {q.dlog_calls} dlog call(s), "
          f"{q.outer_points_visited} outer points visited")
    print(f"  order-finding cost model (not counted): "
          f"{rep.order_finding_cost_model:.1f}")


if __name__ == "__main__":
    main()
