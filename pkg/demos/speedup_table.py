"""Classical vs quantum query exponents as the number of terms grows.

Costs are q^exponent up to polylog factors.  The classical grid search
needs exponent n/2; searching the same grid with amplitude
amplification needs n(n-1)/(2(2n-1)).  Their ratio is (2n-1)/(n-1),
which starts at 3 for two terms and decays to 2: the quantum model
never buys more than a cubic and never less than a quadratic saving.
The derived classical exponent disagrees with the commonly stated
n(n+1)/(2(2n-1)) bound from three terms on; the discrepancy report
makes that explicit.
"""

from fractions import Fraction

from expzeros import qmodel


def main():
    table = qmodel.exponent_table(8)
    print(table.to_text())

    print()
    print("ratio identity: C/Q - 2 == 1/(n-1), exactly")
    for n in (2, 3, 10, 100, 10 ** 6):
        row = qmodel.exponent_row(n)
        gap = row.ratio - 2
        print(f"  n={n:>7}: ratio {row.ratio} -> gap {gap} "
              f"== 1/{n - 1}: {gap == Fraction(1, n - 1)}")

    print()
    print("stated vs derived classical exponents:")
    for entry in qmodel.discrepancy_report(6):
        print(f"  n={entry['n']}: stated {entry['stated']} "
              f"vs derived {entry['derived']}")


if __name__ == "__main__":
    main()
