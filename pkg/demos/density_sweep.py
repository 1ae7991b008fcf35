"""Solution-count histogram over all b, energy bound, exceptional census.

For a fixed equation the count N_b of box solutions concentrates around
the main term r * prod(s_l) / q as b varies.  The summed squared
deviation ("energy") stays strictly below q^(n-1) * r, which caps how
many b can deviate by more than delta * sqrt(r q^(n-2)): at most
q / delta^2 of them.  This sweep shows the whole picture for one
instance and optionally writes the per-b table as CSV.
"""

import argparse
import math
import sys

from expzeros.charsum import make_box, make_equation
from expzeros.density import (corollary_min_r, energy_bound_check,
                              exceptional_census, sweep_b, write_per_b_csv)
from expzeros.fields import make_field


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", help="write the per-b CSV here")
    args = ap.parse_args(argv)

    spec = make_field(257)
    e = spec.element
    # orders (256, 16): g1 = 3 generates, g2 = 3^16 has order 16
    eq = make_equation(spec, [(e([1]), e([3])), (e([1]), e([249]))], e([0]))
    orders = sorted(eq.orders, reverse=True)
    min_r, fits = corollary_min_r(257, orders)
    r = min_r if fits else orders[-1]
    box = make_box(eq, r)
    print(f"instance: orders {list(eq.orders)}, box r={box.r} "
          f"card={box.card} (corollary radius {min_r}, fits={fits})")

    report = sweep_b(eq, box)
    counts = report.counts.tolist()
    print(f"main term r*prod(s)/q = {report.main} = {float(report.main):.4f}")
    print(f"count range over b: min {min(counts)}, max {max(counts)}, "
          f"zeros {counts.count(0)}")

    ok, margin = energy_bound_check(report)
    print(f"energy E(r) = {float(report.energy):.4f} < q^(n-1)*r = "
          f"{257 * box.r}: {ok} (margin {float(margin):.4f})")

    print()
    print("census sizes (bound is q/delta^2):")
    for delta in (0.5, 1.0, math.sqrt(math.log(257)), 2.0):
        census = exceptional_census(report, delta)
        print(f"  delta={delta:.3f}: {len(census.exceptional):3d} "
              f"exceptional b, bound {float(census.bound):8.1f}, "
              f"within: {census.size_ok}")

    census = exceptional_census(report, math.sqrt(math.log(257)))
    nonzero = all(counts[b] >= 1 for b in range(257)
                  if b not in set(census.exceptional))
    print(f"non-exceptional b all have N_b >= 1: {nonzero}")

    if args.out:
        with open(args.out, "w") as fh:
            write_per_b_csv(report, census, fh)
        print(f"per-b table written to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
