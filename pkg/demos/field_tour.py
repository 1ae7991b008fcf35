"""Tour of the finite-field layer: moduli, packed encoding, trace.

Walks through how extension fields are represented (polynomial basis
over the canonical lexicographically-first irreducible modulus), how
elements round-trip through the packed integer wire format, and why the
absolute trace is the right exponent for additive characters.
"""

from collections import Counter

from expzeros.fields import make_field


def show_modulus(p, nu):
    spec = make_field(p, nu)
    poly = " + ".join(f"{c}*x^{i}" for i, c in enumerate(spec.modulus) if c)
    print(f"F_{p}^{nu} (q = {spec.cardinality}): modulus {poly}")
    return spec


def main():
    print("== canonical moduli ==")
    for p, nu in ((2, 2), (2, 3), (3, 2), (3, 3), (7, 2), (2, 8)):
        show_modulus(p, nu)

    print()
    print("== packed wire format, F_9 ==")
    spec = make_field(3, 2)
    # packed integer is sum_i c_i p^i for coefficient vector (c_0, c_1, ...)
    for k in range(9):
        u = spec.from_packed(k)
        print(f"  {k} <-> coeffs {list(u.coeffs)}")

    print()
    print("== arithmetic sanity in F_9 ==")
    x = spec.from_packed(3)          # the generator polynomial x
    one = spec.from_packed(1)
    print(f"  x * x       = packed {(x * x).packed()}")
    print(f"  x ** 8      = packed {(x ** 8).packed()} (unit group has order 8)")
    print(f"  (x + 1)^-1  = packed {(x + one).inverse().packed()}")

    print()
    print("== trace balance ==")
    # The absolute trace F_q -> F_p takes each value exactly p^(nu-1)
    # times, which is what makes psi(u) = exp(2 pi i Tr(u)/p) sum to zero.
    for p, nu in ((2, 4), (3, 3), (5, 2)):
        spec = make_field(p, nu)
        hist = Counter(u.trace() for u in spec.elements())
        expect = p ** (nu - 1)
        print(f"  F_{p}^{nu}: trace histogram {dict(sorted(hist.items()))}"
              f" (each value {expect} times)")
        assert all(c == expect for c in hist.values())

    print()
    print("== Frobenius is additive ==")
    spec = make_field(7, 2)
    u = spec.from_packed(23)
    v = spec.from_packed(38)
    lhs = (u + v) ** 7
    rhs = u ** 7 + v ** 7
    print(f"  (u+v)^7 == u^7 + v^7 in F_49: {lhs == rhs}")


if __name__ == "__main__":
    main()
