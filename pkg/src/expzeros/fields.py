"""Arithmetic in finite fields F_q with q = p^nu.

Elements are vectors of length nu over F_p, i.e. residues of polynomials in
F_p[X] modulo a fixed monic irreducible modulus of degree nu.  For a given
(p, nu) the modulus is canonical: the lexicographically first monic
irreducible, ordering candidates by their packed integer value
sum_i c_i p^i (low coefficients first).  Prime fields (nu = 1) use the
modulus X, so elements are just residues mod p.

The packed integer encoding sum_i c_i p^i is the wire format used by the
CLI and by the fast table-based routines in charsum/density.
"""

from __future__ import annotations

import functools
from typing import Iterator, Sequence

from .errors import (
    CapExceeded,
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    NotPrime,
)

MAX_CARDINALITY = 1 << 62
DEFAULT_ENUM_CAP = 1 << 20


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; the base set covers all n < 3.3 * 10^24.
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# dense polynomial helpers over F_p (coefficient lists, low degree first)


def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmulmod(a, b, mod, p):
    """a * b reduced mod the monic polynomial `mod`, all over F_p."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    deg = len(mod) - 1
    for k in range(len(out) - 1, deg - 1, -1):
        c = out[k]
        if c:
            out[k] = 0
            for j in range(deg):
                out[k - deg + j] = (out[k - deg + j] - c * mod[j]) % p
    return _ptrim(out)


def _ppowmod(a, e, mod, p):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _pmulmod(result, base, mod, p)
        base = _pmulmod(base, base, mod, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # a mod b with b made monic on the fly
        inv_lead = pow(b[-1], p - 2, p)
        while len(a) >= len(b) and a:
            c = a[-1] * inv_lead % p
            shift = len(a) - len(b)
            for j in range(len(b)):
                a[shift + j] = (a[shift + j] - c * b[j]) % p
            _ptrim(a)
        a, b = b, a
    return _ptrim(a)


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Rabin irreducibility test for a monic polynomial over F_p."""
    nu = len(poly) - 1
    if nu == 1:
        return True
    mod = list(poly)
    x = [0, 1]
    # x^(p^nu) == x mod poly
    xp = x
    for _ in range(nu):
        xp = _ppowmod(xp, p, mod, p)
    minus_x = _ptrim([(c - d) % p for c, d in
                      zip(xp + [0] * 2, [0, 1] + [0] * len(xp))])
    if minus_x:
        return False
    # gcd(x^(p^(nu/l)) - x, poly) == 1 for every prime l | nu
    primes = set()
    m, f = nu, 2
    while f * f <= m:
        while m % f == 0:
            primes.add(f)
            m //= f
        f += 1
    if m > 1:
        primes.add(m)
    for ell in primes:
        xq = x
        for _ in range(nu // ell):
            xq = _ppowmod(xq, p, mod, p)
        diff = _ptrim([(c - d) % p for c, d in
                       zip(xq + [0] * 2, [0, 1] + [0] * len(xq))])
        g = _pgcd(diff, mod, p)
        if len(g) != 1:
            return False
    return True


def _first_irreducible(p: int, nu: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree nu over F_p."""
    if nu == 1:
        return (0, 1)
    for k in range(p ** nu):
        tail = []
        m = k
        for _ in range(nu):
            tail.append(m % p)
            m //= p
        poly = tail + [1]
        if poly[0] != 0 and _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible found; unreachable for prime p")


# ---------------------------------------------------------------------------


class FieldSpec:
    """A concrete finite field F_{p^nu} with its canonical modulus.

    Use make_field(p, nu) rather than calling this constructor directly;
    make_field caches specs so elements of the same field share one spec.
    """

    __slots__ = ("p", "nu", "cardinality", "modulus", "_zero", "_one")

    def __init__(self, p: int, nu: int, modulus: Sequence[int] | None = None):
        if not _is_prime(p):
            raise NotPrime(f"p = {p} is not prime")
        if nu < 1:
            raise ValueError(f"nu must be >= 1, got {nu}")
        q = p ** nu
        if q > MAX_CARDINALITY:
            raise FieldTooLarge(f"p^nu = {q} exceeds 2^62")
        self.p = p
        self.nu = nu
        self.cardinality = q
        if modulus is None:
            modulus = _first_irreducible(p, nu)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != nu + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {nu}")
            if not _is_irreducible(list(modulus), p):
                raise ValueError("modulus is reducible")
        self.modulus = tuple(modulus)
        self._zero = FieldElement(self, (0,) * nu)
        self._one = FieldElement(self, (1,) + (0,) * (nu - 1))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.nu, self.modulus) == (other.p, other.nu,
                                                   other.modulus)

    def __hash__(self):
        return hash((self.p, self.nu, self.modulus))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, nu={self.nu})"

    def zero(self) -> "FieldElement":
        return self._zero

    def one(self) -> "FieldElement":
        return self._one

    def element(self, value) -> "FieldElement":
        """Coerce an int (packed encoding) or coefficient sequence."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, int):
            return self.from_packed(value % self.cardinality)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.nu:
            raise ValueError(f"coefficient vector longer than nu = {self.nu}")
        coeffs = coeffs + (0,) * (self.nu - len(coeffs))
        return FieldElement(self, coeffs)

    def from_packed(self, k: int) -> "FieldElement":
        if not 0 <= k < self.cardinality:
            raise ValueError(
                f"packed value {k} outside [0, {self.cardinality})")
        coeffs = []
        for _ in range(self.nu):
            coeffs.append(k % self.p)
            k //= self.p
        return FieldElement(self, tuple(coeffs))

    def elements(self, cap: int = DEFAULT_ENUM_CAP) -> Iterator["FieldElement"]:
        """All field elements in packed order, zero first."""
        if self.cardinality > cap:
            raise CapExceeded(
                f"cardinality {self.cardinality} exceeds cap {cap}")
        for k in range(self.cardinality):
            yield self.from_packed(k)


@functools.lru_cache(maxsize=None)
def make_field(p: int, nu: int = 1) -> FieldSpec:
    """Construct (and cache) F_{p^nu} with the canonical modulus."""
    return FieldSpec(p, nu)


def enumerate_units(spec: FieldSpec,
                    cap: int = DEFAULT_ENUM_CAP) -> Iterator["FieldElement"]:
    """All nonzero elements in packed order."""
    if spec.cardinality > cap:
        raise CapExceeded(
            f"cardinality {spec.cardinality} exceeds cap {cap}")
    for k in range(1, spec.cardinality):
        yield spec.from_packed(k)


class FieldElement:
    """Immutable element of a FieldSpec, stored as a coefficient tuple."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: tuple[int, ...]):
        self.spec = spec
        self.coeffs = coeffs

    # -- representation -----------------------------------------------------

    def packed(self) -> int:
        k = 0
        for c in reversed(self.coeffs):
            k = k * self.spec.p + c
        return k

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self):
        if self.spec.nu == 1:
            return f"FF({self.coeffs[0]} mod {self.spec.p})"
        return f"FF({list(self.coeffs)} over p={self.spec.p})"

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.spec.p, self.spec.nu, self.coeffs))

    def _check(self, other) -> "FieldElement":
        if not isinstance(other, FieldElement):
            raise FieldMismatch(f"cannot combine with {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatch("elements of different fields")
        return other

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple(
            (a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        other = self._check(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple(
            (a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.spec.p
        return FieldElement(self.spec, tuple(-a % p for a in self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        spec = self.spec
        if spec.nu == 1:
            return FieldElement(
                spec, (self.coeffs[0] * other.coeffs[0] % spec.p,))
        prod = _pmulmod(list(self.coeffs), list(other.coeffs),
                        list(spec.modulus), spec.p)
        return FieldElement(spec, tuple(prod) + (0,) * (spec.nu - len(prod)))

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("zero has no inverse")
        spec = self.spec
        if spec.nu == 1:
            return FieldElement(spec, (pow(self.coeffs[0], spec.p - 2,
                                           spec.p),))
        # x^(q-2) = x^(-1); fine at these sizes, no extended gcd needed
        return self ** (spec.cardinality - 2)

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __pow__(self, k: int) -> "FieldElement":
        if k < 0:
            return self.inverse() ** (-k)
        spec = self.spec
        if spec.nu == 1:
            return FieldElement(spec, (pow(self.coeffs[0], k, spec.p),))
        if k == 0:
            return spec.one()
        result = spec.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def trace(self) -> int:
        """Absolute trace to F_p: x + x^p + ... + x^(p^(nu-1))."""
        spec = self.spec
        if spec.nu == 1:
            return self.coeffs[0]
        acc = self
        y = self
        for _ in range(spec.nu - 1):
            y = y ** spec.p
            acc = acc + y
        assert all(c == 0 for c in acc.coeffs[1:]), "trace left F_p"
        return acc.coeffs[0]


# ---------------------------------------------------------------------------
# packed-integer fast path used by the table-based routines


class RawOps:
    """Field operations on packed integers, avoiding FieldElement overhead.

    Prime fields run on plain modular ints.  Extension fields fall back to
    FieldElement arithmetic behind the same interface; hot loops stay
    identical either way.
    """

    __slots__ = ("spec", "prime")

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.prime = spec.nu == 1

    def mul(self, a: int, b: int) -> int:
        if self.prime:
            return a * b % self.spec.p
        return (self.spec.from_packed(a) * self.spec.from_packed(b)).packed()

    def add(self, a: int, b: int) -> int:
        if self.prime:
            return (a + b) % self.spec.p
        return (self.spec.from_packed(a) + self.spec.from_packed(b)).packed()

    def sub(self, a: int, b: int) -> int:
        if self.prime:
            return (a - b) % self.spec.p
        return (self.spec.from_packed(a) - self.spec.from_packed(b)).packed()

    def inv(self, a: int) -> int:
        if self.prime:
            if a == 0:
                raise DivisionByZero("zero has no inverse")
            return pow(a, self.spec.p - 2, self.spec.p)
        return self.spec.from_packed(a).inverse().packed()

    def pow(self, a: int, k: int) -> int:
        if self.prime:
            return pow(a, k, self.spec.p)
        return (self.spec.from_packed(a) ** k).packed()


def raw_ops(spec: FieldSpec) -> RawOps:
    return RawOps(spec)
