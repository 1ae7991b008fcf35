"""Seeded random equation instances.

Uniform draws match the CLI contract (a_i, g_i uniform over units, b
uniform over the field).  Order-controlled draws pick g_i of a prescribed
multiplicative order via powers of a fixed generator, which is how the
experiments steer box sizes without rejection sampling.
"""

from __future__ import annotations

import math
import random

from .arith import Factorization, factorize, multiplicative_order
from .charsum import ExpEquation, make_equation
from .fields import FieldElement, FieldSpec


def random_unit(spec: FieldSpec, rng: random.Random) -> FieldElement:
    return spec.from_packed(rng.randrange(1, spec.cardinality))


def random_equation(spec: FieldSpec, n: int, rng: random.Random,
                    b=None) -> ExpEquation:
    """n terms with uniform unit a_i, g_i; b uniform unless given."""
    terms = [(random_unit(spec, rng), random_unit(spec, rng))
             for _ in range(n)]
    if b is None:
        b = spec.from_packed(rng.randrange(spec.cardinality))
    return make_equation(spec, terms, b)


def find_generator(spec: FieldSpec,
                   fact: Factorization | None = None) -> FieldElement:
    """Smallest unit (in packed order) generating F_q^x."""
    q = spec.cardinality
    if fact is None:
        fact = factorize(q - 1)
    for k in range(1, q):
        g = spec.from_packed(k)
        if multiplicative_order(g, fact).order == q - 1:
            return g
    raise AssertionError("no generator found; F_q^x should be cyclic")


def element_of_order(spec: FieldSpec, d: int, gen: FieldElement,
                     rng: random.Random | None = None) -> FieldElement:
    """An element of exact order d | q-1: gen^((q-1)/d * j), gcd(j, d) = 1.

    Deterministic (j = 1) without an rng, uniform over the phi(d)
    candidates with one.
    """
    q = spec.cardinality
    if d < 1 or (q - 1) % d != 0:
        raise ValueError(f"order {d} does not divide q-1 = {q - 1}")
    j = 1
    if rng is not None and d > 1:
        while True:
            j = rng.randrange(1, d)
            if math.gcd(j, d) == 1:
                break
    return gen ** ((q - 1) // d * j)


def random_equation_with_orders(spec: FieldSpec, orders, rng: random.Random,
                                gen: FieldElement | None = None,
                                b=None) -> ExpEquation:
    """Uniform unit a_i, g_i of the prescribed exact order, b uniform."""
    if gen is None:
        gen = find_generator(spec)
    terms = [(random_unit(spec, rng), element_of_order(spec, d, gen, rng))
             for d in orders]
    if b is None:
        b = spec.from_packed(rng.randrange(spec.cardinality))
    eq = make_equation(spec, terms, b)
    assert sorted(eq.orders) == sorted(orders)
    return eq
