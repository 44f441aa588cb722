"""Angles of rational rotations modulo rational multiples of pi.

Write c + si = (a + bi)/d in lowest terms.  Every prime p dividing d is
1 mod 4 and splits as p = pi * conj(pi) with pi = u + vi, u > v > 0.  Because
gcd(a, b) = 1, exactly one of pi, conj(pi) divides a + bi, to the power
2 v_p(d).  The angle class records v_pi - v_conj(pi) per prime.  The arguments
of the canonical primes together with pi are Q-linearly independent, so this
map identifies the rotation angle in R/(pi Q) exactly; units and the ramified
prime 1 + i only contribute rational multiples of pi and are discarded.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from sympy import factorint
from sympy.ntheory import sqrt_mod

from .geometry import RationalRotation


@lru_cache(maxsize=None)
def canonical_prime(p: int) -> tuple[int, int]:
    """(u, v) with u*u + v*v == p and u > v > 0, for a prime p = 1 mod 4."""
    if p % 4 != 1:
        raise ValueError(f"{p} is not 1 mod 4")
    # Hermite-Serret: run Euclid on (p, r) with r^2 = -1 mod p until below sqrt(p)
    r = sqrt_mod(-1, p)
    a, b = p, r
    limit = isqrt(p)
    while b > limit:
        a, b = b, a % b
    u, v = b, isqrt(p - b * b)
    if u * u + v * v != p:
        raise ArithmeticError(f"failed to split {p}")
    return (u, v) if u > v else (v, u)


def angle_class(rot) -> dict[int, int]:
    if not isinstance(rot, RationalRotation):
        rot = RationalRotation(Fraction(rot[0]), Fraction(rot[1]))
    c, s = rot.c, rot.s
    d = c.denominator * s.denominator // gcd(c.denominator, s.denominator)
    a, b = int(c * d), int(s * d)
    out = {}
    for p, e in factorint(d).items():
        if p % 4 != 1:
            raise ArithmeticError(f"prime {p} cannot divide the denominator of a unit-circle point")
        u, v = canonical_prime(p)
        if (a * u + b * v) % p == 0 and (b * u - a * v) % p == 0:
            out[p] = 2 * e
        else:
            out[p] = -2 * e
    return dict(sorted(out.items()))


def add_classes(x: dict, y: dict) -> dict:
    out = dict(x)
    for p, e in y.items():
        out[p] = out.get(p, 0) + e
        if not out[p]:
            del out[p]
    return dict(sorted(out.items()))


def rotation_from_gaussian(u: int, v: int) -> RationalRotation:
    """The rotation (u + vi)^2 / |u + vi|^2, whose class is {p: 2} for the canonical prime u + vi."""
    n = u * u + v * v
    return RationalRotation(Fraction(u * u - v * v, n), Fraction(2 * u * v, n))
