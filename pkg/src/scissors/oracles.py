"""Slow, independent reference computations used to cross-check the fast paths."""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, isqrt

from .exactnum import ExactReal
from .geometry import E1, Polytope


def leibniz_det(M) -> int:
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i, j in enumerate(perm):
            term *= M[i][j]
            if not term:
                break
        total += term
    return total


def determinantal_divisors(M) -> list[int]:
    """Invariant factors from gcds of k x k minors: d_k = D_k / D_{k-1}."""
    rows = len(M)
    cols = len(M[0]) if M else 0
    D = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                g = gcd(g, leibniz_det([[M[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        D.append(g)
    return [D[k] // D[k - 1] for k in range(1, len(D))]


def gaussian_angle_bruteforce(c: Fraction, s: Fraction) -> dict[int, int]:
    """Exponent differences by repeated division in Z[i], trying every prime up to the denominator."""
    d = c.denominator * s.denominator // gcd(c.denominator, s.denominator)
    a, b = int(c * d), int(s * d)
    out = {}
    for p in range(2, d + 1):
        if d % p or any(p % q == 0 for q in range(2, isqrt(p) + 1)):
            continue
        u = next((u for u in range(1, isqrt(p) + 1) for v in range(1, u) if u * u + v * v == p), None)
        if u is None:
            continue
        v = isqrt(p - u * u)
        exps = []
        for (gu, gv) in ((u, v), (u, -v)):
            x, y, e = a, b, 0
            while True:
                # (x + yi) / (gu + gv i) = (x + yi)(gu - gv i) / p
                re, im = x * gu + y * gv, y * gu - x * gv
                if re % p or im % p:
                    break
                x, y, e = re // p, im // p, e + 1
            exps.append(e)
        if exps[0] != exps[1]:
            out[p] = exps[0] - exps[1]
    return out


def measure_bruteforce(P: Polytope) -> ExactReal:
    """Interval lengths, or areas as sums of fan triangles."""
    total = ExactReal.zero()
    for c in P.cells:
        if P.geometry == E1:
            total = total + c.hi - c.lo
        else:
            v0 = c.vertices[0]
            for v1, v2 in zip(c.vertices[1:], c.vertices[2:]):
                det = (v1[0] - v0[0]) * (v2[1] - v0[1]) - (v2[0] - v0[0]) * (v1[1] - v0[1])
                total = total + ExactReal.rational(abs(det) / 2)
    return total
