"""Explicit scissors automorphisms realizing prescribed H1 classes.

T1: the interval exchange of lengths u, v has class v⊗u − u⊗v.

SE2: a square of side C + S holds a tilted unit square (rotated by the angle
with cosine C, sine S) and four right triangles.  The triangles are cut into
eleven polygons a..k that translate onto the complement of an axis-aligned
unit square in the same outer square.  Only the square piece rotates, so the
class is angleClass(rotation) ⊗ 1.  The layout is valid for 0 < S < C.
"""
from __future__ import annotations

from fractions import Fraction

from sympy.solvers.diophantine.diophantine import sum_of_four_squares

from .exactnum import ExactReal, Sign, sign_of
from .gaussian import angle_class
from .geometry import (
    E2,
    SE2,
    T1,
    ConvexCell2D,
    Interval1D,
    Isometry,
    Polytope,
    RationalRotation,
    polygon_cells,
)
from .trace import ScissorsAutomorphism, trivial_automorphism

# ---------------------------------------------------------------- T1


def interval_exchange(u: ExactReal, v: ExactReal) -> ScissorsAutomorphism:
    """[0,u] ⊔ [u,u+v] -> swap; class v⊗u − u⊗v.  Needs u, v > 0."""
    zero = ExactReal.zero()
    target = Polytope("E1", (Interval1D(zero, u + v),))
    pieces = (Polytope("E1", (Interval1D(zero, u),)), Polytope("E1", (Interval1D(u, u + v),)))
    ident = Isometry.identity(T1)
    return ScissorsAutomorphism(target, pieces, (ident, ident), (Isometry.t1(v), Isometry.t1(-u)), T1)


def construct_t1(u: ExactReal, v: ExactReal) -> ScissorsAutomorphism:
    """An automorphism whose class is v⊗u − u⊗v, for any u, v."""
    su, sv = sign_of(u), sign_of(v)
    if su == Sign.ZERO or sv == Sign.ZERO:
        return trivial_automorphism(Polytope.interval(0, 1), T1)
    if su == Sign.NEGATIVE and sv == Sign.NEGATIVE:
        return interval_exchange(-u, -v)
    if su == Sign.NEGATIVE:
        return interval_exchange(v, -u)
    if sv == Sign.NEGATIVE:
        return interval_exchange(-v, u)
    return interval_exchange(u, v)


# ---------------------------------------------------------------- the rotated square


def _shapes(C: Fraction, S: Fraction) -> dict[str, callable]:
    K = C / S
    t = (1 - S - C) / 2

    def at(P, offsets):
        return [(P[0] + dx, P[1] + dy) for dx, dy in offsets]

    def e(P):
        Q = (P[0] + t, P[1] + C)
        return at(P, [(0, 0), (1 - C - S, K * (C + S - 1)), (1 - S - C, C)]) + at(Q, [(0, 0), (0, t), (-t, t)])

    return {
        "a": lambda P: at(P, [(0, 0), (1 - C, -(1 - C) * K), (1 - C, -(1 + S - C) / 2)]),
        "b": lambda P: [P, (S + C - 1, 0), (0, 0)],
        "c": lambda P: at(P, [(0, 0), (1 - C, 0), (1 - C, -(1 - C) * K)]),
        "d": lambda P: at(P, [(0, 0), (C - 1, 0), (1 - C - S, (3 * C - 1 - S) / 2), (1 - C - S, K * (C + S - 1))]),
        "e": e,
        "f": lambda P: at(P, [(0, 0), (t, 0), (t, t), (0, t)]),
        "g": lambda P: at(P, [(0, 0), (C, 0), (C, C + S - 1), (K * (C + S - 1), C + S - 1)]),
        "h": lambda P: at(P, [(0, 0), (0, C - 1), (K * (C - 1), C - 1)]),
        "i": lambda P: at(P, [(0, 0), (K * (C - 1), C - 1), ((C - S - 1) / 2, C - 1)]),
        "j": lambda P: at(P, [(0, 0), (K * (C + S - 1), C + S - 1), ((3 * C - 1 - S) / 2, C + S - 1), (0, 1 - C)]),
        "k": lambda P: at(P, [(0, 0), (-C, 0), (-C, 1 - S - C)]),
    }


def _placements(C: Fraction, S: Fraction):
    A, B, Cc, D = (Fraction(0), C), (S, Fraction(0)), (C + S, S), (C, C + S)
    left = {"a": A, "b": A, "c": D, "d": B, "e": Cc, "f": (C + S, C + S), "g": B, "h": Cc, "i": D, "j": A, "k": D}
    ac = (2 * C + S - 2, (S - C + 1) / 2)
    de = (C + S - 1, (1 + S - C) / 2)
    gj = (S, Fraction(1))
    hi = (S, 2 - C)
    right = {
        "a": ac, "c": ac, "b": (Fraction(0), C), "d": de, "e": de, "f": ((C + S - 1) / 2, C + S),
        "g": gj, "j": gj, "h": hi, "i": hi, "k": ((3 * C + S - 1) / 2, C + S),
    }
    return (A, B, Cc, D), left, right


def figure_polygons(C, S) -> list[tuple[str, list, list]]:
    """(name, left polygon, right polygon) for the twelve pieces, unit scale."""
    C, S = Fraction(C), Fraction(S)
    if not (0 < S < C) or C * C + S * S != 1:
        raise ValueError("the figure needs a rational rotation with 0 < sin < cos")
    shapes = _shapes(C, S)
    square, left, right = _placements(C, S)
    out = [(name, shapes[name](left[name]), shapes[name](right[name])) for name in sorted(shapes)]
    x0 = C + S - 1
    out.append(("square", list(square), [(x0, Fraction(0)), (x0 + 1, Fraction(0)), (x0 + 1, Fraction(1)), (x0, Fraction(1))]))
    return out


def isometry_from_points(src: list, dst: list, group: str = SE2) -> Isometry:
    """The orientation-preserving isometry taking src[k] to dst[k] for all k."""
    (x0, y0), (x1, y1) = src[0], src[1]
    (u0, v0), (u1, v1) = dst[0], dst[1]
    ax, ay = x1 - x0, y1 - y0
    bx, by = u1 - u0, v1 - v0
    n = ax * ax + ay * ay
    # rotation = b / a as complex numbers
    c, s = (bx * ax + by * ay) / n, (by * ax - bx * ay) / n
    rot = RationalRotation(c, s)
    rx, ry = rot.apply(x0, y0)
    g = Isometry(group, (u0 - rx, v0 - ry), rot)
    if any(g.apply_point(p) != q for p, q in zip(src, dst)):
        raise ValueError("point sets are not congruent")
    return g


def _scaled(points, lam, dx):
    return [(lam * x + dx, lam * y) for x, y in points]


def rotated_square(C, S, scale=1, in_place_side: str = "left") -> ScissorsAutomorphism:
    """The figure automorphism at one scale: pieces sit in the left (or right) layout."""
    return _assemble([(Fraction(C), Fraction(S), Fraction(scale))], in_place_side)


def _assemble(copies, in_place_side: str) -> ScissorsAutomorphism:
    pieces, moves = [], []
    H = max(lam * (C + S) for C, S, lam in copies)
    x = Fraction(0)
    fillers = []
    for C, S, lam in copies:
        side = lam * (C + S)
        for _, lpts, rpts in figure_polygons(C, S):
            L, R = _scaled(lpts, lam, x), _scaled(rpts, lam, x)
            if in_place_side == "right":
                L, R = R, L
            pieces.append(Polytope(E2, tuple(polygon_cells(L))))
            moves.append(isometry_from_points(L, R))
        if side < H:
            fillers.append(ConvexCell2D.rectangle(x, side, x + side, H))
        x += side
    ident = Isometry.identity(SE2)
    for cell in fillers:
        pieces.append(Polytope(E2, (cell,)))
        moves.append(ident)
    target = Polytope.rectangle(0, 0, x, H)
    return ScissorsAutomorphism(target, pieces, [ident] * len(pieces), moves, SE2)


def _figure_angle(rot: RationalRotation) -> tuple[Fraction, Fraction]:
    a, b = sorted((abs(rot.c), abs(rot.s)), reverse=True)
    return a, b


def construct_se2(rot, q) -> ScissorsAutomorphism:
    """An automorphism with class angleClass(rot) ⊗ q (q rational)."""
    if not isinstance(rot, RationalRotation):
        rot = RationalRotation(Fraction(rot[0]), Fraction(rot[1]))
    q = Fraction(q)
    want = angle_class(rot)
    if not want or q == 0:
        return trivial_automorphism(Polytope.rectangle(0, 0, 1, 1), SE2)
    C, S = _figure_angle(rot)
    # which layout to keep in place so the square's rotation carries the right sign
    probe = figure_polygons(C, S)[-1]
    natural = angle_class(isometry_from_points(probe[1], probe[2]).rot)
    same = natural == want
    if q < 0:
        same = not same
    m, n = abs(q).numerator, abs(q).denominator
    lams = [Fraction(a, n) for a in sum_of_four_squares(m * n) if a]
    return _assemble([(C, S, lam) for lam in lams], "left" if same else "right")


def construct_class(group: str, *args) -> ScissorsAutomorphism:
    """construct_class("T1", u, v) or construct_class("SE2", rotation, q)."""
    if group == T1:
        return construct_t1(*args)
    if group == SE2:
        return construct_se2(*args)
    raise ValueError(f"constructClass supports T1 and SE2, not {group!r}")
