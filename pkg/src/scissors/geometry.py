"""Exact polytope calculus in E1 and E2.

E1 polytopes are unions of intervals with (possibly symbolic) ExactReal
endpoints.  E2 polytopes are unions of strictly convex polygons with rational
vertices.  Isometries are translations (T1, T2) or rational rotations followed
by a rational translation (SE2).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .exactnum import (
    ExactReal,
    Sign,
    as_fraction,
    compare,
    sign_of,
    sqrt_canonical,
)

E1 = "E1"
E2 = "E2"
T1 = "T1"
T2 = "T2"
SE2 = "SE2"
GROUP_GEOMETRY = {T1: E1, T2: E2, SE2: E2}

Point = tuple[Fraction, Fraction]


class GeometryMismatch(ValueError):
    pass


# ---------------------------------------------------------------- cells


@dataclass(frozen=True)
class Interval1D:
    lo: ExactReal
    hi: ExactReal

    def __post_init__(self):
        if sign_of(self.hi - self.lo) != Sign.POSITIVE:
            raise ValueError(f"degenerate interval [{self.lo}, {self.hi}]")

    @property
    def length(self) -> ExactReal:
        return self.hi - self.lo

    def measure(self) -> ExactReal:
        return self.hi - self.lo

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _twice_area(pts: Sequence[Point]) -> Fraction:
    n = len(pts)
    return sum((pts[i][0] * pts[(i + 1) % n][1] - pts[(i + 1) % n][0] * pts[i][1] for i in range(n)), Fraction(0))


def _clean(points: Iterable[Point]) -> list[Point]:
    """Drop repeated and collinear vertices (cyclically)."""
    pts: list[Point] = []
    for p in points:
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for i in range(len(pts)):
            if _cross(pts[i - 1], pts[i], pts[(i + 1) % len(pts)]) == 0:
                del pts[i]
                changed = True
                break
    return pts


@dataclass(frozen=True)
class ConvexCell2D:
    vertices: tuple[Point, ...]
    _bbox: tuple = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        pts = [(as_fraction(x), as_fraction(y)) for x, y in self.vertices]
        n = len(pts)
        if n < 3:
            raise ValueError("a convex cell needs at least 3 vertices")
        for i in range(n):
            if _cross(pts[i - 1], pts[i], pts[(i + 1) % n]) <= 0:
                raise ValueError(f"cell is not strictly convex counterclockwise at vertex {pts[i]}")
        if _twice_area(pts) <= 0:
            raise ValueError("cell has nonpositive area")
        start = min(range(n), key=lambda i: pts[i])
        pts = pts[start:] + pts[:start]
        object.__setattr__(self, "vertices", tuple(pts))
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        object.__setattr__(self, "_bbox", (min(xs), max(xs), min(ys), max(ys)))

    @classmethod
    def from_points(cls, points: Iterable) -> "ConvexCell2D | None":
        """Clean, orient counterclockwise and build; None when degenerate."""
        pts = _clean((as_fraction(x), as_fraction(y)) for x, y in points)
        if len(pts) < 3:
            return None
        if _twice_area(pts) < 0:
            pts.reverse()
        if _twice_area(pts) == 0:
            return None
        return cls(tuple(pts))

    @classmethod
    def rectangle(cls, x0, y0, x1, y1) -> "ConvexCell2D":
        x0, y0, x1, y1 = map(as_fraction, (x0, y0, x1, y1))
        return cls(((x0, y0), (x1, y0), (x1, y1), (x0, y1)))

    @property
    def area(self) -> Fraction:
        return _twice_area(self.vertices) / 2

    def measure(self) -> ExactReal:
        return ExactReal.rational(self.area)

    @property
    def bbox(self):
        return self._bbox

    def edges(self):
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def __str__(self):
        return "(" + ", ".join(f"({x}, {y})" for x, y in self.vertices) + ")"


def _bbox_disjoint(a: ConvexCell2D, b: ConvexCell2D) -> bool:
    ax0, ax1, ay0, ay1 = a.bbox
    bx0, bx1, by0, by1 = b.bbox
    return ax1 <= bx0 or bx1 <= ax0 or ay1 <= by0 or by1 <= ay0


def _clip_halfplane(poly: list[Point], p: Point, q: Point) -> list[Point]:
    """Part of the polygon on the closed left side of the directed line p -> q."""
    out = []
    n = len(poly)
    for i in range(n):
        cur, nxt = poly[i], poly[(i + 1) % n]
        c_cur, c_nxt = _cross(p, q, cur), _cross(p, q, nxt)
        if c_cur >= 0:
            out.append(cur)
        if (c_cur > 0 and c_nxt < 0) or (c_cur < 0 and c_nxt > 0):
            t = c_cur / (c_cur - c_nxt)
            out.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
    return out


def clip_convex(a: ConvexCell2D, b: ConvexCell2D) -> ConvexCell2D | None:
    """Intersection of two convex cells by half-plane clipping; None if it has zero area."""
    if _bbox_disjoint(a, b):
        return None
    poly = list(a.vertices)
    for p, q in b.edges():
        poly = _clip_halfplane(poly, p, q)
        if not poly:
            return None
    return ConvexCell2D.from_points(poly)


def cut_cell(cell: ConvexCell2D, point: Point, direction: Point) -> tuple[ConvexCell2D | None, ConvexCell2D | None]:
    """Split a cell by the line through ``point`` along ``direction`` (left part, right part)."""
    p = (as_fraction(point[0]), as_fraction(point[1]))
    q = (p[0] + as_fraction(direction[0]), p[1] + as_fraction(direction[1]))
    left = ConvexCell2D.from_points(_clip_halfplane(list(cell.vertices), p, q))
    right = ConvexCell2D.from_points(_clip_halfplane(list(cell.vertices), q, p))
    return left, right


def intersect_intervals(a: Interval1D, b: Interval1D) -> Interval1D | None:
    lo = a.lo if compare(a.lo, b.lo) != Sign.NEGATIVE else b.lo
    hi = a.hi if compare(a.hi, b.hi) != Sign.POSITIVE else b.hi
    if sign_of(hi - lo) != Sign.POSITIVE:
        return None
    return Interval1D(lo, hi)


def intersect_cells(a, b):
    if isinstance(a, Interval1D):
        return intersect_intervals(a, b)
    return clip_convex(a, b)


def polygon_cells(points: Sequence) -> list[ConvexCell2D]:
    """Split a simple polygon into convex cells (the polygon itself when convex, else an ear triangulation)."""
    pts = _clean((as_fraction(x), as_fraction(y)) for x, y in points)
    if len(pts) < 3:
        return []
    if _twice_area(pts) < 0:
        pts.reverse()
    n = len(pts)
    if all(_cross(pts[i - 1], pts[i], pts[(i + 1) % n]) > 0 for i in range(n)):
        return [ConvexCell2D(tuple(pts))]
    cells = []
    ring = list(pts)
    while len(ring) > 3:
        for i in range(len(ring)):
            a, b, c = ring[i - 1], ring[i], ring[(i + 1) % len(ring)]
            if _cross(a, b, c) <= 0:
                continue
            if any(_in_triangle(p, a, b, c) for p in ring if p not in (a, b, c)):
                continue
            cells.append(ConvexCell2D.from_points((a, b, c)))
            del ring[i]
            break
        else:
            raise ValueError("polygon is not simple; cannot triangulate")
        ring = _clean(ring)
    last = ConvexCell2D.from_points(ring)
    if last is not None:
        cells.append(last)
    return [c for c in cells if c is not None]


def _in_triangle(p, a, b, c) -> bool:
    return _cross(a, b, p) >= 0 and _cross(b, c, p) >= 0 and _cross(c, a, p) >= 0


# ---------------------------------------------------------------- polytopes


@dataclass(frozen=True)
class Polytope:
    geometry: str
    cells: tuple

    def __post_init__(self):
        cells = tuple(self.cells)
        object.__setattr__(self, "cells", cells)
        if not cells:
            raise ValueError("polytopes are nonempty")
        kind = Interval1D if self.geometry == E1 else ConvexCell2D
        if self.geometry not in (E1, E2):
            raise ValueError(f"unknown geometry {self.geometry!r}")
        for c in cells:
            if not isinstance(c, kind):
                raise GeometryMismatch(f"{self.geometry} polytope given a {type(c).__name__}")
        for i in range(len(cells)):
            for j in range(i + 1, len(cells)):
                if intersect_cells(cells[i], cells[j]) is not None:
                    raise ValueError(f"cells {i} and {j} overlap")

    @classmethod
    def interval(cls, lo, hi) -> "Polytope":
        return cls(E1, (Interval1D(_er(lo), _er(hi)),))

    @classmethod
    def polygon(cls, points) -> "Polytope":
        return cls(E2, tuple(polygon_cells(points)))

    @classmethod
    def rectangle(cls, x0, y0, x1, y1) -> "Polytope":
        return cls(E2, (ConvexCell2D.rectangle(x0, y0, x1, y1),))

    def measure(self) -> ExactReal:
        return measure_of(self)

    def __str__(self):
        return " ∪ ".join(str(c) for c in self.cells)


def _er(v) -> ExactReal:
    return v if isinstance(v, ExactReal) else ExactReal.rational(v)


def measure_of(P: Polytope) -> ExactReal:
    if P.geometry == E1:
        total = ExactReal.zero()
        for c in P.cells:
            total = total + c.length
        return total
    return ExactReal.rational(sum((c.area for c in P.cells), Fraction(0)))


# ---------------------------------------------------------------- isometries


@dataclass(frozen=True)
class RationalRotation:
    c: Fraction
    s: Fraction

    def __post_init__(self):
        c, s = as_fraction(self.c), as_fraction(self.s)
        if c * c + s * s != 1:
            raise ValueError(f"({c}, {s}) is not on the unit circle")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "s", s)

    def __mul__(self, other: "RationalRotation") -> "RationalRotation":
        return RationalRotation(self.c * other.c - self.s * other.s, self.s * other.c + self.c * other.s)

    def inverse(self) -> "RationalRotation":
        return RationalRotation(self.c, -self.s)

    def apply(self, x: Fraction, y: Fraction) -> Point:
        return (self.c * x - self.s * y, self.s * x + self.c * y)

    def is_identity(self) -> bool:
        return self.c == 1

    def __str__(self):
        return f"rot({self.c}, {self.s})"


IDENTITY_ROTATION = RationalRotation(Fraction(1), Fraction(0))


@dataclass(frozen=True)
class Isometry:
    """x -> rot(x) + shift.  T1 shifts are ExactReals, E2 shifts rational pairs."""

    group: str
    shift: object
    rot: RationalRotation = IDENTITY_ROTATION

    def __post_init__(self):
        if self.group == T1:
            object.__setattr__(self, "shift", _er(self.shift))
        elif self.group in (T2, SE2):
            vx, vy = self.shift
            object.__setattr__(self, "shift", (as_fraction(vx), as_fraction(vy)))
            if self.group == T2 and not self.rot.is_identity():
                raise ValueError("T2 isometries cannot rotate")
        else:
            raise ValueError(f"unknown group {self.group!r}")

    @classmethod
    def t1(cls, t) -> "Isometry":
        return cls(T1, t)

    @classmethod
    def t2(cls, vx, vy) -> "Isometry":
        return cls(T2, (vx, vy))

    @classmethod
    def se2(cls, c, s, vx=0, vy=0) -> "Isometry":
        return cls(SE2, (vx, vy), RationalRotation(as_fraction(c), as_fraction(s)))

    @classmethod
    def identity(cls, group: str) -> "Isometry":
        return cls(group, ExactReal.zero() if group == T1 else (0, 0))

    @property
    def geometry(self) -> str:
        return GROUP_GEOMETRY[self.group]

    def is_identity(self) -> bool:
        if self.group == T1:
            return self.shift.is_zero()
        return self.rot.is_identity() and self.shift == (0, 0)

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other."""
        if other.group != self.group:
            raise GeometryMismatch(f"cannot compose {self.group} with {other.group}")
        if self.group == T1:
            return Isometry(T1, self.shift + other.shift)
        x, y = self.rot.apply(*other.shift)
        return Isometry(self.group, (x + self.shift[0], y + self.shift[1]), self.rot * other.rot)

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self) -> "Isometry":
        if self.group == T1:
            return Isometry(T1, -self.shift)
        inv = self.rot.inverse()
        x, y = inv.apply(*self.shift)
        return Isometry(self.group, (-x, -y), inv)

    def apply_point(self, p: Point) -> Point:
        x, y = self.rot.apply(*p)
        return (x + self.shift[0], y + self.shift[1])

    def apply_cell(self, cell):
        if self.group == T1:
            if not isinstance(cell, Interval1D):
                raise GeometryMismatch("T1 acts on E1 cells")
            return Interval1D(cell.lo + self.shift, cell.hi + self.shift)
        if not isinstance(cell, ConvexCell2D):
            raise GeometryMismatch(f"{self.group} acts on E2 cells")
        return ConvexCell2D(tuple(self.apply_point(p) for p in cell.vertices))

    def to_json(self):
        if self.group == T1:
            return {"t": self.shift.to_json()}
        out = {"v": [str(self.shift[0]), str(self.shift[1])]}
        if self.group == SE2:
            out["rot"] = [str(self.rot.c), str(self.rot.s)]
        return out

    def __str__(self):
        if self.group == T1:
            return str(self.shift)
        vx, vy = self.shift
        if self.group == T2:
            return f"({vx}, {vy})"
        return f"{self.rot}+({vx}, {vy})"


def apply_isometry(g: Isometry, P: Polytope) -> Polytope:
    if g.geometry != P.geometry:
        raise GeometryMismatch(f"{g.group} does not act on {P.geometry} polytopes")
    if g.is_identity():
        return P
    return _trusted_polytope(P.geometry, tuple(g.apply_cell(c) for c in P.cells))


def _trusted_polytope(geometry, cells) -> Polytope:
    # cells already known pairwise interior-disjoint
    P = object.__new__(Polytope)
    object.__setattr__(P, "geometry", geometry)
    object.__setattr__(P, "cells", tuple(cells))
    return P


# ---------------------------------------------------------------- covers


class CoverError(Exception):
    reason = "CoverError"


class NotContained(CoverError):
    reason = "NotContained"

    def __init__(self, piece: int, cell: int, inside: ExactReal, total: ExactReal):
        self.piece, self.cell, self.inside, self.total = piece, cell, inside, total
        super().__init__(f"NotContained(piece {piece}, cell {cell}): only {inside} of {total} lies in the target")


class Overlap(CoverError):
    reason = "Overlap"

    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"Overlap({i},{j})")


class MeasureGap(CoverError):
    reason = "MeasureGap"

    def __init__(self, delta: ExactReal):
        self.delta = delta
        super().__init__(f"MeasureGap({delta})")


@dataclass(frozen=True)
class CoverCertificate:
    target: Polytope
    pieces: tuple  # ((Isometry, Polytope), ...)
    contained: bool = True
    disjoint: bool = True
    balanced: bool = True

    @property
    def verified(self) -> bool:
        return self.contained and self.disjoint and self.balanced

    def moved_pieces(self) -> list[Polytope]:
        return [apply_isometry(g, P) for g, P in self.pieces]

    def moved_cells(self) -> list[tuple[int, int, object]]:
        out = []
        for i, (g, P) in enumerate(self.pieces):
            for k, c in enumerate(P.cells):
                out.append((i, k, g.apply_cell(c)))
        return out


def verify_cover(pieces: Sequence[tuple[Isometry, Polytope]], target: Polytope) -> CoverCertificate:
    """Exact check that the moved pieces tile the target.

    Raises NotContained, Overlap or MeasureGap (in that order of checking).
    """
    pieces = tuple((g, P) for g, P in pieces)
    for g, P in pieces:
        if g.geometry != target.geometry or P.geometry != target.geometry:
            raise GeometryMismatch("pieces and target live in different geometries")
    moved = [(i, k, g.apply_cell(c)) for i, (g, P) in enumerate(pieces) for k, c in enumerate(P.cells)]
    for i, k, cell in moved:
        total = cell.measure()
        inside = ExactReal.zero()
        for tcell in target.cells:
            common = intersect_cells(cell, tcell)
            if common is not None:
                inside = inside + common.measure()
        if inside != total:
            raise NotContained(i, k, inside, total)
    for a in range(len(moved)):
        i, _, ca = moved[a]
        for b in range(a + 1, len(moved)):
            j, _, cb = moved[b]
            if i == j:
                continue
            if intersect_cells(ca, cb) is not None:
                raise Overlap(i, j)
    covered = ExactReal.zero()
    for _, _, cell in moved:
        covered = covered + cell.measure()
    delta = measure_of(target) - covered
    if not delta.is_zero():
        raise MeasureGap(delta)
    return CoverCertificate(target, pieces, True, True, True)


def cover_holds(pieces, target) -> bool:
    try:
        verify_cover(pieces, target)
    except CoverError:
        return False
    return True


@dataclass(frozen=True)
class RefinedCell:
    index_a: int
    index_b: int
    cell: object


def common_refinement(cover_a: CoverCertificate, cover_b: CoverCertificate) -> list[RefinedCell]:
    """Positive-measure pairwise intersections of the moved cells of two covers of one target.

    Indices are flat positions in ``moved_cells()`` order.
    """
    if cover_a.target != cover_b.target:
        raise ValueError("common refinement needs covers of the same target")
    cells_a = [c for _, _, c in cover_a.moved_cells()]
    cells_b = [c for _, _, c in cover_b.moved_cells()]
    out = []
    for ia, ca in enumerate(cells_a):
        for ib, cb in enumerate(cells_b):
            common = intersect_cells(ca, cb)
            if common is not None:
                out.append(RefinedCell(ia, ib, common))
    return out


# ---------------------------------------------------------------- edges


def primitive_direction(dx: Fraction, dy: Fraction) -> tuple[tuple[int, int], int]:
    """Canonical primitive integer direction of (dx, dy) and +1/-1 for whether it agrees with it."""
    dx, dy = as_fraction(dx), as_fraction(dy)
    if dx == 0 and dy == 0:
        raise ValueError("zero vector has no direction")
    den = dx.denominator * dy.denominator // gcd(dx.denominator, dy.denominator)
    ix, iy = int(dx * den), int(dy * den)
    g = gcd(ix, iy)
    ix, iy = ix // g, iy // g
    if ix < 0 or (ix == 0 and iy < 0):
        return (-ix, -iy), -1
    return (ix, iy), 1


def canonical_direction(v: Sequence[int]) -> tuple[int, int]:
    return primitive_direction(Fraction(v[0]), Fraction(v[1]))[0]


@dataclass(frozen=True)
class SignedEdge:
    direction: tuple[int, int]
    length: ExactReal
    sign: int


def signed_edges(P: Polytope) -> list[SignedEdge]:
    """One record per cell edge; sign +1 when the cell interior lies left of the canonical direction."""
    if P.geometry != E2:
        raise GeometryMismatch("signed edges need an E2 polytope")
    out = []
    for cell in P.cells:
        for p, q in cell.edges():
            dx, dy = q[0] - p[0], q[1] - p[1]
            direction, agrees = primitive_direction(dx, dy)
            # counterclockwise traversal keeps the interior on the left of (dx, dy)
            out.append(SignedEdge(direction, sqrt_canonical(dx * dx + dy * dy), agrees))
    return out
