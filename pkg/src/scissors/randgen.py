"""Seeded random polytopes, covers, morphisms, chains and automorphisms."""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .covercat import (
    FiniteAbelianGroup,
    FiniteGroup,
    HomotopyOrbit,
    PolCategory,
    WMorphism,
    build_ea,
    build_homotopy_orbit,
    negation_action,
)
from .exactnum import ExactReal, GeneratorTable, Sign, SymbolWitness, compare, sign_of
from .geometry import (
    E1,
    E2,
    SE2,
    T1,
    T2,
    ConvexCell2D,
    Interval1D,
    Isometry,
    Polytope,
    RationalRotation,
    apply_isometry,
    cut_cell,
)
from .trace import NerveSimplex, ScissorsAutomorphism

PI_DIGITS = "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679"
E_DIGITS = "2.7182818284590452353602874713526624977572470936999595749669676277240766303535475945713821785251664274"
GAMMA_DIGITS = "0.5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495"


def standard_table(max_bits: int = 256) -> GeneratorTable:
    """x = pi, y = e, z = Euler's gamma, each with a 100-digit stream."""
    return GeneratorTable(
        [
            ("x", SymbolWitness(Fraction(3), Fraction(4), PI_DIGITS)),
            ("y", SymbolWitness(Fraction(2), Fraction(3), E_DIGITS)),
            ("z", SymbolWitness(Fraction(0), Fraction(1), GAMMA_DIGITS)),
        ],
        max_bits=max_bits,
    )


def rand_fraction(rng: random.Random, lo: int = -4, hi: int = 4, den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


def rand_exact(rng: random.Random, table: GeneratorTable, scale: int = 3) -> ExactReal:
    out = ExactReal.rational(rand_fraction(rng, -scale, scale))
    for name in table.names():
        if rng.random() < 0.6:
            out = out + table.symbol(name) * rand_fraction(rng, -2, 2, 3)
    return out


def rand_positive(rng: random.Random, table: GeneratorTable) -> ExactReal:
    while True:
        v = rand_exact(rng, table)
        if sign_of(v) == Sign.POSITIVE:
            return v


def rand_rotation(rng: random.Random, max_m: int = 6) -> RationalRotation:
    """A Pythagorean rotation (m^2 - n^2, 2mn)/(m^2 + n^2), up to a quarter turn and sign."""
    while True:
        m = rng.randint(2, max_m)
        n = rng.randint(1, m - 1)
        if gcd(m, n) == 1 and (m - n) % 2 == 1:
            break
    d = m * m + n * n
    c, s = Fraction(m * m - n * n, d), Fraction(2 * m * n, d)
    if rng.random() < 0.5:
        c, s = s, c
    return RationalRotation(c * rng.choice((1, -1)), s * rng.choice((1, -1)))


def rand_isometry(rng: random.Random, group: str, table: GeneratorTable | None = None) -> Isometry:
    if group == T1:
        return Isometry.t1(rand_exact(rng, table))
    v = (rand_fraction(rng), rand_fraction(rng))
    if group == T2:
        return Isometry.t2(*v)
    if rng.random() < 0.25:
        return Isometry(SE2, v)
    return Isometry(SE2, v, rand_rotation(rng))


# ---------------------------------------------------------------- polytopes


def _sorted_reals(values):
    import functools

    return sorted(values, key=functools.cmp_to_key(lambda a, b: int(compare(a, b))))


def _interior_points(rng, lo: ExactReal, hi: ExactReal, k: int, table) -> list[ExactReal]:
    """k distinct points strictly between lo and hi (some symbolic when a table is given)."""
    pts: list[ExactReal] = []
    width = hi - lo
    while len(pts) < k:
        t = Fraction(rng.randint(1, 15), 16)
        p = lo + width * t
        if table is not None and rng.random() < 0.5:
            p = p + table.symbol(rng.choice(table.names())) * Fraction(rng.randint(-3, 3), 97)
        if compare(p, lo) == Sign.POSITIVE and compare(hi, p) == Sign.POSITIVE and all(p != q for q in pts):
            pts.append(p)
    return _sorted_reals(pts)


def rand_polytope(rng: random.Random, geometry: str, table: GeneratorTable | None = None, max_cells: int = 3) -> Polytope:
    n = rng.randint(1, max_cells)
    if geometry == E1:
        start = rand_exact(rng, table)
        cells = []
        for _ in range(n):
            start = start + rand_positive(rng, table) * Fraction(1, 4) if cells else start
            end = start + rand_positive(rng, table)
            cells.append(Interval1D(start, end))
            start = end
        return Polytope(E1, tuple(cells))
    x0, y0 = rand_fraction(rng), rand_fraction(rng)
    box = ConvexCell2D.rectangle(x0, y0, x0 + rng.randint(1, 4), y0 + rng.randint(1, 4))
    cells = _cut_cells(rng, [box], n + rng.randint(0, 2))
    rng.shuffle(cells)
    return Polytope(E2, tuple(cells[:n]))


def _cut_cells(rng, cells: list[ConvexCell2D], want: int) -> list[ConvexCell2D]:
    cells = list(cells)
    tries = 0
    while len(cells) < want and tries < 50:
        tries += 1
        i = rng.randrange(len(cells))
        c = cells[i]
        # a point inside the cell: a random convex combination of its vertices
        w = [Fraction(rng.randint(1, 5)) for _ in c.vertices]
        tot = sum(w)
        p = (sum(wi * v[0] for wi, v in zip(w, c.vertices)) / tot, sum(wi * v[1] for wi, v in zip(w, c.vertices)) / tot)
        d = rng.choice([(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (1, -2), (3, 1)])
        left, right = cut_cell(c, p, d)
        if left is not None and right is not None:
            cells[i:i + 1] = [left, right]
    return cells


def split_polytope(rng: random.Random, P: Polytope, parts: int, table: GeneratorTable | None = None) -> list[Polytope]:
    """Partition P into ``parts`` (or fewer when P is too small to cut) nonempty polytopes."""
    if P.geometry == E1:
        cells = []
        for c in P.cells:
            k = rng.randint(0, parts - 1)
            pts = [c.lo] + _interior_points(rng, c.lo, c.hi, k, table) + [c.hi]
            cells += [Interval1D(a, b) for a, b in zip(pts, pts[1:])]
    else:
        cells = _cut_cells(rng, list(P.cells), len(P.cells) + parts - 1)
    rng.shuffle(cells)
    parts = min(parts, len(cells))
    groups = [[c] for c in cells[:parts]]
    for c in cells[parts:]:
        rng.choice(groups).append(c)
    return [Polytope(P.geometry, tuple(g)) for g in groups]


def rand_cover(rng, P: Polytope, group: str, parts: int, table=None) -> list[tuple[Isometry, Polytope]]:
    """A verified-by-construction cover of P: pieces g_i^-1 Q_i placed by g_i."""
    out = []
    for Q in split_polytope(rng, P, parts, table):
        g = rand_isometry(rng, group, table)
        out.append((g, apply_isometry(g.inverse(), Q)))
    return out


# ---------------------------------------------------------------- category-of-covers morphisms


def rand_w_pol(rng, cat: PolCategory, target: tuple, table=None, max_parts: int = 3) -> WMorphism:
    entries = []
    for j, B in enumerate(target):
        for g, A in rand_cover(rng, B, cat.group_name, rng.randint(1, max_parts), table):
            entries.append((A, j, g))
    rng.shuffle(entries)
    return WMorphism(tuple(e[0] for e in entries), target, tuple(e[1] for e in entries), tuple(e[2] for e in entries))


def rand_w_finite(rng, cat: HomotopyOrbit, target: tuple, empty_bias: float = 0.3) -> WMorphism:
    entries = []
    for j, B in enumerate(target):
        fams = cat.covers_of(B)
        empties = [f for f in fams if not f]
        if empties and rng.random() < empty_bias:
            fam = empties[0]
        else:
            fam = rng.choice(fams)
        for m in fam:
            entries.append((cat.source(m), j, m))
    rng.shuffle(entries)
    return WMorphism(tuple(e[0] for e in entries), target, tuple(e[1] for e in entries), tuple(e[2] for e in entries))


def rand_pol_chain(rng, group: str, degree: int, table=None) -> NerveSimplex:
    cat = PolCategory(group)
    geometry = E1 if group == T1 else E2
    X = tuple(rand_polytope(rng, geometry, table, 2) for _ in range(rng.randint(1, 2)))
    if degree == 0:
        return NerveSimplex.point(cat, X)
    ms = []
    for _ in range(degree):
        m = rand_w_pol(rng, cat, X, table, max_parts=2)
        ms.append(m)
        X = m.source
    return NerveSimplex.chain(cat, ms)


def ea_orbit(moduli=(3,)) -> HomotopyOrbit:
    """(E A_*)_hG for G = Z/2 acting on A by negation, tuple bound 3."""
    EA = build_ea(FiniteAbelianGroup(moduli), 3)
    G = FiniteGroup.cyclic(2)
    orbit = build_homotopy_orbit(EA, negation_action(G, EA))
    orbit.element_value = EA.element_value
    return orbit


def rand_finite_chain(rng, cat: HomotopyOrbit, degree: int, force_empty: bool = False) -> NerveSimplex:
    objs = list(cat.non_base)
    zero = next(o for o in objs if not cat.element_value[o])
    if force_empty:
        X = tuple(zero for _ in range(rng.randint(1, 2)))
    else:
        X = tuple(rng.choice(objs) for _ in range(rng.randint(1, 2)))
    if degree == 0:
        return NerveSimplex.point(cat, X)
    ms = []
    for k in range(degree):
        last = k == degree - 1
        if force_empty:
            # keep everything at 0 and finish with empty covers
            m = _zero_morphism(rng, cat, X, zero, empty=last)
        else:
            m = rand_w_finite(rng, cat, X)
        ms.append(m)
        X = m.source
    return NerveSimplex.chain(cat, ms)


def _zero_morphism(rng, cat: HomotopyOrbit, target, zero, empty: bool) -> WMorphism:
    entries = []
    for j, B in enumerate(target):
        if empty:
            continue
        fams = [f for f in cat.covers_of(B) if f and all(cat.source(m) == zero for m in f)]
        for m in rng.choice(fams):
            entries.append((cat.source(m), j, m))
    return WMorphism(tuple(e[0] for e in entries), target, tuple(e[1] for e in entries), tuple(e[2] for e in entries))


# ---------------------------------------------------------------- automorphisms


def rand_t1_automorphism(rng, table: GeneratorTable, length: ExactReal, pieces: int = 3) -> ScissorsAutomorphism:
    """Cut [0, length] into intervals and lay them back down in a random order."""
    zero = ExactReal.zero()
    pts = [zero] + _interior_points(rng, zero, length, pieces - 1, table) + [length]
    ivs = [Interval1D(a, b) for a, b in zip(pts, pts[1:])]
    order = list(range(len(ivs)))
    rng.shuffle(order)
    pos, starts = zero, {}
    for k in order:
        starts[k] = pos
        pos = pos + ivs[k].length
    ident = Isometry.identity(T1)
    return ScissorsAutomorphism(
        Polytope(E1, (Interval1D(zero, length),)),
        [Polytope(E1, (iv,)) for iv in ivs],
        [ident] * len(ivs),
        [Isometry.t1(starts[k] - ivs[k].lo) for k in range(len(ivs))],
        T1,
    )


def rand_strip_automorphism(rng, width, height, group: str = T2, strips: int = 3) -> ScissorsAutomorphism:
    """Cut a rectangle into strips and permute them (translations only)."""
    width, height = Fraction(width), Fraction(height)
    vertical = rng.random() < 0.5
    span = width if vertical else height
    cuts = sorted({Fraction(rng.randint(1, 31), 32) * span for _ in range(strips - 1)})
    edges = [Fraction(0)] + cuts + [span]
    sizes = [b - a for a, b in zip(edges, edges[1:])]
    order = list(range(len(sizes)))
    rng.shuffle(order)
    pos, start = Fraction(0), {}
    for k in order:
        start[k] = pos
        pos += sizes[k]
    pieces, moves = [], []
    for k, (a, b) in enumerate(zip(edges, edges[1:])):
        if vertical:
            pieces.append(Polytope.rectangle(a, 0, b, height))
            moves.append(Isometry(group, (start[k] - a, 0)))
        else:
            pieces.append(Polytope.rectangle(0, a, width, b))
            moves.append(Isometry(group, (0, start[k] - a)))
    ident = Isometry.identity(group)
    return ScissorsAutomorphism(Polytope.rectangle(0, 0, width, height), pieces, [ident] * len(pieces), moves, group)


def embed(s: ScissorsAutomorphism, width, height) -> ScissorsAutomorphism:
    """Extend an automorphism of [0,w]x[0,h] by the identity to [0,W]x[0,H]."""
    (x0, x1, y0, y1) = s.target.cells[0].bbox
    if len(s.target.cells) != 1 or x0 != 0 or y0 != 0 or s.target.cells[0].area != x1 * y1:
        raise ValueError("embed needs an axis-aligned rectangle target at the origin")
    W, H = Fraction(width), Fraction(height)
    if W < x1 or H < y1:
        raise ValueError("the new rectangle must contain the old one")
    fill = []
    if W > x1:
        fill.append(Polytope.rectangle(x1, 0, W, H))
    if H > y1:
        fill.append(Polytope.rectangle(0, y1, x1, H))
    ident = Isometry.identity(s.group)
    return ScissorsAutomorphism(
        Polytope.rectangle(0, 0, W, H),
        list(s.pieces) + fill,
        list(s.base) + [ident] * len(fill),
        list(s.move) + [ident] * len(fill),
        s.group,
    )


def as_group(s: ScissorsAutomorphism, group: str) -> ScissorsAutomorphism:
    """View a translation automorphism inside a larger isometry group."""
    conv = [Isometry(group, g.shift, g.rot) for g in s.base], [Isometry(group, g.shift, g.rot) for g in s.move]
    return ScissorsAutomorphism(s.target, s.pieces, conv[0], conv[1], group)
