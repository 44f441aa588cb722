import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from scissors.exactnum import ExactReal, sqrt_canonical
from scissors.geometry import (
    E1,
    E2,
    SE2,
    T1,
    T2,
    ConvexCell2D,
    Interval1D,
    Isometry,
    MeasureGap,
    NotContained,
    Overlap,
    Polytope,
    RationalRotation,
    apply_isometry,
    common_refinement,
    polygon_cells,
    signed_edges,
    verify_cover,
)
from scissors.measures import hadwiger
from scissors.oracles import measure_bruteforce
from scissors.randgen import rand_cover, rand_isometry, rand_polytope, standard_table

TABLE = standard_table()
ID2 = Isometry.identity(T2)


def test_cells_normalize_to_ccw_from_lowest_vertex():
    c = ConvexCell2D(((F(1), F(1)), (F(0), F(1)), (F(0), F(0)), (F(1), F(0))))
    assert c.vertices[0] == (0, 0)
    assert c.area == 1
    with pytest.raises(ValueError):
        ConvexCell2D(((F(0), F(0)), (F(0), F(1)), (F(1), F(1)), (F(1), F(0))))  # clockwise


def test_rotation_moves_vertex():
    g = Isometry.se2(F(4, 5), F(3, 5))
    assert g.apply_point((F(1), F(0))) == (F(4, 5), F(3, 5))
    with pytest.raises(ValueError):
        RationalRotation(F(1, 2), F(1, 2))


def test_nonconvex_polygon_is_split():
    L = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]
    cells = polygon_cells([(F(a), F(b)) for a, b in L])
    assert len(cells) >= 2
    assert sum(c.area for c in cells) == 3


def test_cover_failures_are_typed():
    sq = Polytope.rectangle(0, 0, 1, 1)
    target = Polytope.rectangle(0, 0, 1, 2)
    with pytest.raises(Overlap) as e:
        verify_cover([(ID2, sq), (ID2, sq)], target)
    assert (e.value.i, e.value.j) == (0, 1)
    with pytest.raises(MeasureGap) as e:
        verify_cover([(ID2, sq)], target)
    assert e.value.delta == ExactReal.rational(1)
    with pytest.raises(NotContained):
        verify_cover([(Isometry.t2(F(1, 2), 0), sq), (ID2, sq)], target)


def test_symbolic_interval_cover():
    x, y = TABLE.symbol("x"), TABLE.symbol("y")
    zero = ExactReal.zero()
    target = Polytope(E1, (Interval1D(zero, x + y),))
    a, b = Polytope(E1, (Interval1D(zero, x),)), Polytope(E1, (Interval1D(x, x + y),))
    cert = verify_cover([(Isometry.t1(y), a), (Isometry.t1(-x), b)], target)
    assert cert.verified


def test_common_refinement_of_two_interval_covers():
    target = Polytope.interval(0, 3)
    ident = Isometry.identity(T1)
    a = verify_cover([(ident, Polytope.interval(0, 2)), (ident, Polytope.interval(2, 3))], target)
    b = verify_cover([(ident, Polytope.interval(0, 1)), (ident, Polytope.interval(1, 3))], target)
    refined = common_refinement(a, b)
    assert [(r.index_a, r.index_b) for r in refined] == [(0, 0), (0, 1), (1, 1)]


def test_signed_edges_and_hadwiger():
    tri = Polytope.polygon([(F(0), F(0)), (F(1), F(0)), (F(0), F(1))])
    hyp = [e for e in signed_edges(tri) if e.direction == (1, -1)]
    assert len(hyp) == 1 and hyp[0].sign == -1 and hyp[0].length == sqrt_canonical(2)
    assert hadwiger(tri, (1, -1)) == -sqrt_canonical(2)
    other = Polytope.polygon([(F(1), F(0)), (F(1), F(1)), (F(0), F(1))])
    assert hadwiger(other, (1, -1)) == sqrt_canonical(2)
    assert hadwiger(Polytope.rectangle(0, 0, 2, 3), (1, 0)) == ExactReal.zero()


@given(st.integers(0, 10**6))
def test_random_covers_verify(seed):
    rng = random.Random(seed)
    for geometry, group in ((E1, T1), (E2, T2), (E2, SE2)):
        tab = TABLE if geometry == E1 else None
        P = rand_polytope(rng, geometry, tab)
        assert verify_cover(rand_cover(rng, P, group, 3, tab), P).verified


@given(st.integers(0, 10**6))
def test_isometries_form_a_group(seed):
    rng = random.Random(seed)
    for group in (T1, T2, SE2):
        g, h = rand_isometry(rng, group, TABLE), rand_isometry(rng, group, TABLE)
        assert g.compose(g.inverse()).is_identity()
        geometry = E1 if group == T1 else E2
        P = rand_polytope(rng, geometry, TABLE if geometry == E1 else None, 2)
        assert apply_isometry(g.compose(h), P) == apply_isometry(g, apply_isometry(h, P))
        assert measure_bruteforce(apply_isometry(g, P)) == P.measure()
