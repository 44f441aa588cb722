import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from scissors.exactnum import ExactReal
from scissors.geometry import E1, E2, SE2, T1, T2, Isometry, Polytope, verify_cover
from scissors.measures import (
    area_measure,
    cell_count_measure,
    hadwiger_measure,
    length_measure,
    measure_by_name,
    verify_measure,
)
from scissors.randgen import rand_cover, rand_polytope, standard_table

TABLE = standard_table()


def test_named_measures():
    assert measure_by_name("hadwiger:2,1", E2).name == "hadwiger:2,1"
    with pytest.raises(ValueError):
        measure_by_name("volume", E2)
    assert not hadwiger_measure((1, 0)).equivariant_for(SE2)
    assert area_measure().equivariant_for(SE2)


def test_area_of_rotated_square_target():
    assert area_measure()(Polytope.rectangle(0, 0, F(7, 5), F(7, 5))) == ExactReal.rational(F(49, 25))


def test_hadwiger_is_not_rotation_invariant():
    mu = hadwiger_measure((1, 0))
    tri = Polytope.polygon([(F(0), F(0)), (F(1), F(0)), (F(0), F(1))])
    from scissors.geometry import apply_isometry

    turned = apply_isometry(Isometry.se2(-1, 0), tri)
    assert mu(tri) != mu(turned)


def test_cell_count_control_fails():
    sq = Polytope.rectangle(0, 0, 2, 1)
    halves = [Polytope.rectangle(0, 0, 1, 1), Polytope.rectangle(1, 0, 2, 1)]
    ident = Isometry.identity(T2)
    cert = verify_cover([(ident, h) for h in halves], sq)
    assert verify_measure(area_measure(), cert).ok
    assert not verify_measure(cell_count_measure(E2), cert).ok


@given(st.integers(0, 10**6), st.sampled_from([(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)]))
def test_hadwiger_additive(seed, d):
    rng = random.Random(seed)
    P = rand_polytope(rng, E2)
    assert verify_measure(hadwiger_measure(d), verify_cover(rand_cover(rng, P, T2, 3), P)).ok


@given(st.integers(0, 10**6))
def test_length_and_area_additive(seed):
    rng = random.Random(seed)
    P = rand_polytope(rng, E1, TABLE)
    assert verify_measure(length_measure(), verify_cover(rand_cover(rng, P, T1, 3, TABLE), P)).ok
    Q = rand_polytope(rng, E2)
    assert verify_measure(area_measure(), verify_cover(rand_cover(rng, Q, SE2, 3), Q)).ok
