import random
from fractions import Fraction as F

from hypothesis import given, strategies as st

from scissors.construct import construct_class, construct_se2, figure_polygons, interval_exchange
from scissors.exactnum import ExactReal, tensor
from scissors.geometry import SE2, T1, RationalRotation
from scissors.measures import area_measure, length_measure
from scissors.randgen import rand_exact, rand_rotation, standard_table
from scissors.trace import angle_times, trace_automorphism

TABLE = standard_table()


def test_interval_exchange_chain_text():
    x, y = TABLE.symbol("x"), TABLE.symbol("y")
    # x = pi here; the class does not depend on which symbol is longer
    tr = trace_automorphism(interval_exchange(x, y), length_measure())
    assert tr.chain_text() == "([y]⊗x + [−x]⊗y) − ([0]⊗x + [0]⊗y)"
    assert str(tr.cls) == "y⊗x − x⊗y"


def test_figure_has_eleven_triangle_pieces_and_a_square():
    polys = figure_polygons(F(4, 5), F(3, 5))
    assert len(polys) == 12


def test_rotated_square_class():
    s = construct_se2((F(4, 5), F(3, 5)), 1)
    assert len(s.pieces) == 12
    assert s.target.cells[0].area == F(49, 25)
    cls = trace_automorphism(s, area_measure()).cls
    assert str(cls) == "{p=5: −2}⊗1"


def test_zero_requests_give_trivial_automorphisms():
    assert trace_automorphism(construct_se2(RationalRotation(F(0), F(1)), 3), area_measure()).cls.is_zero()
    assert trace_automorphism(construct_se2((F(4, 5), F(3, 5)), 0), area_measure()).cls.is_zero()
    zero = ExactReal.zero()
    assert trace_automorphism(construct_class(T1, zero, TABLE.symbol("x")), length_measure()).cls.is_zero()


@given(st.integers(0, 10**6))
def test_t1_round_trip(seed):
    rng = random.Random(seed)
    u, v = rand_exact(rng, TABLE), rand_exact(rng, TABLE)
    cls = trace_automorphism(construct_class(T1, u, v), length_measure()).cls
    assert cls.value == tensor(v, u) - tensor(u, v)


@given(st.integers(0, 10**6), st.fractions(min_value=-6, max_value=6, max_denominator=5))
def test_se2_round_trip(seed, q):
    rot = rand_rotation(random.Random(seed), 5)
    cls = trace_automorphism(construct_class(SE2, rot, q), area_measure()).cls
    assert cls == angle_times(rot, q)
