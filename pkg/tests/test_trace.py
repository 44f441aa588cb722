import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from scissors.acceptance import negation_measure
from scissors.covercat import GroupAction, build_homotopy_orbit
from scissors.exactnum import ExactReal, tensor
from scissors.geometry import E1, E2, SE2, T1, T2, Polytope
from scissors.measures import area_measure, hadwiger_measure, length_measure, object_measure
from scissors.oracles import measure_bruteforce
from scissors.randgen import (
    ea_orbit,
    rand_finite_chain,
    rand_pol_chain,
    rand_polytope,
    rand_strip_automorphism,
    rand_t1_automorphism,
    standard_table,
)
from scissors.trace import (
    BarChain,
    NonEquivariantMeasure,
    bar_boundary,
    check_simplicial,
    compose_automorphisms,
    h1_zero,
    reduce_h1,
    trace_automorphism,
    trace_k0,
    trace_simplex,
    trivial_automorphism,
)

TABLE = standard_table()
ORBIT = ea_orbit((3,))


def test_trivial_automorphism_has_zero_class():
    s = trivial_automorphism(Polytope.rectangle(0, 0, 1, 1), T2)
    tr = trace_automorphism(s, area_measure())
    assert tr.cls.is_zero() and str(tr.cls) == "0"


def test_non_equivariant_measure_is_refused():
    s = rand_pol_chain(random.Random(1), SE2, 1)
    with pytest.raises(NonEquivariantMeasure):
        trace_simplex(s, hadwiger_measure((1, 0)))


def test_trivial_action_breaks_simpliciality():
    # the same values with no action are not equivariant for negation
    rng = random.Random(3)
    wrong = object_measure("no-action", ORBIT.element_value, groups={ORBIT.group.name})
    fails = sum(not check_simplicial(rand_finite_chain(rng, ORBIT, 2), wrong).ok for _ in range(30))
    assert fails > 0


@given(st.integers(0, 10**6), st.sampled_from([T1, T2, SE2]))
def test_simplicial_geometric(seed, group):
    rng = random.Random(seed)
    s = rand_pol_chain(rng, group, rng.randint(1, 3), TABLE if group == T1 else None)
    mu = length_measure() if group == T1 else area_measure()
    assert check_simplicial(s, mu).ok


@given(st.integers(0, 10**6))
def test_simplicial_finite(seed):
    rng = random.Random(seed)
    s = rand_finite_chain(rng, ORBIT, rng.randint(1, 3), force_empty=seed % 4 == 0)
    assert check_simplicial(s, negation_measure(ORBIT)).ok


@given(st.integers(0, 10**6))
def test_k0_trace_matches_oracle(seed):
    rng = random.Random(seed)
    P = rand_polytope(rng, E1, TABLE)
    assert trace_k0(P, length_measure()) == measure_bruteforce(P)
    Q = rand_polytope(rng, E2)
    assert trace_k0(Q, area_measure(), SE2) == measure_bruteforce(Q)


@given(st.integers(0, 10**6))
def test_trace_of_composite_is_sum(seed):
    rng = random.Random(seed)
    length = TABLE.symbol("x")
    s = rand_t1_automorphism(rng, TABLE, length, 3)
    t = rand_t1_automorphism(rng, TABLE, length, 3)
    mu = length_measure()
    both = trace_automorphism(compose_automorphisms(s, t), mu).cls
    assert both == trace_automorphism(s, mu).cls + trace_automorphism(t, mu).cls


@given(st.integers(0, 10**6))
def test_inverse_negates_class(seed):
    rng = random.Random(seed)
    s = rand_strip_automorphism(rng, 3, 2, T2, 3)
    mu = area_measure()
    assert trace_automorphism(s.inverse(), mu).cls == -trace_automorphism(s, mu).cls


def test_boundary_of_frozen_chain():
    from scissors.covercat import IsometryGroup
    from scissors.geometry import Isometry

    G = IsometryGroup(T1)
    x, y = TABLE.symbol("x"), TABLE.symbol("y")
    c = BarChain(2, G)
    c.add([Isometry.t1(x), Isometry.t1(y)], ExactReal.rational(1))
    d = bar_boundary(c)
    # [y] - [x+y] + [x]
    assert len(d.terms) == 3
    assert reduce_h1(d) == h1_zero(T1)
