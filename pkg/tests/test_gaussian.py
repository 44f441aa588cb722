from fractions import Fraction as F

from hypothesis import given, strategies as st

from scissors.gaussian import add_classes, angle_class, canonical_prime, rotation_from_gaussian
from scissors.geometry import RationalRotation
from scissors.oracles import gaussian_angle_bruteforce


def test_canonical_primes():
    assert canonical_prime(5) == (2, 1)
    assert canonical_prime(13) == (3, 2)
    assert canonical_prime(29) == (5, 2)


def test_frozen_classes():
    assert angle_class(RationalRotation(F(4, 5), F(3, 5))) == {5: -2}
    assert rotation_from_gaussian(2, 1) == RationalRotation(F(3, 5), F(4, 5))
    assert angle_class(rotation_from_gaussian(2, 1)) == {5: 2}
    assert angle_class(RationalRotation(F(0), F(1))) == {}
    assert gaussian_angle_bruteforce(F(-119, 169), F(120, 169)) == {13: 4}


gauss = st.tuples(st.integers(-12, 12), st.integers(-12, 12)).filter(lambda t: t != (0, 0))


@given(gauss)
def test_class_matches_bruteforce(uv):
    r = rotation_from_gaussian(*uv)
    assert angle_class(r) == gaussian_angle_bruteforce(r.c, r.s)


@given(gauss, gauss)
def test_class_is_a_homomorphism(a, b):
    r, s = rotation_from_gaussian(*a), rotation_from_gaussian(*b)
    assert angle_class(r * s) == add_classes(angle_class(r), angle_class(s))
    assert add_classes(angle_class(r), angle_class(r.inverse())) == {}
