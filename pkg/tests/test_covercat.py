import itertools

import pytest

from scissors.covercat import (
    CategoryBuilder,
    FinCatFam,
    FiniteAbelianGroup,
    FiniteGroup,
    GroupAction,
    build_ea,
    build_homotopy_orbit,
    check_weak_product,
    compose_w,
    find_isomorphism,
    group_category,
    identity_w,
    k0,
    negation_action,
    quillen_a_fibers,
    relation_matrix,
    three_object_category,
    toy_category,
    unit_category,
    validate,
    w_homs,
)
from scissors.measures import InconsistentMeasure, universal_measure_check


def test_all_shipped_categories_validate():
    G = FiniteGroup.cyclic(2)
    fork, act = three_object_category()
    for C in (unit_category(), toy_category(), group_category(G), fork, build_ea(FiniteAbelianGroup((3,)), 3)):
        assert validate(C).valid, C.name
    assert validate(build_homotopy_orbit(fork, act)).valid


def test_broken_category_is_reported():
    C = toy_category()
    data = C.to_json()
    data["covers"] = [c for c in data["covers"] if c["family"] != ["id_b"]]
    rep = validate(FinCatFam.from_json(data))
    assert not rep.valid
    assert "identity singleton of b" in rep.violations[0]


def test_json_round_trip():
    C = build_ea(FiniteAbelianGroup((2,)), 3)
    D = FinCatFam.from_json(C.to_json())
    assert D.to_json() == C.to_json()


def test_ea_family_count():
    # Z/2 with tuples up to length 2: 1 + 2 + 4 families, each over its sum
    C = build_ea(FiniteAbelianGroup((2,)), 2)
    assert len([f for t, f in C.families if t != C.basepoint]) == 7


def test_relation_count_for_z6():
    assert len(relation_matrix(build_ea(FiniteAbelianGroup((6,)), 3))) == 259


@pytest.mark.parametrize("moduli,name", [((2,), "ℤ/2"), ((3,), "ℤ/3"), ((2, 2), "ℤ/2 ⊕ ℤ/2"), ((6,), "ℤ/6")])
def test_k0_of_ea(moduli, name):
    A = FiniteAbelianGroup(moduli)
    K = k0(build_ea(A, 3 if A.order <= 4 else 2))
    assert K.group_name == name
    classes = {str(a): K.class_of(str(a)) for a in A.elements()}
    assert len(set(classes.values())) == A.order
    for a, b in itertools.product(A.elements(), repeat=2):
        assert classes[str(a + b)] == classes[str(a)] + classes[str(b)]


def test_toy_k0_and_universal_measure():
    C = toy_category()
    K = k0(C)
    assert K.group_name == "ℤ"
    assert K.class_of("a") == 2 * K.class_of("b")
    from fractions import Fraction as F

    assert universal_measure_check(C, {"a": F(6), "b": F(3)}).ok
    with pytest.raises(InconsistentMeasure):
        universal_measure_check(C, {"a": F(5), "b": F(3)})


def test_homotopy_orbit_of_trivial_action():
    G = FiniteGroup.cyclic(2)
    unit = unit_category()
    orbit = build_homotopy_orbit(unit, GroupAction.trivial(G, unit))
    iso = find_isomorphism(orbit, group_category(G))
    assert iso is not None
    assert find_isomorphism(orbit, toy_category()) is None


def test_orbit_composition_twists():
    G = FiniteGroup.cyclic(2)
    EA = build_ea(FiniteAbelianGroup((3,)), 2)
    O = build_homotopy_orbit(EA, negation_action(G, EA))
    f = O.pair("1>2", "1")  # source is -1 = 2, since 1·2 = 1
    assert O.source(f) == "2" and O.target(f) == "2"
    g = O.pair("1>0", "1")  # source -1 = 2
    # (f1 ∘ g1(f2), g1 g2) = (1>0 ∘ 2>1, 0)
    assert O.pair_of[O.compose(g, f)] == ("2>0", "0")


def test_w_identity_and_associativity():
    C = build_ea(FiniteAbelianGroup((2,)), 2)
    S, T, U = ("1", "1"), ("0",), ("0",)
    for m in w_homs(C, S, T):
        assert compose_w(C, identity_w(C, T), m) == m
        assert compose_w(C, m, identity_w(C, S)) == m
        for n in w_homs(C, T, U):
            for p in w_homs(C, U, U):
                assert compose_w(C, p, compose_w(C, n, m)) == compose_w(C, compose_w(C, p, n), m)


def test_weak_product_and_fibers_small():
    assert check_weak_product(toy_category(), ["x"], 2).equivalence
    rep = quillen_a_fibers(FiniteAbelianGroup((2,)), ["x", "y"], 3)
    assert rep.ok and len(rep.fibers) == 4


def test_builder_rejects_unknown_names():
    with pytest.raises(KeyError):
        CategoryBuilder(["a"], name="bad").morphism("f", "a", "b").build()
    with pytest.raises(KeyError):
        CategoryBuilder(["a", "b"], name="bad").morphism("f", "a", "b").cover("b", ["f", "g"]).build()
