"""The acceptance suite: twelve exact checks, each returning a pass/fail line."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .construct import construct_class
from .covercat import (
    FiniteAbelianGroup,
    FiniteGroup,
    GroupAction,
    IsometryGroup,
    ModVector,
    PolCategory,
    WMorphism,
    build_ea,
    build_homotopy_orbit,
    check_w,
    check_weak_product,
    compose_w,
    factor_move_sub,
    find_isomorphism,
    group_category,
    k0,
    quillen_a_fibers,
    relation_matrix,
    three_object_category,
    toy_category,
    unit_category,
    validate,
)
from .exactnum import ExactReal, tensor
from .geometry import E1, E2, SE2, T1, T2, verify_cover
from .measures import (
    area_measure,
    cell_count_measure,
    hadwiger_measure,
    length_measure,
    object_measure,
    verify_measure,
)
from .oracles import determinantal_divisors, measure_bruteforce
from .randgen import (
    ea_orbit,
    rand_cover,
    rand_exact,
    rand_finite_chain,
    rand_isometry,
    rand_pol_chain,
    rand_polytope,
    rand_rotation,
    rand_w_finite,
    rand_w_pol,
    standard_table,
)
from .scenario import Scenario
from .snf import determinant, matmul, smith_normal_form
from .trace import (
    BarChain,
    NerveSimplex,
    angle_times,
    bar_boundary,
    check_simplicial,
    reduce_h1,
    trace_automorphism,
    trace_k0,
)

HADWIGER_DIRECTIONS = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)]
EA_GROUPS = [(2,), (3,), (2, 2), (6,)]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def shipped(name: str):
    return resources.files("scissors") / "data" / name


def load_shipped(name: str) -> Scenario:
    with resources.as_file(shipped(name)) as path:
        return Scenario.load(path)


def negation_measure(orbit) -> object:
    """Identity measure a -> a on E A, equivariant for negation by the nontrivial element."""
    G = orbit.group

    def act(g, v):
        return v if g == G.identity else -v

    return object_measure("element", orbit.element_value, groups={G.name}, action=act)


# ---------------------------------------------------------------- 1, 2: worked examples

INTERVAL_CHAIN = "([y]⊗x + [−x]⊗y) − ([0]⊗x + [0]⊗y)"
INTERVAL_CLASS = "y⊗x − x⊗y"


def check_interval_exchange(seed=0) -> CheckResult:
    t0 = time.perf_counter()
    sc = load_shipped("interval_exchange.json")
    tr = trace_automorphism(sc.automorphism(), length_measure())
    elapsed = time.perf_counter() - t0
    chain, cls = tr.chain_text(), str(tr.cls)
    x, y = sc.table.symbol("x"), sc.table.symbol("y")
    exact_ok = tr.cls.value == tensor(y, x) - tensor(x, y)
    ok = chain == INTERVAL_CHAIN and cls == INTERVAL_CLASS and exact_ok and elapsed < 1.0
    return CheckResult("interval-exchange trace", ok, f"chain {chain}; class {cls}; {elapsed:.3f}s")


def check_rotated_square(seed=0) -> CheckResult:
    t0 = time.perf_counter()
    sc = load_shipped("rotated_square.json")
    tr = trace_automorphism(sc.automorphism(), area_measure())
    elapsed = time.perf_counter() - t0
    want = angle_times((Fraction(4, 5), Fraction(3, 5)), 1)
    ok = tr.cls in (want, -want) and not tr.cls.is_zero() and elapsed < 1.0
    return CheckResult("rotated-square trace", ok, f"class {tr.cls}, nonzero={not tr.cls.is_zero()}; {len(sc.pieces)} pieces; {elapsed:.3f}s")


# ---------------------------------------------------------------- 3: K0 trace


def check_k0_trace(seed=0) -> CheckResult:
    rng = random.Random(seed)
    table = standard_table()
    bad, total = 0, 0
    for geometry, group, mu in ((E1, T1, length_measure()), (E2, T2, area_measure()), (E2, SE2, area_measure())):
        for _ in range(100):
            P = rand_polytope(rng, geometry, table if geometry == E1 else None)
            total += 1
            bad += trace_k0(P, mu, group) != measure_bruteforce(P)
    return CheckResult("K0 trace equals measure", bad == 0, f"{total - bad}/{total} polytopes agree with the fan/length oracle")


# ---------------------------------------------------------------- 4: simpliciality


def _empty_chain(cat, degree: int) -> NerveSimplex:
    empty = WMorphism((), (), (), ())
    return NerveSimplex.chain(cat, [empty] * degree)


def check_simpliciality(seed=0) -> CheckResult:
    rng = random.Random(seed)
    table = standard_table()
    orbit = ea_orbit((3,))
    settings = [
        ("T1/length", T1, length_measure()),
        ("T2/area", T2, area_measure()),
        ("T2/hadwiger", T2, hadwiger_measure((1, 1))),
        ("SE2/area", SE2, area_measure()),
        ("E(ℤ/3)_hℤ/2", None, negation_measure(orbit)),
    ]
    parts, ok = [], True
    for label, group, mu in settings:
        bad = empties = invalid = 0
        for k in range(200):
            degree = rng.randint(1, 3)
            if group is None:
                s = rand_finite_chain(rng, orbit, degree, force_empty=(k % 10 == 0))
            elif k % 20 == 0:
                # the empty tuple is an object too; its covers are empty
                s = _empty_chain(PolCategory(group), degree)
            else:
                s = rand_pol_chain(rng, group, degree, table if group == T1 else None)
            invalid += bool(s.problems())
            empties += not s.objects[-1]
            bad += not check_simplicial(s, mu).ok
        ok &= bad == 0 and invalid == 0 and empties >= 10
        parts.append(f"{label}: {200 - bad}/200 ok, {empties} empty")
    return CheckResult("trace is simplicial", ok, "; ".join(parts))


# ---------------------------------------------------------------- 5: bar complex algebra


def _rand_bar_chain(rng, degree: int, group, elements, values, action=None) -> BarChain:
    c = BarChain(degree, group, action=action)
    for _ in range(rng.randint(1, 4)):
        c.add([elements() for _ in range(degree)], values())
    return c


def _group_samplers(rng, table):
    out = []
    for g in (T1, T2, SE2):
        vals = (lambda: rand_exact(rng, table)) if g == T1 else (lambda: ExactReal.rational(Fraction(rng.randint(-9, 9), rng.randint(1, 4))))
        out.append((g, IsometryGroup(g), (lambda g=g: rand_isometry(rng, g, table)), vals, None))
    return out


def check_bar_algebra(seed=0) -> CheckResult:
    rng = random.Random(seed)
    table = standard_table()
    samplers = _group_samplers(rng, table)
    Z2 = FiniteGroup.cyclic(2)
    samplers.append(("ℤ/2 on ℤ/3", Z2, lambda: rng.choice(Z2.elements), lambda: ModVector([rng.randrange(3)], [3]),
                     lambda g, v: v if g == Z2.identity else -v))
    parts, ok = [], True
    for label, group, els, vals, action in samplers:
        dd = sum(not bar_boundary(bar_boundary(_rand_bar_chain(rng, 3, group, els, vals, action))).is_zero() for _ in range(100))
        line = f"{label}: ∂∂≠0 in {dd}/100"
        ok &= dd == 0
        if action is None:
            h1 = sum(not reduce_h1(bar_boundary(_rand_bar_chain(rng, 2, group, els, vals))).is_zero() for _ in range(100))
            ok &= h1 == 0
            line += f", boundaries nonzero in H1 {h1}/100"
        parts.append(line)
    return CheckResult("cycle/boundary algebra", ok, "; ".join(parts))


# ---------------------------------------------------------------- 6: additivity


def check_additivity(seed=0) -> CheckResult:
    rng = random.Random(seed)
    table = standard_table()
    settings = [("length", E1, T1, length_measure()), ("area/T2", E2, T2, area_measure()), ("area/SE2", E2, SE2, area_measure())]
    settings += [(f"hadwiger{d}", E2, T2, hadwiger_measure(d)) for d in HADWIGER_DIRECTIONS]
    parts, ok = [], True
    for label, geometry, group, mu in settings:
        bad = 0
        for _ in range(100):
            tab = table if geometry == E1 else None
            P = rand_polytope(rng, geometry, tab)
            cert = verify_cover(rand_cover(rng, P, group, rng.randint(1, 4), tab), P)
            bad += not verify_measure(mu, cert).ok
        ok &= bad == 0
        parts.append(f"{label} {100 - bad}/100")
    # negative control: counting cells is not additive
    control = cell_count_measure(E2)
    caught = 0
    for _ in range(30):
        P = rand_polytope(rng, E2, None)
        cert = verify_cover(rand_cover(rng, P, T2, 3), P)
        caught += not verify_measure(control, cert).ok
    ok &= caught > 0
    parts.append(f"cell-count control rejected on {caught}/30")
    return CheckResult("measure additivity", ok, "; ".join(parts))


# ---------------------------------------------------------------- 7: K0


def _snf_matches_oracle(M) -> bool:
    sf = smith_normal_form(M, ncols=len(M[0]))
    n, m = len(M), len(M[0])
    if matmul(matmul(sf.U, M), sf.V) != sf.D or abs(determinant(sf.U)) != 1 or abs(determinant(sf.V)) != 1:
        return False
    return [d for d in sf.diagonal if d] == determinantal_divisors(M)


def _class_map_is_iso(A: FiniteAbelianGroup, EA, K) -> bool:
    els = A.elements()
    img = {a: K.class_of(str(a)) for a in els}
    if len(set(img.values())) != len(els):
        return False
    return all(img[a + b] == img[a] + img[b] for a in els for b in els)


def check_k0(seed=0) -> CheckResult:
    rng = random.Random(seed)
    t0 = time.perf_counter()
    parts, ok = [], True
    toy = k0(toy_category())
    toy_ok = toy.group_name == "ℤ" and toy.class_of("a") == 2 * toy.class_of("b")
    ok &= toy_ok
    parts.append(f"toy K0={toy.group_name}, [a]={toy.class_of('a')}, [b]={toy.class_of('b')}")
    small = [relation_matrix(toy_category())]
    for moduli in EA_GROUPS:
        A = FiniteAbelianGroup(moduli)
        EA = build_ea(A, 3 if A.order <= 4 else 2)
        K = k0(EA)
        R = relation_matrix(EA)
        if len(R) <= 6 and len(R[0]) <= 6:
            small.append(R)
        good = K.invariant_factors == A.invariant_factors() and K.free_rank == 0 and _class_map_is_iso(A, EA, K)
        ok &= good
        parts.append(f"{A.name}: K0={K.group_name}")
    for _ in range(100):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        small.append([[rng.randint(-6, 6) for _ in range(m)] for _ in range(n)])
    snf_bad = sum(not _snf_matches_oracle(M) for M in small)
    ok &= snf_bad == 0
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 5.0
    parts.append(f"SNF vs determinantal divisors {len(small) - snf_bad}/{len(small)}; {elapsed:.2f}s")
    return CheckResult("K0 computations", ok, "; ".join(parts))


# ---------------------------------------------------------------- 8, 9, 10: categorical checks

POINT_SETS = [[], ["x"], ["x", "y"]]


def check_quillen_fibers(seed=0) -> CheckResult:
    parts, ok = [], True
    for moduli in ((2,), (3,)):
        A = FiniteAbelianGroup(moduli)
        for pts in POINT_SETS:
            rep = quillen_a_fibers(A, pts, 3)
            ok &= rep.ok and bool(rep.fibers)
            parts.append(f"{A.name}, |X|={len(pts)}: {sum(f.connected and f.terminal_ok for f in rep.fibers)}/{len(rep.fibers)} fibers")
    return CheckResult("Quillen-A fibers", ok, "; ".join(parts))


def check_weak_products(seed=0) -> CheckResult:
    parts, ok = [], True
    for C in (group_category(FiniteGroup.cyclic(2)), toy_category()):
        for pts in POINT_SETS:
            rep = check_weak_product(C, pts, 2)
            ok &= rep.equivalence
            parts.append(f"{C.name}, |X|={len(pts)}: {'equivalence' if rep.equivalence else 'FAILED'} ({rep.hom_pairs_checked} hom pairs)")
    return CheckResult("weak-product equivalence", ok, "; ".join(parts))


def check_homotopy_orbits(seed=0) -> CheckResult:
    G = FiniteGroup.cyclic(2)
    unit = unit_category()
    orbit = build_homotopy_orbit(unit, GroupAction.trivial(G, unit))
    rep1 = validate(orbit)
    iso = find_isomorphism(orbit, group_category(G)) is not None
    fork, act = three_object_category()
    rep2 = validate(build_homotopy_orbit(fork, act))
    ok = rep1.valid and rep2.valid and iso
    return CheckResult(
        "homotopy-orbit laws", ok,
        f"(1_*)_hℤ/2 {rep1}, isomorphic to ℤ/2_*: {iso}; fork_hℤ/2 {rep2}",
    )


# ---------------------------------------------------------------- 11, 12


def check_construct_class(seed=0) -> CheckResult:
    rng = random.Random(seed)
    table = standard_table()
    bad_t1 = bad_se2 = 0
    for _ in range(20):
        u, v = rand_exact(rng, table), rand_exact(rng, table)
        s = construct_class(T1, u, v)
        got = trace_automorphism(s, length_measure()).cls.value
        bad_t1 += got != tensor(v, u) - tensor(u, v)
    for _ in range(20):
        rot = rand_rotation(rng, 5)
        q = Fraction(rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 4))
        s = construct_class(SE2, rot, q)
        bad_se2 += trace_automorphism(s, area_measure()).cls != angle_times(rot, q)
    return CheckResult("class construction round-trips", bad_t1 == bad_se2 == 0, f"T1 {20 - bad_t1}/20, SE2 {20 - bad_se2}/20")


def _factor_ok(cat, m, finite: bool) -> bool:
    move, sub = factor_move_sub(cat, m)
    if compose_w(cat, sub, move) != m or check_w(cat, move) or check_w(cat, sub):
        return False
    if list(move.index_map) != list(range(len(m.source))):
        return False
    if finite:
        ident = cat.group.identity
        moves_ok = all(cat.pair_of[c][0] == cat.base_category.identities[cat.base_category.source(cat.pair_of[c][0])] for c in move.components)
        return moves_ok and all(cat.group_part(c) == ident for c in sub.components)
    return all(c.is_identity() for c in sub.components)


def check_factorization(seed=0) -> CheckResult:
    rng = random.Random(seed)
    table = standard_table()
    orbit = ea_orbit((3,))
    bad = 0
    for k in range(200):
        if k % 2:
            target = tuple(rng.choice(orbit.non_base) for _ in range(rng.randint(1, 3)))
            bad += not _factor_ok(orbit, rand_w_finite(rng, orbit, target), True)
        else:
            group = (T1, T2, SE2)[k // 2 % 3]
            cat = PolCategory(group)
            geometry = E1 if group == T1 else E2
            tab = table if group == T1 else None
            target = tuple(rand_polytope(rng, geometry, tab, 2) for _ in range(rng.randint(1, 2)))
            bad += not _factor_ok(cat, rand_w_pol(rng, cat, target, tab), False)
    return CheckResult("move/sub factorization", bad == 0, f"{200 - bad}/200 morphisms factor with valid move and sub parts")


CHECKS = [
    check_interval_exchange,
    check_rotated_square,
    check_k0_trace,
    check_simpliciality,
    check_bar_algebra,
    check_additivity,
    check_k0,
    check_quillen_fibers,
    check_weak_products,
    check_homotopy_orbits,
    check_construct_class,
    check_factorization,
]


def run_all(seed: int = 0) -> list[CheckResult]:
    return [check(seed) for check in CHECKS]
