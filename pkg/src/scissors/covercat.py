"""Finite categories with covering families and their categories of covers.

Everything here uses the initial-basepoint convention: the basepoint ``*``
maps uniquely to every object, nothing but ``id_*`` maps into it, and maps out
of ``*`` are ignored when deciding whether a family covers.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .geometry import Isometry, apply_isometry, cover_holds
from .snf import SmithForm, smith_normal_form

BASE = "*"


# ---------------------------------------------------------------- abelian groups


class ModVector:
    """Vector in Z/m_1 + ... + Z/m_k; a modulus of 0 means a free Z coordinate."""

    __slots__ = ("coords", "moduli")

    def __init__(self, coords: Sequence[int], moduli: Sequence[int]):
        if len(coords) != len(moduli):
            raise ValueError("coords and moduli differ in length")
        self.moduli = tuple(int(m) for m in moduli)
        self.coords = tuple(c % m if m else int(c) for c, m in zip(coords, self.moduli))

    @classmethod
    def zero(cls, moduli: Sequence[int]) -> "ModVector":
        return cls([0] * len(moduli), moduli)

    def _check(self, other: "ModVector"):
        if not isinstance(other, ModVector) or other.moduli != self.moduli:
            raise ValueError("ModVectors live in different groups")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        return ModVector([a + b for a, b in zip(self.coords, other.coords)], self.moduli)

    __radd__ = __add__

    def __neg__(self):
        return ModVector([-a for a in self.coords], self.moduli)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        return ModVector([k * a for a in self.coords], self.moduli)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return isinstance(other, ModVector) and self.moduli == other.moduli and self.coords == other.coords

    def __hash__(self):
        return hash((self.coords, self.moduli))

    def __repr__(self):
        return f"ModVector({self.coords}, {self.moduli})"

    def __str__(self):
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(map(str, self.coords)) + ")"

    def to_json(self):
        return {"coords": list(self.coords), "moduli": list(self.moduli)}


def group_name(moduli: Sequence[int]) -> str:
    parts = [("ℤ" if m == 0 else f"ℤ/{m}") for m in moduli]
    return " ⊕ ".join(parts) if parts else "0"


class FiniteAbelianGroup:
    def __init__(self, moduli: Sequence[int]):
        if any(m < 1 for m in moduli):
            raise ValueError("finite abelian groups need positive moduli")
        self.moduli = tuple(moduli)

    def elements(self) -> list[ModVector]:
        return [ModVector(c, self.moduli) for c in itertools.product(*(range(m) for m in self.moduli))]

    def zero(self) -> ModVector:
        return ModVector.zero(self.moduli)

    @property
    def order(self) -> int:
        out = 1
        for m in self.moduli:
            out *= m
        return out

    def invariant_factors(self) -> tuple[int, ...]:
        n = len(self.moduli)
        diag = [[self.moduli[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return tuple(d for d in smith_normal_form(diag).diagonal if d != 1)

    @property
    def name(self) -> str:
        return group_name(self.moduli)


# ---------------------------------------------------------------- finite groups


class FiniteGroup:
    """Group given by a multiplication table on element names."""

    def __init__(self, elements: Sequence[str], table: dict, identity: str, name: str = "G"):
        self.elements = tuple(elements)
        self.table = dict(table)
        self.identity = identity
        self.name = name
        self._inv = {}
        for g in self.elements:
            for h in self.elements:
                if self.table[(g, h)] == identity:
                    self._inv[g] = h
        if len(self._inv) != len(self.elements):
            raise ValueError("not a group: some element lacks an inverse")

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        els = [str(i) for i in range(n)]
        table = {(str(a), str(b)): str((a + b) % n) for a in range(n) for b in range(n)}
        return cls(els, table, "0", f"ℤ/{n}")

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls.cyclic(1)

    def mul(self, g: str, h: str) -> str:
        return self.table[(g, h)]

    def inv(self, g: str) -> str:
        return self._inv[g]

    def key(self, g: str):
        return self.elements.index(g)

    def to_json(self, g: str):
        return g

    def check_axioms(self) -> list[str]:
        problems = []
        for g in self.elements:
            if self.mul(self.identity, g) != g or self.mul(g, self.identity) != g:
                problems.append(f"identity law fails at {g}")
        for a, b, c in itertools.product(self.elements, repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                problems.append(f"associativity fails at ({a},{b},{c})")
        return problems


class IsometryGroup:
    """Group operations on Isometry values of one kind (T1, T2 or SE2)."""

    def __init__(self, kind: str):
        self.name = kind
        self.identity = Isometry.identity(kind)

    def mul(self, g: Isometry, h: Isometry) -> Isometry:
        return g.compose(h)

    def inv(self, g: Isometry) -> Isometry:
        return g.inverse()

    def key(self, g: Isometry):
        return str(g.to_json())

    def to_json(self, g: Isometry):
        return g.to_json()


# ---------------------------------------------------------------- categories


class CoverError(ValueError):
    pass


class FinCatFam:
    """Finite pointed category with covering families."""

    def __init__(
        self,
        objects: Sequence[str],
        morphisms: dict[str, tuple[str, str]],
        compose: dict[tuple[str, str], str],
        identities: dict[str, str],
        covers: Iterable[tuple[str, Sequence[str]]],
        basepoint: str = BASE,
        name: str = "C",
    ):
        self.objects = tuple(objects)
        self.basepoint = basepoint
        self.morphisms = dict(morphisms)
        self.table = dict(compose)
        self.identities = dict(identities)
        self.name = name
        self.families: list[tuple[str, tuple[str, ...]]] = []
        self._cover_keys: set = set()
        for target, family in covers:
            self.add_cover(target, family)
        self._homs: dict[tuple[str, str], list[str]] = {}
        for f, (s, t) in self.morphisms.items():
            self._homs.setdefault((s, t), []).append(f)

    def add_cover(self, target: str, family: Sequence[str]):
        family = tuple(family)
        self.families.append((target, family))
        self._cover_keys.add(self._key(target, family))

    def _key(self, target, family):
        return (target, tuple(sorted(f for f in family if self.source(f) != self.basepoint)))

    @property
    def non_base(self) -> tuple[str, ...]:
        return tuple(o for o in self.objects if o != self.basepoint)

    def source(self, f: str) -> str:
        return self.morphisms[f][0]

    def target(self, f: str) -> str:
        return self.morphisms[f][1]

    def hom(self, a: str, b: str) -> list[str]:
        return self._homs.get((a, b), [])

    def identity(self, obj: str) -> str:
        return self.identities[obj]

    def compose(self, g: str, f: str) -> str:
        """g after f."""
        try:
            return self.table[(g, f)]
        except KeyError:
            raise CoverError(f"{g} ∘ {f} is not defined") from None

    def is_cover(self, target: str, family: Iterable[str]) -> bool:
        family = list(family)
        if target == self.basepoint:
            return all(f == self.identities[self.basepoint] for f in family)
        return self._key(target, family) in self._cover_keys

    # interface shared with the geometric categories
    def covers(self, target, components, sources=None) -> bool:
        return self.is_cover(target, components)

    def component_ok(self, comp, src, tgt) -> bool:
        return comp in self.morphisms and self.morphisms[comp] == (src, tgt)

    def covers_of(self, target: str) -> list[tuple[str, ...]]:
        return [fam for t, fam in self.families if t == target]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "basepoint": self.basepoint,
            "objects": list(self.objects),
            "morphisms": [{"id": f, "source": s, "target": t} for f, (s, t) in self.morphisms.items()],
            "compose": [[g, f, gf] for (g, f), gf in self.table.items()],
            "identities": dict(self.identities),
            "covers": [{"target": t, "family": list(fam)} for t, fam in self.families],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FinCatFam":
        try:
            return cls(
                data["objects"],
                {m["id"]: (m["source"], m["target"]) for m in data["morphisms"]},
                {(g, f): gf for g, f, gf in data["compose"]},
                data["identities"],
                [(c["target"], c["family"]) for c in data["covers"]],
                basepoint=data.get("basepoint", BASE),
                name=data.get("name", "C"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed category: {exc}") from exc


class CategoryBuilder:
    """Assemble a FinCatFam from generating morphisms by closing under composition.

    Morphisms are named paths; ``relations`` may identify composites with
    existing names.  Intended for the small hand-written examples only.
    """

    def __init__(self, objects: Sequence[str], basepoint: str = BASE, name: str = "C"):
        self.basepoint = basepoint
        self.objects = [basepoint] + [o for o in objects if o != basepoint]
        self.name = name
        self.morphisms: dict[str, tuple[str, str]] = {}
        self.table: dict[tuple[str, str], str] = {}
        self.identities: dict[str, str] = {}
        self.covers: list[tuple[str, tuple[str, ...]]] = []
        for o in self.objects:
            ident = f"id_{o}"
            self.morphisms[ident] = (o, o)
            self.identities[o] = ident
        for o in self.objects:
            if o != basepoint:
                self.morphisms[f"*>{o}"] = (basepoint, o)

    def morphism(self, name: str, source: str, target: str):
        self.morphisms[name] = (source, target)
        return self

    def composite(self, g: str, f: str, gf: str):
        self.table[(g, f)] = gf
        return self

    def cover(self, target: str, family: Sequence[str]):
        self.covers.append((target, tuple(family)))
        return self

    def build(self) -> FinCatFam:
        table = dict(self.table)
        for f, (s, t) in self.morphisms.items():
            table[(self.identities[t], f)] = f
            table[(f, self.identities[s])] = f
            if s == self.basepoint:
                continue
        # anything out of * composes to the unique map out of *
        for g, (s, t) in self.morphisms.items():
            for f, (s2, t2) in self.morphisms.items():
                if t2 == s and s2 == self.basepoint and (g, f) not in table:
                    table[(g, f)] = self.identities[t] if t == self.basepoint else f"*>{t}"
        covers = [(o, (self.identities[o],)) for o in self.objects if o != self.basepoint]
        covers += [c for c in self.covers if c not in covers]
        return FinCatFam(self.objects, self.morphisms, table, self.identities, covers, self.basepoint, self.name)


def trivial_category() -> FinCatFam:
    return CategoryBuilder([], name="*").build()


def unit_category() -> FinCatFam:
    """1_*: one object with only its identity, plus the basepoint."""
    return CategoryBuilder(["o"], name="1_*").build()


def group_category(G: FiniteGroup) -> FinCatFam:
    """G_*: one object whose endomorphisms are G; every singleton covers."""
    b = CategoryBuilder(["o"], name=f"({G.name})_*")
    names = {g: ("id_o" if g == G.identity else f"g{g}") for g in G.elements}
    for g in G.elements:
        if g != G.identity:
            b.morphism(names[g], "o", "o")
    for g in G.elements:
        for h in G.elements:
            b.composite(names[g], names[h], names[G.mul(g, h)])
    for g in G.elements:
        b.cover("o", [names[g]])
    return b.build()


def toy_category() -> FinCatFam:
    """Objects a, b with one map j: b -> a and the single cover {j, j} of a."""
    return CategoryBuilder(["a", "b"], name="toy").morphism("j", "b", "a").cover("a", ["j", "j"]).build()


def three_object_category() -> tuple[FinCatFam, "GroupAction"]:
    """a, b, c with u: a -> c, v: b -> c and the cover {u, v}; Z/2 swaps a and b."""
    C = (
        CategoryBuilder(["a", "b", "c"], name="fork")
        .morphism("u", "a", "c")
        .morphism("v", "b", "c")
        .cover("c", ["u", "v"])
        .build()
    )
    G = FiniteGroup.cyclic(2)
    swap_obj = {"a": "b", "b": "a", "c": "c", BASE: BASE}
    swap_mor = {"u": "v", "v": "u", "id_a": "id_b", "id_b": "id_a", "id_c": "id_c", "id_*": "id_*",
                "*>a": "*>b", "*>b": "*>a", "*>c": "*>c"}
    act = GroupAction.from_functions(
        G, C,
        lambda g, o: swap_obj[o] if g == "1" else o,
        lambda g, f: swap_mor[f] if g == "1" else f,
    )
    return C, act


# ---------------------------------------------------------------- validation


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    checked_composites: int = 0

    @property
    def valid(self) -> bool:
        return not self.violations

    def __str__(self):
        if self.valid:
            return f"valid ({self.checked_composites} composite families checked)"
        return "invalid:\n" + "\n".join(f"  - {v}" for v in self.violations)


def validate(C: FinCatFam, closure_bound: int = 3) -> ValidationReport:
    rep = ValidationReport()
    bad = rep.violations
    base = C.basepoint
    for o in C.objects:
        ident = C.identities.get(o)
        if ident is None or C.morphisms.get(ident) != (o, o):
            bad.append(f"object {o} has no identity")
    if bad:
        return rep
    for f, (s, t) in C.morphisms.items():
        if s not in C.objects or t not in C.objects:
            bad.append(f"morphism {f} has an unknown endpoint")
    into: dict[str, list[str]] = {}
    for f, (s, t) in C.morphisms.items():
        into.setdefault(t, []).append(f)
    # composition: total, well typed, unital, associative
    for g, (s, t) in C.morphisms.items():
        for f in into.get(s, []):
            gf = C.table.get((g, f))
            if gf is None:
                bad.append(f"composite {g} ∘ {f} missing")
            elif C.morphisms.get(gf) != (C.source(f), t):
                bad.append(f"composite {g} ∘ {f} = {gf} has the wrong type")
    for f, (s, t) in C.morphisms.items():
        if C.table.get((C.identities[t], f)) != f or C.table.get((f, C.identities[s])) != f:
            bad.append(f"identity law fails at {f}")
    if bad:
        return rep
    for h, (s, _) in C.morphisms.items():
        for g in into.get(s, []):
            for f in into.get(C.source(g), []):
                if C.compose(C.compose(h, g), f) != C.compose(h, C.compose(g, f)):
                    bad.append(f"associativity fails at ({h}, {g}, {f})")
    # axiom B and the initial basepoint
    if C.hom(base, base) != [C.identities[base]]:
        bad.append("Hom(*,*) is not {id}")
    for o in C.non_base:
        if C.hom(o, base):
            bad.append(f"Hom({o}, *) is nonempty")
        if len(C.hom(base, o)) != 1:
            bad.append(f"* is not initial: |Hom(*, {o})| = {len(C.hom(base, o))}")
    # covers
    for t, fam in C.families:
        if t not in C.objects:
            bad.append(f"cover of unknown object {t}")
        for f in fam:
            if f not in C.morphisms or C.target(f) != t:
                bad.append(f"cover of {t} contains {f}, which does not map to {t}")
    for o in C.non_base:
        if not C.is_cover(o, [C.identities[o]]):
            bad.append(f"identity singleton of {o} is not a covering family")
    if bad:
        return rep
    for t, fam in C.families:
        if t == base:
            continue
        pieces = [f for f in fam if C.source(f) != base]
        for composite in _composites(C, pieces, closure_bound):
            rep.checked_composites += 1
            if not C.is_cover(t, composite):
                bad.append(f"closure fails: composite {sorted(composite)} of {fam} is not a cover of {t}")
                break
    return rep


def _composites(C: FinCatFam, pieces: list[str], budget: int) -> Iterator[list[str]]:
    """All composites of ``pieces`` with stored covers of their sources, of length <= budget."""
    if not pieces:
        yield []
        return
    head, rest = pieces[0], pieces[1:]
    for fam in C.covers_of(C.source(head)):
        fam = [f for f in fam if C.source(f) != C.basepoint]
        if len(fam) > budget:
            continue
        first = [C.compose(head, h) for h in fam]
        for tail in _composites(C, rest, budget - len(fam)):
            yield first + tail


# ---------------------------------------------------------------- group actions


class GroupAction:
    def __init__(self, G: FiniteGroup, C: FinCatFam, on_objects: dict, on_morphisms: dict):
        self.G = G
        self.C = C
        self.on_objects = dict(on_objects)
        self.on_morphisms = dict(on_morphisms)

    @classmethod
    def from_functions(cls, G, C, obj_fn: Callable, mor_fn: Callable) -> "GroupAction":
        return cls(
            G, C,
            {(g, o): obj_fn(g, o) for g in G.elements for o in C.objects},
            {(g, f): mor_fn(g, f) for g in G.elements for f in C.morphisms},
        )

    @classmethod
    def trivial(cls, G: FiniteGroup, C: FinCatFam) -> "GroupAction":
        return cls.from_functions(G, C, lambda g, o: o, lambda g, f: f)

    def obj(self, g: str, o: str) -> str:
        return self.on_objects[(g, o)]

    def mor(self, g: str, f: str) -> str:
        return self.on_morphisms[(g, f)]

    def check(self) -> list[str]:
        C, G = self.C, self.G
        bad = []
        for o in C.objects:
            if self.obj(G.identity, o) != o:
                bad.append(f"identity moves {o}")
        for g in G.elements:
            if self.obj(g, C.basepoint) != C.basepoint:
                bad.append(f"{g} moves the basepoint")
            for f, (s, t) in C.morphisms.items():
                gf = self.mor(g, f)
                if C.morphisms.get(gf) != (self.obj(g, s), self.obj(g, t)):
                    bad.append(f"{g}·{f} has the wrong type")
            for h in G.elements:
                for f in C.morphisms:
                    if self.mor(g, self.mor(h, f)) != self.mor(G.mul(g, h), f):
                        bad.append(f"action not associative at ({g},{h},{f})")
        for f in C.morphisms:
            if self.mor(G.identity, f) != f:
                bad.append(f"identity moves {f}")
        for (a, b), ab in C.table.items():
            for g in G.elements:
                if self.mor(g, ab) != C.compose(self.mor(g, a), self.mor(g, b)):
                    bad.append(f"{g} is not functorial on {a} ∘ {b}")
        for t, fam in C.families:
            for g in G.elements:
                if not C.is_cover(self.obj(g, t), [self.mor(g, f) for f in fam]):
                    bad.append(f"{g} does not preserve the cover {fam} of {t}")
        return bad


class HomotopyOrbit(FinCatFam):
    """C_hG: morphisms (f, g): A -> B with f: gA -> B, composed as (f1 ∘ g1(f2), g1 g2)."""

    def __init__(self, C: FinCatFam, action: GroupAction):
        problems = action.check()
        if problems:
            raise CoverError("action is not a covering-preserving functor: " + problems[0])
        G = action.G
        self.base_category = C
        self.action = action
        self.group = G
        self.pair_of: dict[str, tuple[str, str]] = {}
        self._id_of: dict[tuple[str, str], str] = {}
        morphisms = {}
        inv_obj = {(g, o): action.obj(G.inv(g), o) for g in G.elements for o in C.objects}
        for f, (s, t) in C.morphisms.items():
            groups = [G.identity] if s == C.basepoint else G.elements
            for g in groups:
                mid = f"({f},{g})"
                morphisms[mid] = (inv_obj[(g, s)], t)
                self.pair_of[mid] = (f, g)
                self._id_of[(f, g)] = mid
        table = {}
        for m1, (s1, t1) in morphisms.items():
            f1, g1 = self.pair_of[m1]
            for m2, (s2, t2) in morphisms.items():
                if t2 != s1:
                    continue
                f2, g2 = self.pair_of[m2]
                f = C.compose(f1, action.mor(g1, f2))
                g = G.identity if s2 == C.basepoint else G.mul(g1, g2)
                table[(m1, m2)] = self._id_of[(f, g)]
        identities = {o: self._id_of[(C.identities[o], G.identity)] for o in C.objects}
        covers = []
        for t, fam in C.families:
            fam = [f for f in fam if C.source(f) != C.basepoint]
            for gs in itertools.product(G.elements, repeat=len(fam)):
                covers.append((t, tuple(self._id_of[(f, g)] for f, g in zip(fam, gs))))
        super().__init__(C.objects, morphisms, table, identities, covers, C.basepoint, f"{C.name}_h{G.name}")

    def pair(self, f: str, g: str) -> str:
        return self._id_of[(f, g)]

    def is_cover(self, target, family) -> bool:
        family = [m for m in family if self.source(m) != self.basepoint]
        if target == self.basepoint:
            return all(m == self.identities[self.basepoint] for m in family)
        return self.base_category.is_cover(target, [self.pair_of[m][0] for m in family])

    def group_part(self, comp: str) -> str:
        return self.pair_of[comp][1]

    def act_obj(self, g: str, obj: str) -> str:
        return self.action.obj(g, obj)

    def split(self, comp: str) -> tuple[str, str]:
        """(sub, move) with comp = sub ∘ move, sub = (f, 1), move = (1, g)."""
        f, g = self.pair_of[comp]
        s = self.source(comp)
        moved = self.action.obj(g, s)
        return self._id_of[(f, self.group.identity)], self._id_of[(self.base_category.identities[moved], g)]


def build_homotopy_orbit(C: FinCatFam, action: GroupAction) -> HomotopyOrbit:
    return HomotopyOrbit(C, action)


def find_isomorphism(C: FinCatFam, D: FinCatFam) -> dict | None:
    """Brute-force isomorphism of categories with covering families (basepoint to basepoint)."""
    if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms):
        return None
    c_objs = list(C.non_base)
    for perm in itertools.permutations(D.non_base):
        omap = dict(zip(c_objs, perm))
        omap[C.basepoint] = D.basepoint
        types = {}
        ok = True
        for f, (s, t) in C.morphisms.items():
            types.setdefault((s, t), []).append(f)
        for (s, t), fs in types.items():
            if len(D.hom(omap[s], omap[t])) != len(fs):
                ok = False
        if not ok:
            continue
        groups = list(types.items())
        result = _match_morphisms(C, D, omap, groups, 0, {})
        if result is not None:
            return {"objects": omap, "morphisms": result}
    return None


def _match_morphisms(C, D, omap, groups, k, mmap):
    if k == len(groups):
        return dict(mmap) if _is_iso(C, D, omap, mmap) else None
    (s, t), fs = groups[k]
    for perm in itertools.permutations(D.hom(omap[s], omap[t])):
        trial = dict(mmap)
        trial.update(zip(fs, perm))
        out = _match_morphisms(C, D, omap, groups, k + 1, trial)
        if out is not None:
            return out
    return None


def _is_iso(C: FinCatFam, D: FinCatFam, omap: dict, mmap: dict) -> bool:
    for o in C.objects:
        if mmap[C.identities[o]] != D.identities[omap[o]]:
            return False
    for (g, f), gf in C.table.items():
        if D.compose(mmap[g], mmap[f]) != mmap[gf]:
            return False
    for t, fam in C.families:
        if not D.is_cover(omap[t], [mmap[f] for f in fam]):
            return False
    inv_o = {v: k for k, v in omap.items()}
    inv_m = {v: k for k, v in mmap.items()}
    for t, fam in D.families:
        if not C.is_cover(inv_o[t], [inv_m[f] for f in fam]):
            return False
    return True


# ---------------------------------------------------------------- the geometric categories


class PolCategory:
    """Pol(X, G) seen through its morphisms: a component is an isometry g with gA inside B."""

    def __init__(self, group: str):
        self.group_name = group
        self.group = IsometryGroup(group)

    def compose(self, g: Isometry, f: Isometry) -> Isometry:
        return g.compose(f)

    def identity(self, obj) -> Isometry:
        return self.group.identity

    def covers(self, target, components, sources) -> bool:
        return cover_holds(list(zip(components, sources)), target)

    def component_ok(self, comp, src, tgt) -> bool:
        return isinstance(comp, Isometry) and comp.group == self.group_name

    def group_part(self, comp: Isometry) -> Isometry:
        return comp

    def act_obj(self, g: Isometry, obj):
        return apply_isometry(g, obj)

    def split(self, comp: Isometry) -> tuple[Isometry, Isometry]:
        return self.group.identity, comp


# ---------------------------------------------------------------- category of covers


@dataclass(frozen=True)
class WMorphism:
    """A morphism {A_i} -> {B_j} of the category of covers."""

    source: tuple
    target: tuple
    index_map: tuple[int, ...]
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        object.__setattr__(self, "index_map", tuple(self.index_map))
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.index_map) != len(self.source) or len(self.components) != len(self.source):
            raise ValueError("index map and components must have one entry per source index")
        if any(not 0 <= j < len(self.target) for j in self.index_map):
            raise ValueError("index map leaves the target tuple")

    def fiber(self, j: int) -> list[int]:
        return [i for i, fj in enumerate(self.index_map) if fj == j]


def check_w(cat, m: WMorphism) -> list[str]:
    """Problems with m as a morphism of the category of covers of ``cat`` (empty when valid)."""
    bad = []
    for i, (a, c) in enumerate(zip(m.source, m.components)):
        if not cat.component_ok(c, a, m.target[m.index_map[i]]):
            bad.append(f"component {i} is not a morphism into target {m.index_map[i]}")
    if bad:
        return bad
    for j, b in enumerate(m.target):
        idx = m.fiber(j)
        if not cat.covers(b, [m.components[i] for i in idx], [m.source[i] for i in idx]):
            bad.append(f"the pieces over target {j} do not cover it")
    return bad


def identity_w(cat, X: Sequence) -> WMorphism:
    X = tuple(X)
    return WMorphism(X, X, tuple(range(len(X))), tuple(cat.identity(a) for a in X))


def compose_w(cat, m2: WMorphism, m1: WMorphism) -> WMorphism:
    """m2 after m1."""
    if m1.target != m2.source:
        raise CoverError("morphisms are not composable")
    return WMorphism(
        m1.source,
        m2.target,
        tuple(m2.index_map[j] for j in m1.index_map),
        tuple(cat.compose(m2.components[j], c) for j, c in zip(m1.index_map, m1.components)),
    )


def factor_move_sub(cat, m: WMorphism) -> tuple[WMorphism, WMorphism]:
    """Split m into a move (group parts only) followed by a covering sub-map (no group parts)."""
    subs, moves, mid = [], [], []
    for a, c in zip(m.source, m.components):
        sub, move = cat.split(c)
        subs.append(sub)
        moves.append(move)
        mid.append(cat.act_obj(cat.group_part(c), a))
    move = WMorphism(m.source, tuple(mid), tuple(range(len(mid))), tuple(moves))
    sub = WMorphism(tuple(mid), m.target, m.index_map, tuple(subs))
    return move, sub


def w_homs(cat: FinCatFam, S: Sequence[str], T: Sequence[str]) -> Iterator[WMorphism]:
    """Enumerate Hom(S, T) in the category of covers of a finite category."""
    S, T = tuple(S), tuple(T)
    homs = [[cat.hom(a, b) for b in T] for a in S]
    for f in itertools.product(range(len(T)), repeat=len(S)):
        choices = [homs[i][f[i]] for i in range(len(S))]
        if any(not c for c in choices):
            continue
        for comps in itertools.product(*choices):
            if all(cat.is_cover(T[j], [comps[i] for i in range(len(S)) if f[i] == j]) for j in range(len(T))):
                yield WMorphism(S, T, f, comps)


def w_hom_exists(cat: FinCatFam, S, T) -> bool:
    return next(w_homs(cat, S, T), None) is not None


def tuples_upto(objects: Sequence, bound: int) -> Iterator[tuple]:
    for n in range(bound + 1):
        yield from itertools.product(objects, repeat=n)


# ---------------------------------------------------------------- K0


@dataclass(frozen=True)
class K0Presentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[int, ...], ...]
    smith: SmithForm

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.smith.diagonal if d > 1)

    @property
    def free_rank(self) -> int:
        return len(self.generators) - self.smith.rank

    @property
    def moduli(self) -> tuple[int, ...]:
        return self.invariant_factors + (0,) * self.free_rank

    def _kept(self) -> list[tuple[int, int]]:
        """(column of V, modulus) for every coordinate of the canonical quotient."""
        diag = self.smith.diagonal
        kept = [(i, d) for i, d in enumerate(diag) if d > 1]
        kept += [(i, 0) for i in range(self.smith.rank, len(self.generators))]
        return kept

    def class_of(self, obj: str) -> ModVector:
        k = self.generators.index(obj)
        row = self.smith.V[k]
        kept = self._kept()
        return ModVector([row[i] for i, _ in kept], [d for _, d in kept])

    @property
    def group_name(self) -> str:
        return group_name(self.moduli)

    def table(self) -> dict[str, ModVector]:
        return {g: self.class_of(g) for g in self.generators}


def relation_matrix(C: FinCatFam) -> list[list[int]]:
    gens = list(C.non_base)
    pos = {g: i for i, g in enumerate(gens)}
    rows = []
    for t, fam in C.families:
        if t == C.basepoint:
            continue
        row = [0] * len(gens)
        row[pos[t]] += 1
        for f in fam:
            s = C.source(f)
            if s != C.basepoint:
                row[pos[s]] -= 1
        rows.append(row)
    return rows


def k0(C: FinCatFam) -> K0Presentation:
    R = relation_matrix(C)
    gens = tuple(C.non_base)
    return K0Presentation(gens, tuple(map(tuple, R)), smith_normal_form(R, ncols=len(gens)))


# ---------------------------------------------------------------- E A


def _element_name(a: ModVector) -> str:
    return str(a)


def build_ea(A: FiniteAbelianGroup, max_tuple_len: int) -> FinCatFam:
    """E A_*: elements of A, a unique map between any two, tuples summing to the target cover it."""
    if max_tuple_len < 2:
        raise ValueError("the tuple-length bound must be at least 2")
    els = A.elements()
    names = [_element_name(a) for a in els]
    value = dict(zip(names, els))
    objects = [BASE] + names
    morphisms = {f"{BASE}>{BASE}": (BASE, BASE)}
    for b in names:
        morphisms[f"{BASE}>{b}"] = (BASE, b)
        for a in names:
            morphisms[f"{a}>{b}"] = (a, b)
    identities = {o: f"{o}>{o}" for o in objects}
    table = {}
    for g, (s, t) in morphisms.items():
        for f, (s2, t2) in morphisms.items():
            if t2 == s:
                table[(g, f)] = f"{s2}>{t}"
    covers = []
    for n in range(max_tuple_len + 1):
        for combo in itertools.product(names, repeat=n):
            total = A.zero()
            for a in combo:
                total = total + value[a]
            covers.append((_element_name(total), tuple(f"{a}>{_element_name(total)}" for a in combo)))
    C = FinCatFam(objects, morphisms, table, identities, covers, BASE, f"E({A.name})_*")
    C.element_value = value
    return C


def negation_action(G: FiniteGroup, EA: FinCatFam) -> GroupAction:
    """Z/2 acting on E A by a -> -a (the nontrivial element is "1")."""
    neg = {n: _element_name(-v) for n, v in EA.element_value.items()}
    neg[BASE] = BASE

    def obj(g, o):
        return neg[o] if g != G.identity else o

    def mor(g, f):
        s, t = EA.morphisms[f]
        return f"{obj(g, s)}>{obj(g, t)}"

    return GroupAction.from_functions(G, EA, obj, mor)


# ---------------------------------------------------------------- smash products, weak products, fibers


def smash(points: Sequence[str], C: FinCatFam) -> FinCatFam:
    """X ∧ C for a finite pointed set with non-base points ``points``."""
    base = C.basepoint
    objects = [base]
    pair_obj = {}
    for x in points:
        for o in C.non_base:
            name = f"{x}:{o}"
            objects.append(name)
            pair_obj[name] = (x, o)
    morphisms = {C.identities[base]: (base, base)}
    pair_mor = {}
    for x in points:
        for f, (s, t) in C.morphisms.items():
            if t == base:
                continue
            src = base if s == base else f"{x}:{s}"
            name = f"{x}:{f}"
            if s == base:
                name = f"*>{x}:{t}"
            morphisms[name] = (src, f"{x}:{t}")
            pair_mor[name] = (x, f)
    identities = {base: C.identities[base]}
    for name, (x, o) in pair_obj.items():
        identities[name] = f"{x}:{C.identities[o]}"
    table = {}
    for g, (s, t) in morphisms.items():
        for f, (s2, t2) in morphisms.items():
            if t2 != s:
                continue
            if g == C.identities[base]:
                table[(g, f)] = f
            elif f == C.identities[base]:
                table[(g, f)] = g
            else:
                x, gg = pair_mor[g]
                _, ff = pair_mor[f]
                gf = C.compose(gg, ff)
                table[(g, f)] = f"*>{x}:{C.target(gf)}" if C.source(gf) == base else f"{x}:{gf}"
    covers = []
    for x in points:
        for t, fam in C.families:
            if t == base:
                continue
            covers.append((f"{x}:{t}", tuple(f"{x}:{f}" for f in fam if C.source(f) != base)))
    X = FinCatFam(objects, morphisms, table, identities, covers, base, f"X∧{C.name}")
    X.pair_obj = pair_obj
    X.pair_mor = pair_mor
    X.points = tuple(points)
    return X


def _split_tuple(XC: FinCatFam, S: Sequence[str]) -> tuple[tuple[str, ...], ...]:
    return tuple(tuple(XC.pair_obj[a][1] for a in S if XC.pair_obj[a][0] == x) for x in XC.points)


def project(XC: FinCatFam, m: WMorphism) -> tuple[WMorphism, ...]:
    """The map 𝒲(X∧C) -> ⊕_x 𝒲(C) on a morphism."""
    out = []
    for x in XC.points:
        src = [i for i, a in enumerate(m.source) if XC.pair_obj[a][0] == x]
        tgt = [j for j, b in enumerate(m.target) if XC.pair_obj[b][0] == x]
        where = {j: k for k, j in enumerate(tgt)}
        if any(m.index_map[i] not in where for i in src):
            raise CoverError("a component changes the X coordinate")
        out.append(WMorphism(
            tuple(XC.pair_obj[m.source[i]][1] for i in src),
            tuple(XC.pair_obj[m.target[j]][1] for j in tgt),
            tuple(where[m.index_map[i]] for i in src),
            tuple(XC.pair_mor[m.components[i]][1] for i in src),
        ))
    return tuple(out)


@dataclass
class WeakProductReport:
    essentially_surjective: bool = True
    fully_faithful: bool = True
    objects_checked: int = 0
    hom_pairs_checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def equivalence(self) -> bool:
        return self.essentially_surjective and self.fully_faithful


def check_weak_product(C: FinCatFam, points: Sequence[str], bound: int) -> WeakProductReport:
    rep = WeakProductReport()
    XC = smash(points, C)
    # essential surjectivity: disjointify any family of tuples
    per_point = list(tuples_upto(C.non_base, bound))
    for family in itertools.product(per_point, repeat=len(points)):
        S = tuple(f"{x}:{o}" for x, T in zip(points, family) for o in T)
        rep.objects_checked += 1
        if _split_tuple(XC, S) != tuple(family):
            rep.essentially_surjective = False
            rep.failures.append(f"no preimage found for {family}")
    # full faithfulness: hom-set bijections
    tuples = list(tuples_upto(XC.non_base, bound))
    for S in tuples:
        for T in tuples:
            rep.hom_pairs_checked += 1
            images = [project(XC, m) for m in w_homs(XC, S, T)]
            Sx, Tx = _split_tuple(XC, S), _split_tuple(XC, T)
            expected = set(itertools.product(*(list(w_homs(C, a, b)) for a, b in zip(Sx, Tx))))
            if len(set(images)) != len(images) or set(images) != expected:
                rep.fully_faithful = False
                rep.failures.append(f"Hom({S}, {T}) is not a bijection ({len(images)} vs {len(expected)})")
    return rep


@dataclass
class FiberResult:
    target: tuple
    size: int
    connected: bool
    terminal: tuple
    terminal_ok: bool


@dataclass
class FiberReport:
    fibers: list[FiberResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(f.connected and f.terminal_ok for f in self.fibers)


def quillen_a_fibers(A: FiniteAbelianGroup, points: Sequence[str], max_tuple_len: int) -> FiberReport:
    """Fibers of 𝒲(X∧E A_*) -> U(X⊗A): each should be connected with {(x, a_x)} terminal."""
    EA = build_ea(A, max(2, max_tuple_len))
    XC = smash(points, EA)
    value = EA.element_value
    fibers: dict[tuple, list[tuple]] = {}
    for S in tuples_upto(XC.non_base, max_tuple_len):
        sums = {x: A.zero() for x in points}
        for a in S:
            x, o = XC.pair_obj[a]
            sums[x] = sums[x] + value[o]
        fibers.setdefault(tuple(str(sums[x]) for x in points), []).append(S)
    rep = FiberReport()
    for key in sorted(fibers):
        objs = fibers[key]
        terminal = tuple(f"{x}:{a}" for x, a in zip(points, key))
        parent = list(range(len(objs)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(len(objs)):
            for j in range(i + 1, len(objs)):
                if find(i) != find(j) and (w_hom_exists(XC, objs[i], objs[j]) or w_hom_exists(XC, objs[j], objs[i])):
                    parent[find(i)] = find(j)
        connected = len({find(i) for i in range(len(objs))}) == 1
        terminal_ok = terminal in objs and all(sum(1 for _ in w_homs(XC, S, terminal)) == 1 for S in objs)
        rep.fibers.append(FiberResult(key, len(objs), connected, terminal, terminal_ok))
    return rep
