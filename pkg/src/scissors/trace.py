"""The trace from the nerve of the category of covers to the bar complex.

A p-simplex X_0 <- X_1 <- ... <- X_p goes to the sum over the finest pieces
i of [g_{1|i} | ... | g_{p|i}] ⊗ μ(P_{p|i}), where g_{k|i} is the group part
of the component of m_k that the piece passes through.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .covercat import PolCategory, WMorphism, check_w, compose_w
from .exactnum import ExactReal, TensorElement, tensor
from .gaussian import add_classes, angle_class
from .geometry import (
    SE2,
    T1,
    T2,
    CoverCertificate,
    Isometry,
    Polytope,
    apply_isometry,
    intersect_cells,
    verify_cover,
)
from .measures import Measure


class NonEquivariantMeasure(ValueError):
    pass


class InvalidSimplex(ValueError):
    pass


# ---------------------------------------------------------------- simplices


@dataclass(frozen=True)
class NerveSimplex:
    """X_0 <- X_1 <- ... <- X_p; ``morphisms[k-1]`` is m_k: X_k -> X_{k-1}."""

    cat: object
    objects: tuple
    morphisms: tuple

    @classmethod
    def point(cls, cat, X0: Sequence) -> "NerveSimplex":
        return cls(cat, (tuple(X0),), ())

    @classmethod
    def chain(cls, cat, morphisms: Sequence[WMorphism]) -> "NerveSimplex":
        """Build from m_1, ..., m_p (m_1 lands in X_0)."""
        morphisms = tuple(morphisms)
        if not morphisms:
            raise InvalidSimplex("use NerveSimplex.point for 0-simplices")
        objects = [morphisms[0].target] + [m.source for m in morphisms]
        for k in range(1, len(morphisms)):
            if morphisms[k].target != morphisms[k - 1].source:
                raise InvalidSimplex(f"m_{k + 1} does not land in the source of m_{k}")
        return cls(cat, tuple(objects), morphisms)

    @property
    def degree(self) -> int:
        return len(self.morphisms)

    def problems(self) -> list[str]:
        out = []
        for k, m in enumerate(self.morphisms, start=1):
            if m.target != self.objects[k - 1] or m.source != self.objects[k]:
                out.append(f"m_{k} has the wrong endpoints")
            out += [f"m_{k}: {p}" for p in check_w(self.cat, m)]
        return out


def nerve_face(s: NerveSimplex, k: int) -> NerveSimplex:
    p = s.degree
    if p == 0:
        raise InvalidSimplex("a 0-simplex has no faces")
    if not 0 <= k <= p:
        raise InvalidSimplex(f"face index {k} out of range 0..{p}")
    ms = list(s.morphisms)
    if k == 0:
        objs, ms = s.objects[1:], ms[1:]
    elif k == p:
        objs, ms = s.objects[:-1], ms[:-1]
    else:
        merged = compose_w(s.cat, ms[k - 1], ms[k])
        objs = s.objects[:k] + s.objects[k + 1:]
        ms = ms[: k - 1] + [merged] + ms[k + 1:]
    return NerveSimplex(s.cat, tuple(objs), tuple(ms))


# ---------------------------------------------------------------- bar chains


def _is_zero(v) -> bool:
    return v.is_zero() if hasattr(v, "is_zero") else not v


class BarChain:
    """Sparse sum of [g_1|...|g_p] ⊗ a, stored as word -> A-value."""

    def __init__(self, degree: int, group, terms=None, action=None):
        self.degree = degree
        self.group = group
        self.action = action
        self.terms: dict[tuple, object] = {}
        for w, v in (terms or {}).items() if isinstance(terms, dict) else (terms or ()):
            self.add(w, v)

    def _like(self) -> "BarChain":
        return BarChain(self.degree, self.group, action=self.action)

    def add(self, word, value):
        word = tuple(word)
        if len(word) != self.degree:
            raise ValueError(f"word of length {len(word)} in a degree {self.degree} chain")
        cur = self.terms.get(word)
        new = value if cur is None else cur + value
        if _is_zero(new):
            self.terms.pop(word, None)
        else:
            self.terms[word] = new

    def act(self, g, value):
        return value if self.action is None else self.action(g, value)

    def __add__(self, other: "BarChain") -> "BarChain":
        if other.degree != self.degree:
            raise ValueError("chains of different degrees")
        out = self._like()
        for w, v in self.terms.items():
            out.add(w, v)
        for w, v in other.terms.items():
            out.add(w, v)
        return out

    def __neg__(self) -> "BarChain":
        out = self._like()
        for w, v in self.terms.items():
            out.add(w, -v)
        return out

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, BarChain) and self.degree == other.degree and self.terms == other.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: [self.group.key(g) for g in t[0]])

    def to_json(self) -> list[dict]:
        out = []
        for w, v in self.sorted_terms():
            word = [self.group.to_json(g) for g in w]
            if isinstance(v, ExactReal):
                for gen, c in v.terms():
                    out.append({"word": word, "coeff": str(c), "value": gen.id})
            else:
                out.append({"word": word, "coeff": "1", "value": v.to_json() if hasattr(v, "to_json") else str(v)})
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, v in self.terms.items():
            word = "[" + "|".join(str(g) for g in w) + "]"
            if isinstance(v, ExactReal):
                for gen, c in v.terms():
                    mag = abs(c)
                    coef = "" if mag == 1 else f"{mag}·"
                    parts.append((c < 0, f"{coef}{word}⊗{gen}"))
            else:
                parts.append((False, f"{word}⊗{v}"))
        text = ("−" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            text += f" {'−' if neg else '+'} {body}"
        return text


def bar_face(c: BarChain, k: int) -> BarChain:
    p = c.degree
    if p == 0:
        raise ValueError("degree 0 chains have no faces")
    if not 0 <= k <= p:
        raise ValueError(f"face index {k} out of range 0..{p}")
    out = BarChain(p - 1, c.group, action=c.action)
    for w, v in c.terms.items():
        if k == 0:
            out.add(w[1:], v)
        elif k == p:
            out.add(w[:-1], c.act(w[-1], v))
        else:
            out.add(w[: k - 1] + (c.group.mul(w[k - 1], w[k]),) + w[k + 1:], v)
    return out


def bar_boundary(c: BarChain) -> BarChain:
    if c.degree == 0:
        raise ValueError("degree 0 chains have no boundary")
    out = BarChain(c.degree - 1, c.group, action=c.action)
    for k in range(c.degree + 1):
        face = bar_face(c, k)
        out = out + (face if k % 2 == 0 else -face)
    return out


# ---------------------------------------------------------------- the trace


def _group_of(cat):
    return cat.group


def trace_simplex(s: NerveSimplex, mu: Measure) -> BarChain:
    group = _group_of(s.cat)
    if not mu.equivariant_for(group.name):
        raise NonEquivariantMeasure(f"measure {mu.name} is not {group.name}-equivariant")
    out = BarChain(s.degree, group, action=mu.act)
    finest = s.objects[-1]
    for i, piece in enumerate(finest):
        word = []
        idx = i
        for m in reversed(s.morphisms):
            word.append(s.cat.group_part(m.components[idx]))
            idx = m.index_map[idx]
        out.add(reversed(word), mu(piece))
    return out


@dataclass
class SimplicialReport:
    faces: list[tuple[int, bool]]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.faces)

    @property
    def failing(self) -> list[int]:
        return [k for k, ok in self.faces if not ok]


def check_simplicial(s: NerveSimplex, mu: Measure) -> SimplicialReport:
    if s.degree == 0:
        return SimplicialReport([])
    chain = trace_simplex(s, mu)
    faces = []
    for k in range(s.degree + 1):
        faces.append((k, trace_simplex(nerve_face(s, k), mu) == bar_face(chain, k)))
    return SimplicialReport(faces)


# ---------------------------------------------------------------- H1


@dataclass(frozen=True)
class H1Class:
    group: str
    value: object

    def is_zero(self) -> bool:
        if self.group == T2:
            return all(v.is_zero() for v in self.value)
        if self.group == SE2:
            return not self.value
        return self.value.is_zero()

    def __add__(self, other: "H1Class") -> "H1Class":
        if other.group != self.group:
            raise ValueError("classes of different groups")
        if self.group == T1:
            return H1Class(T1, self.value + other.value)
        if self.group == T2:
            return H1Class(T2, (self.value[0] + other.value[0], self.value[1] + other.value[1]))
        return H1Class(SE2, _add_prime_maps(self.value, other.value))

    def __neg__(self):
        if self.group == T1:
            return H1Class(T1, -self.value)
        if self.group == T2:
            return H1Class(T2, (-self.value[0], -self.value[1]))
        return H1Class(SE2, tuple((p, -v) for p, v in self.value))

    def __eq__(self, other):
        return isinstance(other, H1Class) and self.group == other.group and self.value == other.value

    def __hash__(self):
        return hash((self.group, self.value))

    def to_json(self):
        if self.group == T1:
            return {"group": T1, "tensor": self.value.to_json()}
        if self.group == T2:
            return {"group": T2, "e1": self.value[0].to_json(), "e2": self.value[1].to_json()}
        return {"group": SE2, "primes": {str(p): v.to_json() for p, v in self.value}}

    def __str__(self):
        if self.is_zero():
            return "0"
        if self.group == T1:
            return str(self.value)
        if self.group == T2:
            return f"({self.value[0]}, {self.value[1]})"
        if not self.value:
            return "0"
        by_gen: dict = {}
        for p, v in self.value:
            for gen, c in v.terms():
                by_gen.setdefault(gen, []).append((p, c))
        parts = []
        for gen in sorted(by_gen, key=lambda g: g.sort_key):
            inner = ", ".join(f"p={p}: {_signed(c)}" for p, c in by_gen[gen])
            parts.append(f"{{{inner}}}⊗{gen}")
        return " + ".join(parts)


def _signed(c: Fraction) -> str:
    return f"−{-c}" if c < 0 else str(c)


def _add_prime_maps(a, b) -> tuple:
    out = dict(a)
    for p, v in b:
        out[p] = out[p] + v if p in out else v
        if out[p].is_zero():
            del out[p]
    return tuple(sorted(out.items()))


def h1_zero(group: str) -> H1Class:
    if group == T1:
        return H1Class(T1, TensorElement())
    if group == T2:
        return H1Class(T2, (ExactReal.zero(), ExactReal.zero()))
    if group == SE2:
        return H1Class(SE2, ())
    raise ValueError(f"no H1 reduction for group {group!r}")


def abelianize(g: Isometry, a: ExactReal) -> H1Class:
    """The class of [g] ⊗ a under H1(G; A) = G^ab ⊗ A."""
    if g.group == T1:
        return H1Class(T1, tensor(g.shift, a))
    if g.group == T2:
        return H1Class(T2, (a * g.shift[0], a * g.shift[1]))
    return H1Class(SE2, tuple((p, a * e) for p, e in angle_class(g.rot).items()))


def reduce_h1(c: BarChain) -> H1Class:
    if c.degree != 1:
        raise ValueError("reduce_h1 takes degree 1 chains")
    name = c.group.name
    total = h1_zero(name)
    for (g,), a in c.terms.items():
        total = total + abelianize(g, a)
    return total


def angle_times(rot, q) -> H1Class:
    """angleClass(rot) ⊗ q as an SE2 class."""
    q = q if isinstance(q, ExactReal) else ExactReal.rational(q)
    return H1Class(SE2, tuple((p, q * e) for p, e in angle_class(rot).items() if not (q * e).is_zero()))


# ---------------------------------------------------------------- scissors automorphisms


class ScissorsAutomorphism:
    """Pieces P_i placed into the target twice: by ``base`` and by ``move``."""

    def __init__(self, target: Polytope, pieces: Sequence[Polytope], base: Sequence[Isometry], move: Sequence[Isometry], group: str):
        self.target = target
        self.pieces = tuple(pieces)
        self.base = tuple(base)
        self.move = tuple(move)
        self.group = group
        if not (len(self.pieces) == len(self.base) == len(self.move)):
            raise ValueError("one base and one move isometry per piece")
        for g in self.base + self.move:
            if g.group != group:
                raise ValueError(f"placement isometry {g} is not in {group}")
        self.base_cover: CoverCertificate = verify_cover(list(zip(self.base, self.pieces)), target)
        self.move_cover: CoverCertificate = verify_cover(list(zip(self.move, self.pieces)), target)

    @property
    def category(self) -> PolCategory:
        return PolCategory(self.group)

    def _simplex(self, placement) -> NerveSimplex:
        m = WMorphism(self.pieces, (self.target,), (0,) * len(self.pieces), placement)
        return NerveSimplex.chain(self.category, [m])

    def base_simplex(self) -> NerveSimplex:
        return self._simplex(self.base)

    def move_simplex(self) -> NerveSimplex:
        return self._simplex(self.move)

    def inverse(self) -> "ScissorsAutomorphism":
        return ScissorsAutomorphism(self.target, self.pieces, self.move, self.base, self.group)


@dataclass
class AutomorphismTrace:
    move_chain: BarChain
    base_chain: BarChain
    chain: BarChain
    cls: H1Class

    def chain_text(self) -> str:
        return f"({self.move_chain}) − ({self.base_chain})"


def trace_automorphism(s: ScissorsAutomorphism, mu: Measure) -> AutomorphismTrace:
    move = trace_simplex(s.move_simplex(), mu)
    base = trace_simplex(s.base_simplex(), mu)
    chain = move - base
    return AutomorphismTrace(move, base, chain, reduce_h1(chain))


def trace_k0(P: Polytope, mu: Measure, group: str | None = None):
    """The degree 0 trace of the 0-simplex {P}, an element of H0(G; A) = A."""
    if group is None:
        group = T1 if P.geometry == "E1" else T2
    chain = trace_simplex(NerveSimplex.point(PolCategory(group), (P,)), mu)
    return chain.terms.get((), mu(P) * 0)


def compose_automorphisms(s: ScissorsAutomorphism, t: ScissorsAutomorphism) -> ScissorsAutomorphism:
    """Apply s, then t.  Pieces are the overlaps of s's moved pieces with t's base pieces."""
    if s.target != t.target or s.group != t.group:
        raise ValueError("automorphisms must share target and group")
    pieces, base, move = [], [], []
    t_cells = [(k, c) for k, (g, P) in enumerate(zip(t.base, t.pieces)) for c in apply_isometry(g, P).cells]
    for i, (P, b, m) in enumerate(zip(s.pieces, s.base, s.move)):
        m_inv = m.inverse()
        groups: dict[int, list] = {}
        for cell in apply_isometry(m, P).cells:
            for k, tc in t_cells:
                common = intersect_cells(cell, tc)
                if common is not None:
                    groups.setdefault(k, []).append(m_inv.apply_cell(common))
        for k in sorted(groups):
            pieces.append(Polytope(P.geometry, tuple(groups[k])))
            base.append(b)
            move.append(t.move[k].compose(t.base[k].inverse()).compose(m))
    return ScissorsAutomorphism(s.target, pieces, base, move, s.group)


def trivial_automorphism(target: Polytope, group: str) -> ScissorsAutomorphism:
    ident = Isometry.identity(group)
    return ScissorsAutomorphism(target, (target,), (ident,), (ident,), group)


def refine_automorphism(s: ScissorsAutomorphism, splits: Sequence[Sequence[Polytope]]) -> ScissorsAutomorphism:
    """Replace piece i by the polytopes splits[i] (which must tile it), keeping its placements."""
    pieces, base, move = [], [], []
    for P, b, m, parts in zip(s.pieces, s.base, s.move, splits):
        for Q in parts:
            pieces.append(Q)
            base.append(b)
            move.append(m)
    return ScissorsAutomorphism(s.target, pieces, base, move, s.group)
