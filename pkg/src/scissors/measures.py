"""Measures: cover-additive, group-equivariant assignments of values to polytopes or objects."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .covercat import FinCatFam, K0Presentation, ModVector, k0
from .exactnum import ExactReal
from .geometry import (
    E1,
    E2,
    SE2,
    T1,
    T2,
    CoverCertificate,
    GeometryMismatch,
    Polytope,
    canonical_direction,
    measure_of,
    signed_edges,
)


class InconsistentMeasure(ValueError):
    """The assignment violates a stored covering relation, so it is not a measure."""


@dataclass(frozen=True)
class Measure:
    name: str
    domain: str  # E1, E2 or a category name
    groups: frozenset  # groups under which the measure is equivariant
    evaluate: Callable = field(compare=False, repr=False)
    action: Callable | None = field(default=None, compare=False, repr=False)

    def __call__(self, obj):
        return self.evaluate(obj)

    def act(self, g, value):
        return value if self.action is None else self.action(g, value)

    def equivariant_for(self, group: str) -> bool:
        return group in self.groups


def _polytope_measure(name: str, geometry: str, groups, fn) -> Measure:
    def evaluate(P: Polytope):
        if not isinstance(P, Polytope) or P.geometry != geometry:
            raise GeometryMismatch(f"{name} is defined on {geometry} polytopes")
        return fn(P)

    return Measure(name, geometry, frozenset(groups), evaluate)


def length_measure() -> Measure:
    return _polytope_measure("length", E1, {T1}, measure_of)


def area_measure() -> Measure:
    return _polytope_measure("area", E2, {T2, SE2}, measure_of)


def hadwiger(P: Polytope, direction) -> ExactReal:
    """Signed sum of lengths of the edges parallel to ``direction``."""
    d = canonical_direction(direction)
    total = ExactReal.zero()
    for e in signed_edges(P):
        if e.direction == d:
            total = total + e.length * e.sign
    return total


def hadwiger_measure(direction) -> Measure:
    d = canonical_direction(direction)
    # translation invariant only: a rotation changes which edges are parallel to d
    return _polytope_measure(f"hadwiger:{d[0]},{d[1]}", E2, {T2}, lambda P: hadwiger(P, d))


def cell_count_measure(geometry: str) -> Measure:
    """Negative control: invariant under everything, additive under nothing that splits cells."""
    return _polytope_measure("cells", geometry, {T1, T2, SE2}, lambda P: ExactReal.rational(len(P.cells)))


def object_measure(name: str, values: dict, groups=(), action=None) -> Measure:
    """A measure on a finite category, given by its values on objects."""
    return Measure(name, "finite", frozenset(groups), values.__getitem__, action)


def universal_measure(C: FinCatFam, K: K0Presentation | None = None) -> Measure:
    K = K or k0(C)
    return Measure("universal", C.name, frozenset(), K.class_of)


def measure_by_name(name: str, geometry: str | None = None) -> Measure:
    if name == "length":
        return length_measure()
    if name == "area":
        return area_measure()
    if name.startswith("hadwiger:"):
        try:
            a, b = (int(t) for t in name.split(":", 1)[1].split(","))
        except ValueError:
            raise ValueError(f"bad hadwiger direction in {name!r}") from None
        return hadwiger_measure((a, b))
    if name == "cells":
        return cell_count_measure(geometry or E2)
    raise ValueError(f"unknown measure {name!r}")


@dataclass(frozen=True)
class MeasureReport:
    measure: str
    target_value: object
    pieces_value: object

    @property
    def defect(self):
        return self.target_value - self.pieces_value

    @property
    def ok(self) -> bool:
        return self.target_value == self.pieces_value

    def __str__(self):
        if self.ok:
            return f"{self.measure}: additive ({self.target_value} = {self.pieces_value})"
        return f"{self.measure}: NOT additive, target {self.target_value} vs pieces {self.pieces_value}, defect {self.defect}"


def verify_measure(mu: Measure, cover: CoverCertificate) -> MeasureReport:
    """Compare mu(target) with the sum of g_i · mu(P_i) over the pieces."""
    total = None
    for g, P in cover.pieces:
        v = mu.act(g, mu(P))
        total = v if total is None else total + v
    if total is None:
        total = mu(cover.target) * 0
    return MeasureReport(mu.name, mu(cover.target), total)


@dataclass
class FactorizationReport:
    presentation: K0Presentation
    images: tuple  # value assigned to each coordinate of K0
    checked: dict

    @property
    def ok(self) -> bool:
        return all(a == b for a, b in self.checked.values())

    def __str__(self):
        lines = [f"K0 = {self.presentation.group_name}"]
        for i, v in enumerate(self.images):
            lines.append(f"  coordinate {i} ↦ {v}")
        for obj, (want, got) in self.checked.items():
            lines.append(f"  [{obj}] = {self.presentation.class_of(obj)}: μ = {want}, through K0 = {got}")
        return "\n".join(lines)


def _inverse_unimodular(V: list[list[int]]) -> list[list[int]]:
    n = len(V)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(V)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [x / p for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                q = A[r][col]
                A[r] = [x - q * y for x, y in zip(A[r], A[col])]
    out = [[row[n + j] for j in range(n)] for row in A]
    if any(x.denominator != 1 for row in out for x in row):
        raise ArithmeticError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


def universal_measure_check(C: FinCatFam, values: dict, K: K0Presentation | None = None) -> FactorizationReport:
    """Factor an object-valued measure through the class map into K0."""
    K = K or k0(C)
    for t, fam in C.families:
        if t == C.basepoint:
            continue
        pieces = [values[C.source(f)] for f in fam if C.source(f) != C.basepoint]
        total = sum(pieces[1:], pieces[0]) if pieces else values[t] * 0
        if total != values[t]:
            raise InconsistentMeasure(f"μ({t}) = {values[t]} but the cover {list(fam)} sums to {total}")
    gens = list(K.generators)
    Vinv = _inverse_unimodular(K.smith.V)
    zero = values[gens[0]] * 0
    phi = []
    for i, d in K._kept():
        # value of the i-th SNF coordinate: row i of V^-1 applied to the generator values
        acc = zero
        for k, g in enumerate(gens):
            acc = acc + values[g] * Vinv[i][k]
        phi.append(acc)
    checked = {}
    for g in gens:
        cls = K.class_of(g)
        got = zero
        for c, v in zip(cls.coords, phi):
            got = got + v * c
        checked[g] = (values[g], got)
    return FactorizationReport(K, tuple(phi), checked)
