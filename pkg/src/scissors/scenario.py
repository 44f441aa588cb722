"""Scenario files: versioned JSON with exact rationals written as "p/q" strings."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .covercat import FinCatFam
from .exactnum import (
    DEFAULT_MAX_BITS,
    ExactReal,
    GeneratorTable,
    SymbolWitness,
    UndecidableSign,
    exact,
)
from .geometry import (
    E1,
    E2,
    GROUP_GEOMETRY,
    SE2,
    T1,
    ConvexCell2D,
    Interval1D,
    Isometry,
    Polytope,
    RationalRotation,
)
from .trace import ScissorsAutomorphism

VERSION = 1


class ScenarioError(ValueError):
    """The file is not a well-formed scenario."""


def _frac(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise ScenarioError(f"expected an exact rational (int or \"p/q\" string), got {v!r}")
    try:
        return Fraction(v)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ScenarioError(f"not a rational: {v!r}") from None


def _real(v, table: GeneratorTable) -> ExactReal:
    if isinstance(v, (bool, float)):
        raise ScenarioError(f"expected an exact real, got {v!r}")
    try:
        if isinstance(v, dict):
            return exact({k: _frac(c) for k, c in v.items()}, table)
        return exact(v, table)
    except KeyError as exc:
        raise ScenarioError(f"undeclared generator {exc}") from None
    except (TypeError, ValueError, ZeroDivisionError):
        raise ScenarioError(f"not an exact real: {v!r}") from None


def _polytope(data, geometry: str, table: GeneratorTable) -> Polytope:
    if not isinstance(data, dict) or not isinstance(data.get("cells"), list):
        raise ScenarioError("a polytope is an object with a \"cells\" list")
    cells = []
    try:
        for c in data["cells"]:
            if geometry == E1:
                lo, hi = c
                cells.append(Interval1D(_real(lo, table), _real(hi, table)))
            else:
                cells.append(ConvexCell2D(tuple((_frac(x), _frac(y)) for x, y in c)))
        return Polytope(geometry, tuple(cells))
    except UndecidableSign:
        raise
    except ScenarioError:
        raise
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"bad polytope: {exc}") from None


def polytope_to_json(P: Polytope):
    if P.geometry == E1:
        return {"cells": [[c.lo.to_json(), c.hi.to_json()] for c in P.cells]}
    return {"cells": [[[str(x), str(y)] for x, y in c.vertices] for c in P.cells]}


def _isometry(data, group: str, table: GeneratorTable) -> Isometry:
    if not isinstance(data, dict):
        raise ScenarioError(f"an isometry is an object, got {data!r}")
    try:
        if group == T1:
            if set(data) != {"t"}:
                raise ScenarioError("T1 isometries look like {\"t\": ...}")
            return Isometry.t1(_real(data["t"], table))
        if "t" in data or "v" not in data:
            raise ScenarioError(f"{group} isometries need a \"v\" translation")
        vx, vy = (_frac(a) for a in data["v"])
        if "rot" in data:
            if group != SE2:
                raise ScenarioError("only SE2 isometries may rotate")
            c, s = (_frac(a) for a in data["rot"])
            return Isometry(group, (vx, vy), RationalRotation(c, s))
        return Isometry(group, (vx, vy))
    except ScenarioError:
        raise
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"bad isometry {data!r}: {exc}") from None


@dataclass
class Scenario:
    geometry: str
    group: str
    table: GeneratorTable
    symbols: list
    measure: str
    target: Polytope
    pieces: list
    base: list
    move: list
    category: FinCatFam | None = None
    name: str = ""

    @classmethod
    def from_json(cls, data, max_bits: int = DEFAULT_MAX_BITS) -> "Scenario":
        if not isinstance(data, dict):
            raise ScenarioError("a scenario is a JSON object")
        if data.get("version") != VERSION:
            raise ScenarioError(f"unsupported scenario version {data.get('version')!r}")
        geometry, group = data.get("geometry"), data.get("group")
        if geometry not in (E1, E2) or GROUP_GEOMETRY.get(group) != geometry:
            raise ScenarioError(f"group {group!r} does not act on geometry {geometry!r}")
        symbols = data.get("symbols", [])
        decl = []
        try:
            for s in symbols:
                lo, hi = (_frac(v) for v in s["witness"])
                decl.append((s["name"], SymbolWitness(lo, hi, s.get("digits"))))
            table = GeneratorTable(decl, max_bits=max_bits)
        except ScenarioError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"bad symbol declaration: {exc}") from None
        if geometry == E2 and symbols:
            raise ScenarioError("E2 coordinates are rational; symbols are only allowed in E1")
        try:
            pieces_data = data["pieces"]
            base_data = data["placements"]["base"]
            move_data = data["placements"]["move"]
            target_data = data["target"]
        except (KeyError, TypeError) as exc:
            raise ScenarioError(f"missing field {exc}") from None
        if not (len(pieces_data) == len(base_data) == len(move_data)):
            raise ScenarioError("pieces, base and move placements must have equal length")
        category = None
        if data.get("category") is not None:
            try:
                category = FinCatFam.from_json(data["category"])
            except ValueError as exc:
                raise ScenarioError(str(exc)) from None
        return cls(
            geometry=geometry,
            group=group,
            table=table,
            symbols=[dict(s) for s in symbols],
            measure=data.get("measure", "length" if geometry == E1 else "area"),
            target=_polytope(target_data, geometry, table),
            pieces=[_polytope(p, geometry, table) for p in pieces_data],
            base=[_isometry(g, group, table) for g in base_data],
            move=[_isometry(g, group, table) for g in move_data],
            category=category,
            name=data.get("name", ""),
        )

    @classmethod
    def loads(cls, text: str, max_bits: int = DEFAULT_MAX_BITS) -> "Scenario":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"malformed JSON: {exc}") from None
        return cls.from_json(data, max_bits)

    @classmethod
    def load(cls, path, max_bits: int = DEFAULT_MAX_BITS) -> "Scenario":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ScenarioError(f"cannot read {path}: {exc}") from None
        return cls.loads(text, max_bits)

    def to_json(self) -> dict:
        out = {
            "version": VERSION,
            "name": self.name,
            "geometry": self.geometry,
            "group": self.group,
            "symbols": self.symbols,
            "measure": self.measure,
            "target": polytope_to_json(self.target),
            "pieces": [polytope_to_json(p) for p in self.pieces],
            "placements": {"base": [g.to_json() for g in self.base], "move": [g.to_json() for g in self.move]},
        }
        if self.category is not None:
            out["category"] = self.category.to_json()
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    def automorphism(self) -> ScissorsAutomorphism:
        return ScissorsAutomorphism(self.target, self.pieces, self.base, self.move, self.group)

    @classmethod
    def from_automorphism(cls, s: ScissorsAutomorphism, measure: str, name: str = "", table: GeneratorTable | None = None, symbols=()) -> "Scenario":
        return cls(
            geometry=s.target.geometry,
            group=s.group,
            table=table or GeneratorTable(),
            symbols=list(symbols),
            measure=measure,
            target=s.target,
            pieces=list(s.pieces),
            base=list(s.base),
            move=list(s.move),
            name=name,
        )
