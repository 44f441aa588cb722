"""Exact reals as finite Q-linear combinations of declared generators.

A generator is the unit 1, a user-declared length symbol, or a square root
of a squarefree integer.  Generators are assumed Q-linearly independent, so
equality and zero tests are purely symbolic.  Signs are decided from rational
interval enclosures that tighten as the requested precision grows.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping, Sequence

from sympy import factorint

DEFAULT_MAX_BITS = 256
START_BITS = 64

UNIT = "unit"
SYMBOL = "symbol"
RADICAL = "radical"
_KIND_RANK = {UNIT: 0, SYMBOL: 1, RADICAL: 2}


class UndecidableSign(ArithmeticError):
    """Enclosure still straddles zero at the maximum precision."""


class GeneratorTableMismatch(ValueError):
    pass


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a rational string or Fraction")
    return Fraction(value)


@dataclass(frozen=True)
class SymbolWitness:
    """Enclosure data for a length symbol.

    ``digits`` is an optional decimal expansion (e.g. ``"1.41421356"``); each
    digit after the point tightens the enclosure by a factor of ten.
    ``schedule`` is an optional sequence of nested rational intervals.
    """

    lo: Fraction
    hi: Fraction
    digits: str | None = None
    schedule: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"witness needs lo < hi, got [{self.lo}, {self.hi}]")

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        return _witness_enclosure(self, bits)


@lru_cache(maxsize=4096)
def _witness_enclosure(w: SymbolWitness, bits: int) -> tuple[Fraction, Fraction]:
    lo, hi = w.lo, w.hi
    width = Fraction(1, 1 << bits)
    if w.digits:
        for dlo, dhi in _digit_enclosures(w.digits):
            lo, hi = max(lo, dlo), min(hi, dhi)
            if hi - lo <= width:
                break
    for slo, shi in w.schedule:
        if hi - lo <= width:
            break
        lo, hi = max(lo, slo), min(hi, shi)
    if lo > hi:
        raise ValueError("inconsistent witness: digit stream or schedule leaves the declared interval")
    return lo, hi


@lru_cache(maxsize=256)
def _digit_enclosures(digits: str) -> tuple:
    text = digits.strip()
    negative = text.startswith("-")
    text = text.lstrip("+-")
    whole, _, frac = text.partition(".")
    value = Fraction(int(whole or "0"))
    step = Fraction(1)
    seq = [(value, value + step)]
    for ch in frac:
        step /= 10
        value += int(ch) * step
        seq.append((value, value + step))
    if negative:
        seq = [(-b, -a) for a, b in seq]
    return tuple(seq)


@dataclass(frozen=True)
class RealGenerator:
    id: str
    kind: str
    radicand: int = 0
    witness: SymbolWitness | None = field(default=None, compare=False, hash=False, repr=False)

    @property
    def sort_key(self):
        return (_KIND_RANK[self.kind], self.radicand, self.id)

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        if self.kind == UNIT:
            return Fraction(1), Fraction(1)
        if self.kind == RADICAL:
            root = isqrt(self.radicand << (2 * bits))
            scale = 1 << bits
            return Fraction(root, scale), Fraction(root + 1, scale)
        return self.witness.enclosure(bits)

    def __str__(self):
        if self.kind == UNIT:
            return "1"
        if self.kind == RADICAL:
            return f"sqrt({self.radicand})"
        return self.id


ONE = RealGenerator("1", UNIT)


def radical_generator(n: int) -> RealGenerator:
    if n < 2 or squarefree_part(n) != (1, n):
        raise ValueError(f"radical generators are keyed by squarefree n >= 2, got {n}")
    return RealGenerator(f"sqrt({n})", RADICAL, n)


def squarefree_part(n: int) -> tuple[int, int]:
    """Return (s, m) with n = s**2 * m and m squarefree."""
    if n <= 0:
        raise ValueError("squarefree_part needs a positive integer")
    s, m = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    return s, m


class GeneratorTable:
    """Declared length symbols for one scenario.  Unit and radicals are global."""

    def __init__(self, symbols: Iterable[tuple[str, SymbolWitness]] = (), max_bits: int = DEFAULT_MAX_BITS):
        self.max_bits = max_bits
        self._symbols: dict[str, RealGenerator] = {}
        for name, witness in symbols:
            if name in self._symbols or name == "1" or name.startswith("sqrt("):
                raise ValueError(f"duplicate or reserved generator id {name!r}")
            self._symbols[name] = RealGenerator(name, SYMBOL, witness=witness)

    @classmethod
    def from_intervals(cls, intervals: Mapping[str, Sequence], max_bits: int = DEFAULT_MAX_BITS):
        symbols = []
        for name, spec in intervals.items():
            lo, hi = spec[0], spec[1]
            digits = spec[2] if len(spec) > 2 else None
            symbols.append((name, SymbolWitness(as_fraction(lo), as_fraction(hi), digits)))
        return cls(symbols, max_bits=max_bits)

    def __contains__(self, name):
        return name in self._symbols

    def __iter__(self):
        return iter(self._symbols.values())

    def names(self) -> list[str]:
        return list(self._symbols)

    def generator(self, name: str) -> RealGenerator:
        return self._symbols[name]

    def symbol(self, name: str) -> "ExactReal":
        return ExactReal({self._symbols[name]: Fraction(1)}, self)

    def lookup(self, gid: str) -> RealGenerator:
        if gid == "1":
            return ONE
        if gid.startswith("sqrt(") and gid.endswith(")"):
            return radical_generator(int(gid[5:-1]))
        return self._symbols[gid]


def _merge_tables(a: GeneratorTable | None, b: GeneratorTable | None) -> GeneratorTable | None:
    if a is None:
        return b
    if b is None or a is b:
        return a
    raise GeneratorTableMismatch("exact reals come from different generator tables")


class ExactReal:
    """Immutable sparse Q-combination of generators in canonical form."""

    __slots__ = ("_terms", "_hash", "table")

    def __init__(self, coeffs: Mapping[RealGenerator, Fraction] | None = None, table: GeneratorTable | None = None):
        items = []
        uses_symbols = False
        for gen, c in (coeffs or {}).items():
            c = as_fraction(c)
            if c:
                items.append((gen, c))
                uses_symbols |= gen.kind == SYMBOL
        items.sort(key=lambda t: t[0].sort_key)
        self._terms = tuple(items)
        self._hash = None
        self.table = table if uses_symbols else None

    @classmethod
    def rational(cls, q) -> "ExactReal":
        return cls({ONE: as_fraction(q)})

    @classmethod
    def zero(cls) -> "ExactReal":
        return cls()

    @property
    def coeffs(self) -> dict[RealGenerator, Fraction]:
        return dict(self._terms)

    def terms(self):
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_rational(self) -> bool:
        return all(g.kind == UNIT for g, _ in self._terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._terms[0][1] if self._terms else Fraction(0)

    def add_scale(self, q, other: "ExactReal") -> "ExactReal":
        return add_scale(self, q, other)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add_scale(self, 1, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add_scale(self, -1, other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add_scale(other, -1, self)

    def __neg__(self):
        return ExactReal({g: -c for g, c in self._terms}, self.table)

    def __mul__(self, other):
        if isinstance(other, ExactReal):
            if other.is_rational():
                other = other.rational_value()
            elif self.is_rational():
                return other * self.rational_value()
            else:
                raise TypeError("products of irrational generators are not supported")
        if isinstance(other, float):
            return NotImplemented
        try:
            q = as_fraction(other)
        except TypeError:
            return NotImplemented
        return ExactReal({g: c * q for g, c in self._terms}, self.table)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / as_fraction(other))

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        lo = hi = Fraction(0)
        for gen, c in self._terms:
            glo, ghi = gen.enclosure(bits)
            if c > 0:
                lo += c * glo
                hi += c * ghi
            else:
                lo += c * ghi
                hi += c * glo
        return lo, hi

    def approx(self, bits: int = 53) -> float:
        lo, hi = self.enclosure(bits)
        return float((lo + hi) / 2)

    def to_json(self):
        if self.is_rational():
            return str(self.rational_value())
        return {g.id: str(c) for g, c in self._terms}

    def __repr__(self):
        return f"ExactReal({self})"

    def __str__(self):
        return format_linear(self._terms)


def format_linear(terms) -> str:
    if not terms:
        return "0"
    out = []
    for gen, c in terms:
        sign = "−" if c < 0 else "+"
        mag = abs(c)
        if gen.kind == UNIT:
            body = str(mag)
        elif mag == 1:
            body = str(gen)
        elif mag.denominator == 1:
            body = f"{mag}*{gen}"
        else:
            body = f"({mag})*{gen}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("−" if first_sign == "−" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def _coerce(value):
    if isinstance(value, ExactReal):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactReal.rational(value)
    return NotImplemented


def exact(value, table: GeneratorTable | None = None) -> ExactReal:
    """Build an ExactReal from an int/Fraction/rational string or a {generator id: coeff} map."""
    if isinstance(value, ExactReal):
        return value
    if isinstance(value, Mapping):
        coeffs = {}
        for gid, c in value.items():
            gen = table.lookup(gid) if table is not None else _global_lookup(gid)
            coeffs[gen] = coeffs.get(gen, Fraction(0)) + as_fraction(c)
        return ExactReal(coeffs, table)
    if isinstance(value, str) and table is not None and value in table:
        return table.symbol(value)
    return ExactReal.rational(as_fraction(value))


def _global_lookup(gid: str) -> RealGenerator:
    if gid == "1":
        return ONE
    if gid.startswith("sqrt("):
        return radical_generator(int(gid[5:-1]))
    raise KeyError(f"unknown generator {gid!r} (no table given)")


def add_scale(u: ExactReal, q, v: ExactReal) -> ExactReal:
    """Return u + q*v in canonical form."""
    q = as_fraction(q)
    table = _merge_tables(u.table, v.table)
    if not q:
        return u
    coeffs = dict(u._terms)
    for gen, c in v._terms:
        coeffs[gen] = coeffs.get(gen, Fraction(0)) + q * c
    return ExactReal(coeffs, table)


def sign_of(u: ExactReal, max_bits: int | None = None) -> Sign:
    if u.is_zero():
        return Sign.ZERO
    if max_bits is None:
        max_bits = u.table.max_bits if u.table is not None else DEFAULT_MAX_BITS
    bits = min(START_BITS, max_bits)
    while True:
        lo, hi = u.enclosure(bits)
        if lo > 0:
            return Sign.POSITIVE
        if hi < 0:
            return Sign.NEGATIVE
        if bits >= max_bits:
            raise UndecidableSign(f"cannot decide the sign of {u} at {max_bits} bits (enclosure [{float(lo)}, {float(hi)}])")
        bits = min(2 * bits, max_bits)


def compare(a: ExactReal, b: ExactReal, max_bits: int | None = None) -> Sign:
    return sign_of(a - b, max_bits)


def sqrt_canonical(q) -> ExactReal:
    q = as_fraction(q)
    if q <= 0:
        raise ValueError(f"sqrt_canonical needs a positive rational, got {q}")
    # sqrt(a/b) = sqrt(a*b) / b
    s, m = squarefree_part(q.numerator * q.denominator)
    coeff = Fraction(s, q.denominator)
    if m == 1:
        return ExactReal.rational(coeff)
    return ExactReal({radical_generator(m): coeff})


class TensorElement:
    """Element of R (x)_Q R in the basis of generator pairs."""

    __slots__ = ("_terms", "table")

    def __init__(self, coeffs: Mapping[tuple[RealGenerator, RealGenerator], Fraction] | None = None, table=None):
        items = [(k, as_fraction(c)) for k, c in (coeffs or {}).items() if c]
        items.sort(key=lambda t: (t[0][0].sort_key, t[0][1].sort_key))
        self._terms = tuple(items)
        self.table = table if items else None

    @property
    def coeffs(self):
        return dict(self._terms)

    def terms(self):
        return self._terms

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other: "TensorElement"):
        if not isinstance(other, TensorElement):
            return NotImplemented
        table = _merge_tables(self.table, other.table)
        coeffs = dict(self._terms)
        for k, c in other._terms:
            coeffs[k] = coeffs.get(k, Fraction(0)) + c
        return TensorElement(coeffs, table)

    def __neg__(self):
        return TensorElement({k: -c for k, c in self._terms}, self.table)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, q):
        q = as_fraction(q)
        return TensorElement({k: c * q for k, c in self._terms}, self.table)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return isinstance(other, TensorElement) and self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def to_json(self):
        return [{"left": a.id, "right": b.id, "coeff": str(c)} for (a, b), c in self._terms]

    def __repr__(self):
        return f"TensorElement({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        # positive coefficients first, then by basis order
        ordered = sorted(self._terms, key=lambda t: (t[1] < 0, t[0][0].sort_key, t[0][1].sort_key))
        parts = []
        for (a, b), c in ordered:
            mag = abs(c)
            body = f"{a}⊗{b}" if mag == 1 else f"{mag}*{a}⊗{b}"
            parts.append(("-" if c < 0 else "+", body))
        text = ("−" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {'−' if sign == '-' else '+'} {body}"
        return text


def tensor(u: ExactReal, v: ExactReal) -> TensorElement:
    coeffs: dict = {}
    for a, ca in u.terms():
        for b, cb in v.terms():
            coeffs[(a, b)] = coeffs.get((a, b), Fraction(0)) + ca * cb
    table = _merge_tables(u.table, v.table)
    return TensorElement(coeffs, table)
