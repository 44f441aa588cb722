"""Regenerate the scenario and category files under src/scissors/data."""
import json
from fractions import Fraction
from pathlib import Path

from scissors.construct import construct_se2, interval_exchange
from scissors.covercat import FiniteAbelianGroup, build_ea, toy_category
from scissors.exactnum import GeneratorTable, SymbolWitness
from scissors.geometry import T2, Isometry, Polytope
from scissors.randgen import E_DIGITS, PI_DIGITS
from scissors.scenario import Scenario
from scissors.trace import ScissorsAutomorphism, trivial_automorphism

OUT = Path(__file__).resolve().parent.parent / "src" / "scissors" / "data"


def write(name, payload):
    (OUT / name).write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")


def main():
    OUT.mkdir(exist_ok=True)
    symbols = [
        {"name": "x", "witness": ["2", "3"], "digits": E_DIGITS},
        {"name": "y", "witness": ["3", "4"], "digits": PI_DIGITS},
    ]
    table = GeneratorTable([(s["name"], SymbolWitness(Fraction(s["witness"][0]), Fraction(s["witness"][1]), s["digits"])) for s in symbols])
    s = interval_exchange(table.symbol("x"), table.symbol("y"))
    write("interval_exchange.json", Scenario.from_automorphism(s, "length", "interval exchange", table, symbols).to_json())

    s = construct_se2((Fraction(4, 5), Fraction(3, 5)), 1)
    write("rotated_square.json", Scenario.from_automorphism(s, "area", "rotated square (4/5, 3/5)").to_json())

    s = trivial_automorphism(Polytope.rectangle(0, 0, 1, 1), T2)
    write("trivial.json", Scenario.from_automorphism(s, "area", "trivial automorphism").to_json())

    # two unit squares stacked on the same spot: the second placement overlaps the first
    sc = Scenario.from_automorphism(s, "area", "overlapping pieces")
    sc.pieces = [Polytope.rectangle(0, 0, 1, 1), Polytope.rectangle(0, 1, 1, 2)]
    sc.target = Polytope.rectangle(0, 0, 1, 2)
    ident = Isometry.identity(T2)
    sc.base = [ident, ident]
    sc.move = [ident, Isometry.t2(0, -1)]
    write("overlap.json", sc.to_json())

    write("ea_z2.json", build_ea(FiniteAbelianGroup((2,)), 3).to_json())
    write("toy.json", toy_category().to_json())
    write("toy_measure.json", {"category": toy_category().to_json(), "values": {"a": "6", "b": "3"}})
    write("toy_inconsistent.json", {"category": toy_category().to_json(), "values": {"a": "5", "b": "3"}})


if __name__ == "__main__":
    main()
