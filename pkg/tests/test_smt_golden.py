from pathlib import Path

import pytest

from probteam import Structure
from probteam.syntax import parse
from probteam.translate import export_smtlib, fopt_to_real

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "leq": (Structure(2), "(x=0) <= (x=1)"),
    "ci": (Structure(2), "ci(x=x; x=0; y=0)"),
    "exists": (Structure.build(2, {"P": [1]}), "E1 y. (x=y) <= (P(x))"),
    "cpi_forall": (
        Structure.build(2, {"R": [(0, 1), (1, 1)]}),
        "A1 y. cpi(R(x,y) | y=y, x=0 | x=x)",
    ),
    "weak_or_negation": (Structure(3), "!x=x \\/ ~(x=0) <= (x=2)"),
}


def script(name):
    A, text = CASES[name]
    return export_smtlib(fopt_to_real(A, parse(text)))


@pytest.mark.parametrize("name", sorted(CASES))
def test_byte_identical(name):
    assert script(name).encode() == (GOLDEN / f"{name}.smt2").read_bytes()


@pytest.mark.parametrize("name", sorted(CASES))
def test_external_solver_parses(name):
    z3 = pytest.importorskip("z3")
    assertions = z3.parse_smt2_string(script(name))
    assert len(assertions) == 1


def test_external_solver_verdicts():
    z3 = pytest.importorskip("z3")
    for name, expected in (("leq", z3.sat), ("weak_or_negation", z3.sat), ("exists", z3.sat)):
        solver = z3.Solver()
        solver.add(z3.parse_smt2_string(script(name)))
        assert solver.check() == expected
