from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from jplus.curvefile import read_curves
from jplus.curves import CurveSystem
from jplus.generators import (construct_pair, disjoint_pair, example1, example2, std_k, std_l,
                              std_p)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load_fixture(name: str) -> CurveSystem:
    return read_curves(FIXTURES / name)[0]


def corpus() -> dict[str, CurveSystem]:
    """Named systems used by the structural property tests."""
    out = {}
    for i in range(6):
        out[f"K{i}"] = CurveSystem(std_k(i))
    for k in (1, 2, 3):
        out[f"P{k}"] = CurveSystem(std_p(k))
    for i in range(5):
        out[f"L{i}"] = CurveSystem(std_l(i))
    out["example1"] = CurveSystem(example1())
    out["example2"] = CurveSystem(example2())
    out["K1|K2"] = disjoint_pair(std_k(1), std_k(2), 2)
    out["L0|L2"] = disjoint_pair(std_l(0), std_l(2), 2)
    for t in ((0, 0, 4), (2, -2, -6), (-6, -4, -16), (4, 2, 12), (0, -2, -8)):
        out[f"pair{t}"] = construct_pair(t)
    for path in sorted(FIXTURES.glob("*.curves")):
        out[path.stem] = read_curves(path)[0]
    return out


@pytest.fixture(scope="session")
def systems():
    return corpus()


small_ints = st.integers(min_value=-20, max_value=20)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=6))
points = st.tuples(rationals, rationals)
