import numpy as np
import pytest

from t2stable.fixtures import load_fixture
from t2stable.frobenius import make_context
from t2stable.modules import indecomposable_projective, simple_module, truncated_projective, zero_module
from t2stable.morphisms import MorE


@pytest.fixture(scope="session")
def r2():
    return load_fixture("r2")


@pytest.fixture(scope="session")
def a9():
    return load_fixture("a9")


@pytest.fixture(scope="session")
def b4():
    return load_fixture("b4")


@pytest.fixture(scope="session")
def t6():
    return load_fixture("t6")


@pytest.fixture(scope="session")
def ctx_r2(r2):
    return make_context(r2)


@pytest.fixture(scope="session")
def ctx_a9(a9):
    return make_context(a9)


@pytest.fixture(scope="session")
def ctx_t6(t6):
    return make_context(t6)


@pytest.fixture(scope="session")
def k(r2):
    return simple_module(r2, 0)


@pytest.fixture(scope="session")
def R(r2):
    return indecomposable_projective(r2, 0)


@pytest.fixture(scope="session")
def m1(a9):
    return simple_module(a9, 0)


@pytest.fixture(scope="session")
def m2(a9):
    return truncated_projective(a9, 1, 2)


@pytest.fixture(scope="session")
def ctx_atfr4(a9, m1, m2):
    gens = [indecomposable_projective(a9, v) for v in range(3)] + [m1, m2]
    return make_context(a9, "list", gens)


@pytest.fixture(scope="session")
def mor_r2(ctx_r2, k, R, r2):
    """The three basic objects over R2: (k -> 0), (R2 -> k), (k -> k)."""
    Z = zero_module(r2)
    return {
        "k0": MorE(ctx_r2, k, Z, np.zeros((0, 1), dtype=np.int64), name="k0"),
        "Rk": MorE(ctx_r2, R, k, np.array([[1, 0]]), name="Rk"),
        "kk": MorE(ctx_r2, k, k, np.array([[1]]), name="kk"),
    }


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[n]
        terminalreporter.write_line(f"criterion {n} ({mod.TITLES[n]}): {'PASS' if ok else 'FAIL'} - {detail}")
