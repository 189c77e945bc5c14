import pytest

from gmorse.potential import make_preset


@pytest.fixture
def bench():
    """Hermitian benchmark: m=1/2, hbar=1, alpha=1, v1=1, v2=2 (one bound level)."""
    return make_preset("hermitian", v1=1, v2=2, alpha=1, mass=0.5, hbar=1)


@pytest.fixture
def two_level():
    """Hermitian case with lam = 5/2 (two bound levels)."""
    return make_preset("hermitian", v1=1, v2=5, alpha=1, mass=0.5, hbar=1)


@pytest.fixture
def pt_case():
    return make_preset("pt_imaginary_alpha", v1=1, v2=2, a=1, mass=0.5, hbar=1)


@pytest.fixture
def non_pt():
    return make_preset("non_pt_complex", A=2, B=1, C=2, alpha=1, mass=0.5, hbar=1)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in RESULTS.items():
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
