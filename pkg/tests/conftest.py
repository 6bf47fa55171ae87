import numpy as np
import pytest

from qcomplexity import EpsilonMachine, NonUniqueStationary, stationary


def random_machine(rng, max_states=5, max_symbols=4, sparsity=0.4):
    """Random valid machine with a unique stationary distribution."""
    while True:
        n = int(rng.integers(1, max_states + 1))
        a = int(rng.integers(1, max_symbols + 1))
        T = rng.random((n, a, n)) * (rng.random((n, a, n)) > sparsity)
        if np.any(T.sum(axis=(1, 2)) == 0):
            continue
        T /= T.sum(axis=(1, 2), keepdims=True)
        m = EpsilonMachine(T)
        try:
            stationary(m)
        except NonUniqueStationary:
            continue
        return m


def random_machines(count, seed):
    rng = np.random.default_rng(seed)
    return [random_machine(rng) for _ in range(count)]


@pytest.fixture(scope="session")
def machines_1000():
    return random_machines(1000, seed=20240611)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion.

    Usage: ``criterion("AC1 ...", ok, detail)`` then assert ``ok``.
    """
    def record(label, ok, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else ""))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
