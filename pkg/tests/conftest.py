import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from wassfs.data import EmpiricalMeasure1D, LabeledDataset

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# criterion lines collected by test_acceptance.py, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def measures(draw, max_atoms=8, uniform=False):
    """Weighted 1-D measure with rational weights on a coarse value grid."""
    n = draw(st.integers(1, max_atoms))
    vals = draw(st.lists(st.integers(-40, 40), min_size=n, max_size=n))
    values = np.array(vals, dtype=float) / 4.0
    if uniform:
        return EmpiricalMeasure1D.from_samples(values)
    w = np.array(draw(st.lists(st.integers(1, 9), min_size=n, max_size=n)), dtype=float)
    return EmpiricalMeasure1D.from_samples(values, w, normalize=True)


def random_measure(rng, n=None, weighted=True, low=-10.0, high=10.0):
    n = int(rng.integers(1, 9)) if n is None else n
    values = rng.uniform(low, high, n)
    if not weighted:
        return EmpiricalMeasure1D.from_samples(values)
    w = rng.integers(1, 10, n).astype(float)
    return EmpiricalMeasure1D.from_samples(values, w, normalize=True)


@pytest.fixture
def tiny_dataset():
    # class 0 = rows {0, 2}, class 1 = rows {1, 3}
    values = np.array([[1.0, 10.0], [2.0, 20.0], [3.0, 30.0], [4.0, 40.0]])
    return LabeledDataset(values, np.array([0, 1, 0, 1]), ("0", "1"))
