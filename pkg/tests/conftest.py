import math

import numpy as np
import pytest
from hypothesis import strategies as st

from cavkick.subspace import SubspaceState

angles = st.floats(0, 2 * math.pi, allow_nan=False)
polar = st.floats(0, math.pi, allow_nan=False)
azimuth = st.floats(0, 2 * math.pi, exclude_max=True, allow_nan=False)
times = st.floats(-20, 20, allow_nan=False)


@st.composite
def states(draw):
    parts = [draw(st.floats(-1, 1, allow_nan=False)) for _ in range(4)]
    v = np.array([parts[0] + 1j * parts[1], parts[2] + 1j * parts[3]])
    n = np.linalg.norm(v)
    if n < 1e-3:
        return SubspaceState(1, 0)
    return SubspaceState.from_vector(v / n)


def random_state(rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return SubspaceState.from_vector(v / np.linalg.norm(v))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def maxabs(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


ACCEPTANCE_RESULTS = []


def record(criterion, passed, detail):
    ACCEPTANCE_RESULTS.append((criterion, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")
