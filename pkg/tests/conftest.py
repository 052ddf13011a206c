import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "opdisc", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("opdisc")

ACCEPTANCE_LINES = []


def haar_unitary(rng, n):
    """Haar-random unitary via QR with the phase correction of Mezzadri."""
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_hermitian(rng, n, scale=1.0):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * 0.5 * (a + a.conj().T)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def delta():
    return 0.3


@pytest.fixture
def shift_pair(delta):
    """The identity against diag(1, exp(2i delta))."""
    return np.eye(2, dtype=complex), np.diag([1.0, np.exp(2j * delta)])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
