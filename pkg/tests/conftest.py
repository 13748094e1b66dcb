import numpy as np
import pytest

from semihilbert.core import validate_psd
from semihilbert.fuzz import random_ba_operator, random_weight

D12 = np.diag([1.0, 2.0])
D10 = np.diag([1.0, 0.0])
SHIFT = np.array([[0.0, 1.0], [0.0, 0.0]])
ONES = np.ones((2, 2))
I2 = np.eye(2)


def a_sphere(A, m, rng):
    """Random vectors with unit A-norm, computed directly in the original space."""
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    Z = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    nrm = np.sqrt(np.einsum("ij,ij->i", Z.conj(), Z @ A.T).real)
    keep = nrm > 1e-8
    return Z[keep] / nrm[keep, None]


def sampled_terms(A, S, Z):
    """``<Sz, z>_A`` and ``||Sz||_A^2`` for each row of ``Z``."""
    A = np.asarray(A, dtype=complex)
    SZ = Z @ np.asarray(S, dtype=complex).T
    inner = np.einsum("ij,ij->i", Z.conj(), SZ @ A.T)
    norm2 = np.einsum("ij,ij->i", SZ.conj(), SZ @ A.T).real
    return inner, norm2


def make_pair(seed, n, deficit):
    rng = np.random.default_rng(seed)
    A = random_weight(rng, n, deficit)
    S = random_ba_operator(rng, validate_psd(A))
    return A, S


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


PAIR_CASES = [(s, n, k) for s in range(3) for n in (2, 3, 4) for k in (0, 1)]


# acceptance criteria report one line each, collected here and echoed in the
# terminal summary so they are visible without ``-s``
ACCEPTANCE_LINES = {}


@pytest.fixture
def record_criterion():
    def record(number, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        ACCEPTANCE_LINES[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
