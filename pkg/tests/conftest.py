"""Independent brute-force oracles shared by the test modules.

Nothing here goes through the package's transfer-matrix or supermap code paths.
"""
import itertools

import numpy as np
import pytest

# closed form for amplitude damping, gamma = 0.1: (2 sqrt(1 - gamma) + 1 - gamma) / 3
AMP_DAMP_01_ETA = 0.9324555320336758
AMP_DAMP_01_FIDELITY = 0.9662277660168379

SIGMA = [
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex) @ np.array([[1, 0], [0, -1]], dtype=complex),
]


def naive_kron(a, b):
    a, b = np.asarray(a), np.asarray(b)
    out = np.zeros((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]), dtype=complex)
    for i, j, k, l in itertools.product(
        range(a.shape[0]), range(a.shape[1]), range(b.shape[0]), range(b.shape[1])
    ):
        out[i * b.shape[0] + k, j * b.shape[1] + l] = a[i, j] * b[k, l]
    return out


def naive_partial_trace_first(m, d0, d1):
    """Keep factor 0 of a d0 x d1 bipartite operator by explicit index sums."""
    out = np.zeros((d0, d0), dtype=complex)
    for i in range(d0):
        for j in range(d0):
            out[i, j] = sum(m[i * d1 + k, j * d1 + k] for k in range(d1))
    return out


def kraus_apply(kraus, rho):
    return sum(k @ rho @ k.conj().T for k in kraus)


def brute_ptm(map_fn):
    """Transfer matrix of an arbitrary linear map given as a Python callable."""
    g = np.zeros((4, 4), dtype=complex)
    for j, pj in enumerate(SIGMA):
        img = map_fn(pj)
        for i, pi in enumerate(SIGMA):
            g[i, j] = np.trace(pi.conj().T @ img) / 2
    return g


def brute_twirl_ptm(unitaries, kraus):
    """Transfer matrix of rho -> mean_u u^dag E(u rho u^dag) u, evaluated on states."""

    def twirled(rho):
        return sum(
            u.conj().T @ kraus_apply(kraus, u @ rho @ u.conj().T) @ u for u in unitaries
        ) / len(unitaries)

    return brute_ptm(twirled)


def random_unitary(rng, d):
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
