"""Qubit channels in Kraus form and their Pauli transfer matrices.

The Pauli basis is ordered ``(I, X, Z, XZ)``. ``XZ`` equals ``-iY`` and is not
Hermitian, so the transfer matrix uses ``P_i^dagger`` literally and is complex
in general. Entries are normalized by 2, which makes the identity channel
map to the 4x4 identity.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, InvalidChannelError, NumericalError, ParameterError
from .linalg import ORACLE_TOL, as_matrix, dagger, unitarity_check

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULIS = (I2, X, Z, X @ Z)

GATES = {
    "I": I2,
    "X": X,
    "Y": Y,
    "Z": Z,
    "H": np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2),
    "S": np.diag([1, 1j]).astype(np.complex128),
    "T": np.array([[1, -1j], [1, 1j]], dtype=np.complex128) / np.sqrt(2),
}


@dataclass(frozen=True, eq=False)
class Channel:
    """A CPTP map ``rho -> sum_k K_k rho K_k^dagger``.

    Construction validates Kraus completeness; pass ``validate=False`` to skip it
    for maps that are known to be CPTP by construction.
    """

    kraus: tuple[np.ndarray, ...]

    def __init__(self, kraus: Sequence, validate: bool = True, tol: float = ORACLE_TOL):
        ops = tuple(as_matrix(k) for k in kraus)
        if not ops:
            raise InvalidChannelError("a channel needs at least one Kraus operator")
        d = ops[0].shape[0]
        for k in ops:
            if k.shape != (d, d):
                raise DimensionError(f"Kraus operators must all be {d}x{d}, got {k.shape}")
            k.flags.writeable = False
        object.__setattr__(self, "kraus", ops)
        if validate and not self.is_trace_preserving(tol):
            raise InvalidChannelError("Kraus operators are not trace preserving")

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]

    def completeness(self) -> np.ndarray:
        return sum(dagger(k) @ k for k in self.kraus)

    def is_trace_preserving(self, tol: float = ORACLE_TOL) -> bool:
        return bool(np.linalg.norm(self.completeness() - np.eye(self.dim)) <= tol)

    def choi(self) -> np.ndarray:
        """Unnormalized Choi matrix ``sum_k vec(K_k) vec(K_k)^dagger`` (row-stacked vec)."""
        vecs = [k.reshape(-1) for k in self.kraus]
        return sum(np.outer(v, np.conj(v)) for v in vecs)

    def is_cptp(self, tol: float = ORACLE_TOL) -> bool:
        if not self.is_trace_preserving(tol):
            return False
        return bool(np.linalg.eigvalsh(self.choi()).min() >= -tol)

    def __call__(self, rho) -> np.ndarray:
        return apply(self, rho)

    def to_json(self) -> dict:
        return {"dim": self.dim, "kraus": [matrix_to_json(k) for k in self.kraus]}

    @classmethod
    def from_json(cls, data: dict) -> "Channel":
        try:
            kraus = [matrix_from_json(k) for k in data["kraus"]]
            dim = int(data["dim"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed channel JSON: {exc}") from exc
        ch = cls(kraus, validate=False)
        if ch.dim != dim:
            raise DimensionError(f"declared dim {dim} but Kraus operators are {ch.dim}x{ch.dim}")
        if not ch.is_trace_preserving():
            raise InvalidChannelError("Kraus operators are not trace preserving")
        return ch


def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def matrix_from_json(rows) -> np.ndarray:
    a = np.asarray(rows, dtype=float)
    if a.ndim != 3 or a.shape[2] != 2:
        raise ValueError("matrix entries must be [re, im] pairs")
    return as_matrix(a[..., 0] + 1j * a[..., 1])


def apply(e: Channel, rho) -> np.ndarray:
    rho = as_matrix(rho)
    if rho.shape != (e.dim, e.dim):
        raise DimensionError(f"state is {rho.shape}, channel acts on dimension {e.dim}")
    return sum(k @ rho @ dagger(k) for k in e.kraus)


def compose(a: Channel, b: Channel) -> Channel:
    """The channel ``a o b`` (apply ``b`` first)."""
    if a.dim != b.dim:
        raise DimensionError(f"cannot compose dimensions {a.dim} and {b.dim}")
    return Channel([ka @ kb for ka in a.kraus for kb in b.kraus], validate=False)


def unitary_channel(u) -> Channel:
    u = as_matrix(u)
    if u.shape[0] != u.shape[1] or not unitarity_check(u):
        raise ParameterError("unitary channel requires a unitary matrix")
    return Channel([u], validate=False)


def ptm(e: Channel) -> np.ndarray:
    """Pauli transfer matrix ``G[i, j] = tr(P_i^dagger E(P_j)) / 2``."""
    if e.dim != 2:
        raise DimensionError("Pauli transfer matrices are defined for qubit channels only")
    images = [apply(e, p) for p in PAULIS]
    g = np.empty((4, 4), dtype=np.complex128)
    for i, p in enumerate(PAULIS):
        for j, img in enumerate(images):
            g[i, j] = np.trace(dagger(p) @ img) / 2
    return g


def unitary_ptm(u) -> np.ndarray:
    return ptm(Channel([as_matrix(u)], validate=False))


def eta_from_ptm(g, tol: float = ORACLE_TOL) -> float:
    """Depolarizing parameter ``(tr G - 1) / 3``, which twirling by a 2-design preserves."""
    val = (np.trace(np.asarray(g)) - 1) / 3
    if abs(val.imag) >= tol:
        raise NumericalError(f"trace of transfer matrix has imaginary part {val.imag:.3e}")
    return float(val.real)


def _check_prob(name: str, p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"{name} parameter must lie in [0, 1], got {p}")
    return p


def identity_channel(dim: int = 2) -> Channel:
    return Channel([np.eye(dim)], validate=False)


def depolarizing(p: float) -> Channel:
    """``rho -> p rho + (1 - p) I / 2``."""
    p = _check_prob("depolarizing", p)
    k0 = np.sqrt((1 + 3 * p) / 4)
    k1 = np.sqrt((1 - p) / 4)
    return Channel([k0 * I2, k1 * X, k1 * Y, k1 * Z])


def dephasing(lam: float) -> Channel:
    lam = _check_prob("dephasing", lam)
    return Channel([np.sqrt(1 - lam) * I2, np.sqrt(lam) * Z])


def amplitude_damping(gamma: float) -> Channel:
    gamma = _check_prob("amplitude damping", gamma)
    k0 = np.array([[1, 0], [0, np.sqrt(1 - gamma)]], dtype=np.complex128)
    k1 = np.array([[0, np.sqrt(gamma)], [0, 0]], dtype=np.complex128)
    return Channel([k0, k1])


PRESETS = {
    "identity": lambda _=None: identity_channel(2),
    "depolarizing": depolarizing,
    "dephasing": dephasing,
    "amplitude_damping": amplitude_damping,
    "unitary": unitary_channel,
}
_ALIASES = {"amp_damp": "amplitude_damping", "depol": "depolarizing", "id": "identity"}


def preset_channel(name: str, param=None) -> Channel:
    name = _ALIASES.get(name, name)
    if name not in PRESETS:
        raise ParameterError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    if name == "identity":
        return identity_channel(2)
    if param is None:
        raise ParameterError(f"preset {name!r} needs a parameter")
    if name == "unitary" and isinstance(param, str):
        if param not in GATES:
            raise ParameterError(f"unknown gate {param!r}; choose from {sorted(GATES)}")
        param = GATES[param]
    return PRESETS[name](param)


def parse_channel_spec(spec: str) -> Channel:
    """Resolve ``"name:param"`` presets, or load a channel JSON file.

    Recognized presets: ``identity``, ``depolarizing:p``, ``dephasing:lam``,
    ``amp_damp:gamma`` (alias of ``amplitude_damping``) and ``unitary:G`` for
    ``G`` in :data:`GATES`.
    """
    if os.path.isfile(spec):
        with open(spec) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{spec}: not valid JSON ({exc})") from exc
        return Channel.from_json(data)
    name, _, arg = spec.partition(":")
    name = name.strip()
    if not arg:
        return preset_channel(name)
    if _ALIASES.get(name, name) == "unitary":
        return preset_channel(name, arg.strip())
    try:
        value = float(arg)
    except ValueError as exc:
        raise ValueError(f"cannot parse parameter {arg!r} in channel spec {spec!r}") from exc
    return preset_channel(name, value)


def random_channel(seed: int, kraus_count: int = 4) -> Channel:
    """Random qubit channel from a Gaussian Stinespring isometry.

    A ``(2 * kraus_count) x 2`` complex Gaussian matrix is orthonormalized by QR and
    cut into ``kraus_count`` stacked 2x2 blocks.
    """
    if kraus_count < 1:
        raise ParameterError("kraus_count must be at least 1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((2 * kraus_count, 2)) + 1j * rng.standard_normal((2 * kraus_count, 2))
    q, r = np.linalg.qr(g)
    # fix the QR phase freedom so the isometry is a deterministic function of g
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return Channel([q[2 * j : 2 * j + 2, :] for j in range(kraus_count)])


def random_pure_states(n: int, rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """``n`` Haar-random unit vectors as rows of an ``(n, dim)`` array."""
    v = rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def random_density_matrix(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ dagger(g)
    return rho / np.trace(rho)


def avg_gate_fidelity_mc(e: Channel, n_samples: int, seed: int) -> tuple[float, float]:
    """Monte-Carlo Haar average of ``<psi|E(|psi><psi|)|psi>``.

    Returns ``(mean, standard_error)``.
    """
    if n_samples < 1:
        raise ParameterError("n_samples must be at least 1")
    psi = random_pure_states(n_samples, np.random.default_rng(seed), e.dim)
    vals = np.zeros(n_samples)
    for k in e.kraus:
        amp = np.einsum("ni,ij,nj->n", np.conj(psi), k, psi)
        vals += np.abs(amp) ** 2
    stderr = float(vals.std(ddof=1) / np.sqrt(n_samples)) if n_samples > 1 else 0.0
    return float(vals.mean()), stderr
