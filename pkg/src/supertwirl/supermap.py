"""Controlled-unitary supermaps that twirl a qubit channel.

A layer controlled on an ancilla of dimension ``d`` is

    sum_i U_i (x) F |i><i| F^dagger

with ``F`` the ``d``-dimensional Fourier matrix. Starting the ancilla in ``|0>``
puts it in a uniform superposition over the Fourier basis, so sandwiching a
channel between the layer and its inverse and discarding the ancilla yields
the uniform average of ``U_i^dagger E(U_i . U_i^dagger) U_i``.

The full twirling gate acts on a qubit (x) ququart (x) qutrit register and is the
product of a Pauli layer on the ququart and a ``T^t`` layer on the qutrit.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .channels import GATES, PAULIS, Channel, apply
from .errors import DimensionError, ParameterError
from .linalg import (
    STRUCTURAL_TOL,
    DimensionProfile,
    as_matrix,
    dagger,
    fourier_matrix,
    kron_all,
    partial_trace,
    projector,
    unitarity_check,
)

TWIRL_PROFILE = DimensionProfile((2, 4, 3))


@dataclass(frozen=True, eq=False)
class ControlledFamily:
    """Target unitaries ``U_0 .. U_{d-1}`` selected by the ancilla at ``slot``."""

    unitaries: tuple[np.ndarray, ...]
    slot: int

    def __init__(self, unitaries: Sequence, slot: int):
        us = tuple(as_matrix(u) for u in unitaries)
        if not us:
            raise ParameterError("a controlled family needs at least one unitary")
        for u in us:
            if not unitarity_check(u, STRUCTURAL_TOL):
                raise ParameterError("controlled family members must be unitary")
        object.__setattr__(self, "unitaries", us)
        object.__setattr__(self, "slot", int(slot))

    @property
    def aux_dim(self) -> int:
        return len(self.unitaries)


@dataclass(frozen=True, eq=False)
class SupermapUnitary:
    matrix: np.ndarray
    profile: DimensionProfile

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape != (self.profile.total_dim, self.profile.total_dim):
            raise DimensionError(
                f"matrix shape {m.shape} does not match profile {self.profile.factor_dims}"
            )
        if not unitarity_check(m, STRUCTURAL_TOL):
            raise ParameterError("supermap matrix is not unitary")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def __matmul__(self, other: "SupermapUnitary") -> "SupermapUnitary":
        if self.profile != other.profile:
            raise DimensionError("cannot multiply supermap unitaries on different profiles")
        return SupermapUnitary(self.matrix @ other.matrix, self.profile)


def build_layer(
    f: ControlledFamily, profile: DimensionProfile, conjugate_fourier: bool = False
) -> SupermapUnitary:
    dims = profile.factor_dims
    if not 0 < f.slot < len(dims):
        raise DimensionError(f"slot {f.slot} must name an ancilla factor of {dims}")
    if dims[f.slot] != f.aux_dim:
        raise DimensionError(
            f"ancilla factor {f.slot} has dimension {dims[f.slot]}, family has {f.aux_dim} members"
        )
    if f.unitaries[0].shape[0] != dims[0]:
        raise DimensionError("family unitaries must act on the target factor")

    fm = fourier_matrix(f.aux_dim, conjugate=conjugate_fourier)
    total = np.zeros((profile.total_dim,) * 2, dtype=np.complex128)
    for i, u in enumerate(f.unitaries):
        factors = [np.eye(d) for d in dims]
        factors[0] = u
        factors[f.slot] = fm @ projector(i, f.aux_dim) @ dagger(fm)
        total += kron_all(factors)
    return SupermapUnitary(total, profile)


def pauli_family(slot: int = 1) -> ControlledFamily:
    return ControlledFamily(PAULIS, slot)


def t_family(slot: int = 2) -> ControlledFamily:
    t = GATES["T"]
    return ControlledFamily([np.linalg.matrix_power(t, k) for k in range(3)], slot)


def build_U_P(conjugate_fourier: bool = False) -> SupermapUnitary:
    return build_layer(pauli_family(1), TWIRL_PROFILE, conjugate_fourier)


def build_U_T(conjugate_fourier: bool = False) -> SupermapUnitary:
    return build_layer(t_family(2), TWIRL_PROFILE, conjugate_fourier)


@lru_cache(maxsize=4)
def build_W(conjugate_fourier: bool = False) -> SupermapUnitary:
    """The 24x24 twirling gate ``U_P @ U_T`` on qubit (x) ququart (x) qutrit."""
    return build_U_P(conjugate_fourier) @ build_U_T(conjugate_fourier)


def _check_target(w: SupermapUnitary, e: Channel) -> int:
    if w.profile[0] != e.dim:
        raise DimensionError(
            f"supermap target factor is {w.profile[0]}, channel dimension is {e.dim}"
        )
    return w.profile.total_dim // e.dim


def apply_supermap(w: SupermapUnitary, e: Channel) -> Channel:
    """Kraus form of ``rho -> tr_anc[W^dagger (E (x) id)(W (rho (x) |0><0|) W^dagger) W]``.

    Output Kraus operators are ``(I (x) <m|) W^dagger (K_k (x) I) W (I (x) |0>)``
    for every ancilla basis label ``m`` and input Kraus index ``k``.
    """
    n_anc = _check_target(w, e)
    d = e.dim
    wm = w.matrix
    rows = [np.arange(d) * n_anc + m for m in range(n_anc)]
    cols = np.arange(d) * n_anc
    out = []
    for k in e.kraus:
        sandwich = dagger(wm) @ np.kron(k, np.eye(n_anc)) @ wm
        sub = sandwich[:, cols]
        out.extend(sub[r, :] for r in rows)
    return Channel(out, validate=False)


def simulate_circuit(
    e: Channel,
    prepend_x: bool = False,
    e0: Channel | None = None,
    e1: Channel | None = None,
    w: SupermapUnitary | None = None,
) -> float:
    """Density-matrix run of the twirl circuit; returns the probability of reading ``|0>``.

    The register starts in ``|0><0|`` on every wire. ``X`` (optional) and then
    the preparation noise ``e1`` act on the qubit, the qubit is twirled by
    ``w`` (default :func:`build_W`), the ancillas are discarded and the
    measurement noise ``e0`` acts before the readout.
    """
    w = build_W() if w is None else w
    n_anc = _check_target(w, e)
    d = e.dim
    for ch in (e0, e1):
        if ch is not None and ch.dim != d:
            raise DimensionError("SPAM channels must act on the target system")

    qubit = projector(0, d)
    if prepend_x:
        qubit = PAULIS[1] @ qubit @ PAULIS[1]
    if e1 is not None:
        qubit = apply(e1, qubit)

    rho = np.kron(qubit, projector(0, n_anc))
    wm = w.matrix
    rho = wm @ rho @ dagger(wm)
    rho = sum(
        (kk := np.kron(k, np.eye(n_anc))) @ rho @ dagger(kk) for k in e.kraus
    )
    rho = dagger(wm) @ rho @ wm
    out = partial_trace(rho, w.profile, keep=[0])
    if e0 is not None:
        out = apply(e0, out)
    return float(out[0, 0].real)
