"""Finite single-qubit gate groups and brute-force twirl averages.

Groups are enumerated modulo global phase: every element is rescaled so that
its first nonzero entry (row-major) is real and positive.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .channels import GATES, PAULIS, Channel, ptm, unitary_ptm
from .errors import GroupClosureError, ParameterError
from .linalg import ORACLE_TOL, STRUCTURAL_TOL, as_matrix, dagger, unitarity_check

CLOSURE_BOUND = 64


def canonical_phase(u, tol: float = 1e-9) -> np.ndarray:
    u = as_matrix(u)
    flat = u.reshape(-1)
    idx = np.flatnonzero(np.abs(flat) > tol)[0]
    z = flat[idx]
    return u * (abs(z) / z)


def equal_up_to_phase(a, b, tol: float = 1e-9) -> bool:
    return bool(np.allclose(canonical_phase(a), canonical_phase(b), atol=tol))


@dataclass(frozen=True, eq=False)
class GateSet:
    elements: tuple[np.ndarray, ...]
    label: str = ""

    def __init__(self, elements: Sequence, label: str = ""):
        els = tuple(canonical_phase(u) for u in elements)
        if not els:
            raise ParameterError("a gate set needs at least one element")
        for u in els:
            if not unitarity_check(u, STRUCTURAL_TOL):
                raise ParameterError("gate set elements must be unitary")
            u.flags.writeable = False
        for i in range(len(els)):
            for j in range(i):
                if np.allclose(els[i], els[j], atol=1e-9):
                    raise ParameterError("gate set elements must be distinct up to phase")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "label", label)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def contains(self, u, tol: float = 1e-9) -> bool:
        c = canonical_phase(u)
        return any(np.allclose(c, g, atol=tol) for g in self.elements)


def closure(generators: Sequence, bound: int = CLOSURE_BOUND, label: str = "") -> GateSet:
    """Breadth-first closure of ``generators`` under multiplication, modulo phase."""
    gens = [canonical_phase(g) for g in generators]
    found = [canonical_phase(np.eye(2))]
    frontier = list(found)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = canonical_phase(a @ g)
                if not any(np.allclose(c, f, atol=1e-9) for f in found):
                    found.append(c)
                    nxt.append(c)
                    if len(found) > bound:
                        raise GroupClosureError(f"closure exceeded {bound} elements")
        frontier = nxt
    return GateSet(found, label)


@lru_cache(maxsize=None)
def generate_group_G() -> GateSet:
    """The 12-element group ``{T^t P : t in Z_3, P in {I, X, Z, XZ}}``."""
    return closure([GATES["T"], PAULIS[1], PAULIS[2], PAULIS[3]], label="G")


@lru_cache(maxsize=None)
def generate_clifford_1q() -> GateSet:
    return closure([GATES["H"], GATES["S"]], label="Clifford")


def twirl_average(g: GateSet, e: Channel, inverse_first: bool = False) -> np.ndarray:
    """Uniform group average of ``G(u) G(E) G(u^dagger)`` over ``u`` in ``g``.

    ``inverse_first=True`` uses the opposite sandwich ``G(u^dagger) G(E) G(u)``,
    which is what the supermap construction produces; for a group both agree.
    """
    ge = ptm(e)
    acc = np.zeros((4, 4), dtype=np.complex128)
    for u in g:
        left, right = unitary_ptm(u), unitary_ptm(dagger(u))
        if inverse_first:
            left, right = right, left
        acc += left @ ge @ right
    return acc / len(g)


def is_depolarizing_form(gamma, tol: float = ORACLE_TOL) -> tuple[bool, float]:
    """Test for the block form ``1 (+) eta * I_3``; returns ``(ok, mean diagonal)``."""
    gamma = np.asarray(gamma)
    diag = np.diag(gamma)
    eta = float(np.mean(diag[1:].real))
    off = gamma - np.diag(diag)
    ok = (
        np.max(np.abs(off)) <= tol
        and abs(diag[0] - 1) <= tol
        and np.max(np.abs(diag[1:] - diag[1:, None])) <= tol
    )
    return bool(ok), eta


def depolarizing_residual(gamma) -> float:
    """Largest off-diagonal magnitude of a transfer matrix."""
    gamma = np.asarray(gamma)
    return float(np.max(np.abs(gamma - np.diag(np.diag(gamma)))))
