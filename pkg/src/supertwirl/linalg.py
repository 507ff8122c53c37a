"""Dense complex matrix helpers for small tensor-product Hilbert spaces.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Tensor
products follow the row-major (``np.kron``) convention, so the first
factor of a :class:`DimensionProfile` is the most significant index.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError

STRUCTURAL_TOL = 1e-12
ORACLE_TOL = 1e-10


@dataclass(frozen=True)
class DimensionProfile:
    """Ordered local dimensions of a composite system, e.g. ``(2, 4, 3)``."""

    factor_dims: tuple[int, ...]

    def __init__(self, factor_dims: Iterable[int]):
        dims = tuple(int(d) for d in factor_dims)
        if not dims or any(d < 1 for d in dims):
            raise DimensionError(f"factor dimensions must be positive, got {dims}")
        object.__setattr__(self, "factor_dims", dims)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.factor_dims))

    def __len__(self) -> int:
        return len(self.factor_dims)

    def __getitem__(self, i: int) -> int:
        return self.factor_dims[i]


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-D complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DimensionError("matrix has non-finite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(mats: Sequence) -> np.ndarray:
    return reduce(kron, mats)


def partial_trace(m, profile: DimensionProfile, keep: Iterable[int]) -> np.ndarray:
    """Trace out every factor of ``profile`` not listed in ``keep``.

    Kept factors stay in their original order.
    """
    m = as_matrix(m)
    dims = profile.factor_dims
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise DimensionError("keep must name at least one factor")
    if keep[0] < 0 or keep[-1] >= n:
        raise DimensionError(f"keep {keep} out of range for {n} factors")
    if m.shape != (profile.total_dim, profile.total_dim):
        raise DimensionError(
            f"matrix shape {m.shape} does not match profile total {profile.total_dim}"
        )

    t = m.reshape(dims + dims)
    traced = [i for i in range(n) if i not in keep]
    # einsum labels: row indices then column indices; traced pairs share a label
    letters = [chr(ord("a") + i) for i in range(2 * n)]
    col = letters[n:]
    for i in traced:
        col[i] = letters[i]
    out = [letters[i] for i in keep] + [col[i] for i in keep]
    spec = "".join(letters[:n]) + "".join(col) + "->" + "".join(out)
    kept_dim = int(np.prod([dims[i] for i in keep]))
    return np.einsum(spec, t).reshape(kept_dim, kept_dim)


def fourier_matrix(d: int, conjugate: bool = False) -> np.ndarray:
    """Discrete Fourier matrix with entries ``w**(j*k) / sqrt(d)``, ``w = exp(2 pi i / d)``.

    ``conjugate=True`` flips the sign of the exponent.
    """
    if d < 1:
        raise DimensionError("Fourier dimension must be positive")
    sign = -1.0 if conjugate else 1.0
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    return np.exp(sign * 2j * np.pi * j * k / d) / np.sqrt(d)


def unitarity_check(m, tol: float = STRUCTURAL_TOL) -> bool:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError("unitarity is only defined for square matrices")
    return bool(np.linalg.norm(dagger(m) @ m - np.eye(m.shape[0])) <= tol)


def projector(i: int, d: int) -> np.ndarray:
    p = np.zeros((d, d), dtype=np.complex128)
    p[i, i] = 1.0
    return p
