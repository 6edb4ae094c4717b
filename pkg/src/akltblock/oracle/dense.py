"""Dense-matrix plumbing for the brute-force oracle.

Matrices are plain numpy arrays (real in every basis this package uses);
dimension caps keep accidental exponential blow-ups from freezing a run.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "DEFAULT_MAX_DIM",
    "MAX_STATE_ENTRIES",
    "ResourceCapError",
    "require_dim",
    "require_hermitian",
    "eigenspectrum",
    "numerical_rank",
]

DEFAULT_MAX_DIM = 4096  # dense matrices
MAX_STATE_ENTRIES = 5_000_000  # dense state-vector entries

_HERMITIAN_TOL = 1e-12


class ResourceCapError(RuntimeError):
    """A requested object exceeds the configured size caps."""


def require_dim(dim: int, max_dim: int = DEFAULT_MAX_DIM, what: str = "matrix") -> None:
    if dim > max_dim:
        raise ResourceCapError(f"{what} dimension {dim} exceeds the cap {max_dim}")


def require_hermitian(mat: np.ndarray, tol: float = _HERMITIAN_TOL) -> np.ndarray:
    """Return ``mat`` as an ndarray after checking Hermiticity within tol."""
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    scale = max(np.abs(mat).max(), 1.0) if mat.size else 1.0
    deviation = np.abs(mat - mat.conj().T).max() if mat.size else 0.0
    if deviation > tol * scale:
        raise ValueError(
            f"matrix is not Hermitian within tolerance: max deviation {deviation:.3e}"
        )
    return mat


def eigenspectrum(mat: np.ndarray, max_dim: int = DEFAULT_MAX_DIM) -> list[float]:
    """All eigenvalues of a Hermitian matrix, descending order."""
    mat = require_hermitian(mat)
    require_dim(mat.shape[0], max_dim)
    values = np.linalg.eigvalsh(mat)
    return [float(v) for v in values[::-1]]


def numerical_rank(eigenvalues, dim: int | None = None, cutoff: float | None = None) -> int:
    """Count eigenvalues above the zero cutoff (default 1e-10 * dimension)."""
    values = list(eigenvalues)
    if cutoff is None:
        cutoff = 1e-10 * (dim if dim is not None else len(values))
    return sum(1 for v in values if v > cutoff)
