"""Projector-sum spin-chain Hamiltonians.

The models here are sums of two-site total-spin projectors with positive
weights: the block Hamiltonian couples L spin-S sites through the J = S+1..2S
projectors, and the open-chain variant adds boundary spin-S/2 sites with
J = S/2+1..3S/2 boundary projectors, which removes the ground-state
degeneracy. Matrices are dense real symmetric arrays over the same
site-major basis as the state vectors (site 0 fastest).
"""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np

from ..angular import clebsch_gordan, _triangle_ok
from .dense import DEFAULT_MAX_DIM, require_dim

__all__ = [
    "pair_projector",
    "embed_pair",
    "spin_matrices",
    "block_hamiltonian",
    "unique_hamiltonian",
    "null_space",
]


def pair_projector(two_j1: int, two_j2: int, two_jbond: int) -> np.ndarray:
    """Projector onto total spin jbond of a two-site pair (twice-values).

    Row/column index is i1 + (two_j1+1)*i2 with i = (tm + tj)/2, so the first
    site of the pair varies fastest, matching the chain basis ordering.
    Both site spins are explicit because boundary bonds pair a spin-S/2 site
    with a spin-S site.
    """
    for name, tj in (("first site", two_j1), ("second site", two_j2), ("bond", two_jbond)):
        if not isinstance(tj, int) or tj < 0:
            raise ValueError(f"twice-spin of {name} must be a non-negative integer, got {tj!r}")
    if not _triangle_ok(two_j1, two_j2, two_jbond):
        raise ValueError(
            f"bond spin 2J={two_jbond} violates the triangle rule for sites "
            f"2j1={two_j1}, 2j2={two_j2}"
        )
    d1, d2 = two_j1 + 1, two_j2 + 1
    proj = np.zeros((d1 * d2, d1 * d2))
    for tM in range(-two_jbond, two_jbond + 1, 2):
        vec = np.zeros(d1 * d2)
        for tm1 in range(-two_j1, two_j1 + 1, 2):
            tm2 = tM - tm1
            if abs(tm2) > two_j2:
                continue
            coeff = clebsch_gordan(two_j1, tm1, two_j2, tm2, two_jbond, tM)
            if coeff.sign:
                vec[(tm1 + two_j1) // 2 + d1 * ((tm2 + two_j2) // 2)] = float(coeff)
        proj += np.outer(vec, vec)
    return proj


def embed_pair(pair_op: np.ndarray, dims: Sequence[int], site: int) -> np.ndarray:
    """Embed a two-site operator acting on (site, site+1) into the full chain.

    With site 0 as the fastest index, earlier sites form the inner Kronecker
    factor, so the embedding is I_after (x) pair_op (x) I_before.
    """
    dims = tuple(dims)
    if not 0 <= site <= len(dims) - 2:
        raise ValueError(f"pair at site {site} does not fit a chain of {len(dims)} sites")
    d_pair = dims[site] * dims[site + 1]
    if pair_op.shape != (d_pair, d_pair):
        raise ValueError(
            f"pair operator shape {pair_op.shape} does not match site dims "
            f"{dims[site]}x{dims[site + 1]}"
        )
    d_before = math.prod(dims[:site])
    d_after = math.prod(dims[site + 2 :])
    return np.kron(np.eye(d_after), np.kron(pair_op, np.eye(d_before)))


def spin_matrices(two_j: int) -> tuple[np.ndarray, np.ndarray]:
    """(S_z, S_+) for one site of twice-spin two_j, magnetization ascending.

    S_x, S_y and dot products follow from S_+; everything needed here stays
    real if contractions pair S_+ with S_- = S_+^T.
    """
    if not isinstance(two_j, int) or two_j < 0:
        raise ValueError(f"twice-spin must be a non-negative integer, got {two_j!r}")
    d = two_j + 1
    sz = np.diag([(-two_j + 2 * i) / 2.0 for i in range(d)])
    sp = np.zeros((d, d))
    for i in range(d - 1):
        tm = -two_j + 2 * i
        sp[i + 1, i] = math.sqrt((two_j - tm) * (two_j + tm + 2)) / 2.0
    return sz, sp


def _coefficients(weights: Sequence[float] | None, count: int, what: str) -> list[float]:
    if weights is None:
        return [1.0] * count
    weights = [float(w) for w in weights]
    if len(weights) != count:
        raise ValueError(f"expected {count} {what} coefficients, got {len(weights)}")
    if any(w <= 0 for w in weights):
        raise ValueError(f"{what} coefficients must be positive, got {weights}")
    return weights


def block_hamiltonian(
    S: int, L: int, C: Sequence[float] | None = None, max_dim: int = DEFAULT_MAX_DIM
) -> np.ndarray:
    """Sum of bond projectors J = S+1..2S over L spin-S sites.

    ``C`` lists the projector weights in ascending J order (default all 1);
    the null space is the span of the degenerate block VBS states whatever
    the positive weights.
    """
    if not isinstance(S, int) or S < 1:
        raise ValueError(f"bulk spin must be a positive integer, got {S!r}")
    if not isinstance(L, int) or L < 2:
        raise ValueError(f"block length must be an integer >= 2, got {L!r}")
    weights = _coefficients(C, S, "bulk projector")
    dims = (2 * S + 1,) * L
    dim = math.prod(dims)
    require_dim(dim, max_dim, what="block Hamiltonian")
    pair = sum(
        w * pair_projector(2 * S, 2 * S, 2 * J)
        for w, J in zip(weights, range(S + 1, 2 * S + 1))
    )
    ham = np.zeros((dim, dim))
    for site in range(L - 1):
        ham += embed_pair(pair, dims, site)
    return ham


def unique_hamiltonian(
    S: int,
    N: int,
    C: Sequence[float] | None = None,
    D: Sequence[float] | None = None,
    max_dim: int = DEFAULT_MAX_DIM,
) -> np.ndarray:
    """Open-chain Hamiltonian with spin-S/2 boundary sites; unique null vector.

    Bulk bonds carry the J = S+1..2S projectors with weights ``C``; the two
    boundary bonds carry the spin-(S/2)-spin-S projectors with J running over
    S/2+1..3S/2 (twice-values S+2..3S) and weights ``D``, both in ascending J
    order, default all 1.
    """
    if not isinstance(S, int) or S < 1:
        raise ValueError(f"bulk spin must be a positive integer, got {S!r}")
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"bulk site count must be an integer >= 1, got {N!r}")
    bulk_weights = _coefficients(C, S, "bulk projector")
    boundary_weights = _coefficients(D, S, "boundary projector")
    dims = (S + 1,) + (2 * S + 1,) * N + (S + 1,)
    dim = math.prod(dims)
    require_dim(dim, max_dim, what="open-chain Hamiltonian")
    ham = np.zeros((dim, dim))
    if N >= 2:
        bulk_pair = sum(
            w * pair_projector(2 * S, 2 * S, 2 * J)
            for w, J in zip(bulk_weights, range(S + 1, 2 * S + 1))
        )
        for site in range(1, N):
            ham += embed_pair(bulk_pair, dims, site)
    boundary_tj = range(S + 2, 3 * S + 1, 2)
    left = sum(
        w * pair_projector(S, 2 * S, tj) for w, tj in zip(boundary_weights, boundary_tj)
    )
    right = sum(
        w * pair_projector(2 * S, S, tj) for w, tj in zip(boundary_weights, boundary_tj)
    )
    ham += embed_pair(left, dims, 0)
    ham += embed_pair(right, dims, N)
    return ham


def null_space(
    mat: np.ndarray, cutoff: float = 1e-8, max_dim: int = DEFAULT_MAX_DIM
) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical null space.

    Intended for positive semi-definite projector sums, whose spectral gap
    above zero is O(0.1); the default cutoff sits far inside that gap.
    """
    mat = np.asarray(mat)
    require_dim(mat.shape[0], max_dim, what="null-space computation")
    values, vectors = np.linalg.eigh(mat)
    return vectors[:, values < cutoff]
