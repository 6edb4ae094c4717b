"""Tests for bond-projector Hamiltonians and their ground spaces.

The central claims: the block Hamiltonian (a sum of highest-bond-spin
projectors over nearest-neighbor pairs) annihilates every dressed
valence-bond state and has null-space dimension exactly (S+1)^2, while the
full-chain Hamiltonian with boundary terms singles out the valence-bond
state as its unique zero mode.
"""

import numpy as np
import pytest

from akltblock.oracle import (
    block_hamiltonian,
    build_full_vbs,
    degenerate_states,
    embed_pair,
    null_space,
    pair_projector,
    spin_matrices,
    unique_hamiltonian,
)


def spin_vector(two_j: int) -> list[np.ndarray]:
    """Cartesian spin matrices (Sx, Sy, Sz) from the ladder pair."""
    sz, sp = spin_matrices(two_j)
    sx = (sp + sp.T) / 2.0
    sy = (sp - sp.T) / 2.0j
    return [sx, sy, sz.astype(complex)]


def heisenberg_coupling(two_j1: int, two_j2: int) -> np.ndarray:
    # pair index is i1 + d1*i2 (first site fastest), so the first-site
    # operator sits in the *inner* kron slot
    s1 = spin_vector(two_j1)
    s2 = spin_vector(two_j2)
    out = sum(np.kron(b, a) for a, b in zip(s1, s2))
    assert np.max(np.abs(out.imag)) < 1e-14
    return out.real


# ---------------------------------------------------------------------------
# spin matrices and projector algebra
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("two_j", [1, 2, 3, 4, 5])
def test_spin_matrix_commutators(two_j):
    sx, sy, sz = spin_vector(two_j)
    j = two_j / 2.0
    assert np.allclose(sx @ sy - sy @ sx, 1j * sz, atol=1e-13)
    casimir = sx @ sx + sy @ sy + sz @ sz
    assert np.allclose(casimir, j * (j + 1) * np.eye(two_j + 1), atol=1e-13)
    _, sp = spin_matrices(two_j)
    assert np.allclose(sz @ sp - sp @ sz, sp, atol=1e-13)


@pytest.mark.parametrize("two_j1,two_j2", [(2, 2), (1, 2), (2, 4), (4, 4), (3, 4)])
def test_pair_projectors_resolve_identity(two_j1, two_j2):
    dim = (two_j1 + 1) * (two_j2 + 1)
    total = np.zeros((dim, dim))
    seen = []
    for two_jbond in range(abs(two_j1 - two_j2), two_j1 + two_j2 + 1, 2):
        p = pair_projector(two_j1, two_j2, two_jbond)
        assert np.allclose(p, p.T, atol=1e-14)
        assert np.allclose(p @ p, p, atol=1e-13)
        assert np.trace(p) == pytest.approx(two_jbond + 1, abs=1e-12)
        for q in seen:
            assert np.max(np.abs(p @ q)) < 1e-13
        seen.append(p)
        total += p
    assert np.allclose(total, np.eye(dim), atol=1e-13)


def test_pair_projector_rejects_nontriangle_bond():
    with pytest.raises(ValueError):
        pair_projector(2, 2, 6)


def test_spin1_bond_projector_is_the_biquadratic_form():
    # P(bond spin 2) on two spin-1 sites equals 1/3 + (S.S)/2 + (S.S)^2/6
    ss = heisenberg_coupling(2, 2)
    want = np.eye(9) / 3.0 + ss / 2.0 + ss @ ss / 6.0
    got = pair_projector(2, 2, 4)
    assert np.max(np.abs(got - want)) < 1e-13


def test_boundary_projector_is_the_linear_form():
    # P(bond spin 3/2) on a (1/2, 1) pair equals (2/3)(1 + s.S)
    ss = heisenberg_coupling(1, 2)
    want = 2.0 / 3.0 * (np.eye(6) + ss)
    got = pair_projector(1, 2, 3)
    assert np.max(np.abs(got - want)) < 1e-13


def test_embed_pair_acts_on_the_right_slot():
    pair = pair_projector(2, 2, 4)
    dims = (3, 3, 3)
    h0 = embed_pair(pair, dims, 0)
    h1 = embed_pair(pair, dims, 1)
    assert h0.shape == (27, 27)
    # both embeddings annihilate the dressed two-site bond only on their slot
    assert np.max(np.abs(h0 @ h0 - h0)) < 1e-12
    assert np.max(np.abs(h1 @ h1 - h1)) < 1e-12
    assert np.max(np.abs(h0 - h1)) > 0.1  # genuinely different supports


# ---------------------------------------------------------------------------
# block Hamiltonian: ground space = dressed valence-bond states
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("S,L", [(1, 2), (1, 3), (1, 4), (2, 2)])
def test_block_ground_space(S, L):
    h = block_hamiltonian(S, L)
    assert np.allclose(h, h.T, atol=1e-13)
    eigs = np.linalg.eigvalsh(h)
    assert eigs[0] > -1e-10                      # positive semi-definite
    dim_null = int(np.sum(eigs < 1e-8))
    assert dim_null == (S + 1) ** 2
    for state in degenerate_states(S, L).values():
        vec = state.to_dense(normalized=True)
        assert np.max(np.abs(h @ vec)) < 1e-10


def test_block_null_space_spans_degenerate_states():
    h = block_hamiltonian(1, 3)
    kernel = null_space(h)
    assert kernel.shape[1] == 4
    proj = kernel @ kernel.T
    for state in degenerate_states(1, 3).values():
        vec = state.to_dense(normalized=True)
        assert np.max(np.abs(proj @ vec - vec)) < 1e-10


def test_block_coupling_weights_do_not_move_the_kernel():
    base = null_space(block_hamiltonian(2, 2))
    scaled = null_space(block_hamiltonian(2, 2, C=[3.5, 0.25]))
    assert base.shape == scaled.shape == (25, 9)
    # same span: projectors agree
    assert np.max(np.abs(base @ base.T - scaled @ scaled.T)) < 1e-10


def test_block_coupling_validation():
    with pytest.raises(ValueError):
        block_hamiltonian(2, 2, C=[1.0])            # needs S entries
    with pytest.raises(ValueError):
        block_hamiltonian(1, 2, C=[-1.0])           # positive weights only


# ---------------------------------------------------------------------------
# full-chain Hamiltonian: unique ground state
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("N", [2, 3])
def test_unique_ground_state_is_the_valence_bond_state(N):
    h = unique_hamiltonian(1, N)
    eigs = np.linalg.eigvalsh(h)
    assert eigs[0] > -1e-10
    assert int(np.sum(eigs < 1e-8)) == 1
    kernel = null_space(h)
    vbs = build_full_vbs(1, N).to_dense(normalized=True)
    overlap = abs(float(kernel[:, 0] @ vbs))
    assert overlap == pytest.approx(1.0, abs=1e-9)


def test_unique_hamiltonian_boundary_weights():
    h = unique_hamiltonian(1, 2, C=[2.0], D=[0.5])
    kernel = null_space(h)
    assert kernel.shape[1] == 1
    vbs = build_full_vbs(1, 2).to_dense(normalized=True)
    assert abs(float(kernel[:, 0] @ vbs)) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(ValueError):
        unique_hamiltonian(1, 2, D=[1.0, 1.0])


# ---------------------------------------------------------------------------
# dense null-space helper
# ---------------------------------------------------------------------------

def test_null_space_cutoff():
    mat = np.diag([0.0, 1e-12, 1.0])
    kernel = null_space(mat)
    assert kernel.shape == (3, 2)
    assert np.max(np.abs(mat @ kernel)) < 1e-11
