"""Tests for the boson-polynomial (Fock) oracle.

The oracle expands valence-bond states in exact occupation-number
amplitudes, so every norm here is an integer-valued rational and every
comparison against the closed-form norms is exact.  Dense vectors appear
only at the final partial-trace / diagonalization step.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from akltblock.oracle import (
    ResourceCapError,
    StateVector,
    apply_psi_dagger,
    apply_spin_lowering,
    apply_spin_raising,
    apply_spin_z,
    build_block_vbs,
    build_full_vbs,
    correlator_reconstruction,
    degenerate_states,
    edge_pair_state,
    fock_block_spectrum,
    ladder_residual,
    linear_combine,
    partial_inner_identity_check,
    reduced_density_matrix,
    states_equal_exact,
    total_spin_checks,
    vacuum,
    valence_bond_power,
)
from akltblock.spectrum import degenerate_norm, eigenvalue_recurrence, vbs_norm
from akltblock.verify import match_spectrum


# ---------------------------------------------------------------------------
# state construction and exact norms
# ---------------------------------------------------------------------------

def test_vacuum_is_trivial():
    v = vacuum(3)
    assert v.spins == (0, 0, 0)
    assert v.amps == {(0, 0, 0): Fraction(1)}
    assert v.norm_square_exact() == 1
    assert v.dimension == 1


def test_single_bond_amplitudes():
    # (a_i^+ b_j^+ - b_i^+ a_j^+) on the vacuum: two spin-1/2 sites
    bond = valence_bond_power(vacuum(2), 0, 1, 1)
    assert bond.spins == (1, 1)
    assert bond.amps == {(1, -1): Fraction(1), (-1, 1): Fraction(-1)}
    assert bond.norm_square_exact() == 2


def test_bond_power_binomial_structure():
    bond2 = valence_bond_power(vacuum(2), 0, 1, 2)
    assert bond2.spins == (2, 2)
    # (...)^2 expands with signed binomial weights 1, -2, 1
    assert bond2.amps == {
        (2, -2): Fraction(1),
        (0, 0): Fraction(-2),
        (-2, 2): Fraction(1),
    }
    # norm^2 = sum c^2 * prod (p! q!) = 1*2 + 4*1 + 1*2 = 8... with p!q! per site
    assert bond2.norm_square_exact() == 12


def test_full_chain_norms_match_closed_form():
    for S, N in [(1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (2, 1), (2, 2)]:
        state = build_full_vbs(S, N)
        assert state.norm_square_exact() == vbs_norm(S, N)


def test_block_shape():
    # L sites, L-1 bonds: half-dressed spin-S/2 ends, full spin-S interior
    blk = build_block_vbs(2, 3)
    assert blk.spins == (2, 4, 2)
    with pytest.raises(ValueError):
        build_block_vbs(1, 1)


def test_degenerate_norms_match_closed_form():
    for S, L in [(1, 2), (1, 3), (2, 2)]:
        block = build_block_vbs(S, L)
        for J in range(S + 1):
            for M in range(-J, J + 1):
                state = apply_psi_dagger(block, J, M)
                assert state.norm_square_exact() == degenerate_norm(S, L, J)


def test_edge_pair_states_are_normalized():
    for S in (1, 2, 3):
        for J in range(S + 1):
            for M in range(-J, J + 1):
                pair = edge_pair_state(S, J, M)
                assert pair.norm_square_exact() == 1
                assert pair.sector == (J, M)


def test_edge_pair_states_are_orthogonal():
    vectors = {
        (J, M): edge_pair_state(2, J, M).to_dense()
        for J in range(3)
        for M in range(-J, J + 1)
    }
    keys = list(vectors)
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            assert abs(np.dot(vectors[a], vectors[b])) < 1e-14


def test_degenerate_family_gram_matrix():
    states = degenerate_states(1, 3)
    assert set(states) == {(0, 0), (1, -1), (1, 0), (1, 1)}
    dense = {key: st.to_dense(normalized=True) for key, st in states.items()}
    keys = sorted(dense)
    gram = np.array([[np.dot(dense[a], dense[b]) for b in keys] for a in keys])
    assert np.max(np.abs(gram - np.eye(4))) < 1e-12


def test_psi_dagger_validates_inputs():
    block = build_block_vbs(1, 2)
    with pytest.raises(ValueError):
        apply_psi_dagger(block, 2, 0)       # J > S
    with pytest.raises(ValueError):
        apply_psi_dagger(block, 1, 2)       # |M| > J
    with pytest.raises(ValueError):
        apply_psi_dagger(vacuum(4), 1, 0)   # not a block-shaped state


# ---------------------------------------------------------------------------
# reduced density matrices
# ---------------------------------------------------------------------------

def test_single_site_density_matrix_is_maximally_mixed():
    state = build_full_vbs(1, 3)
    rho = reduced_density_matrix(state, 2, 1)
    assert np.max(np.abs(rho - np.eye(3) / 3.0)) < 1e-14


def test_fock_spectrum_matches_formula():
    for S, L in [(1, 2), (1, 3), (1, 4), (2, 2)]:
        observed = fock_block_spectrum(S, L)
        expected = [(J, eigenvalue_recurrence(S, L, J)) for J in range(S + 1)]
        ok, detail = match_spectrum(observed, expected)
        assert ok, detail


def test_fock_spectrum_position_independent():
    base = np.array(fock_block_spectrum(1, 2, N=3, start=1))
    for N, start in [(3, 2), (4, 2), (5, 3)]:
        other = np.array(fock_block_spectrum(1, 2, N=N, start=start))
        assert np.max(np.abs(other - base)) < 1e-12


def test_fock_spectrum_rejects_bad_windows():
    with pytest.raises(ValueError):
        fock_block_spectrum(1, 3, N=3, start=2)   # block sticks out of the chain
    with pytest.raises(ValueError):
        fock_block_spectrum(1, 2, N=2, start=0)


def test_density_matrix_eigenvectors_are_degenerate_states():
    # rho_L v = Lambda(J) v for each normalized |VBS_L(J, M)>; the dressed
    # block states share the bulk-site basis of the chain slice exactly
    for S, L, N in [(1, 2, 4), (2, 2, 3)]:
        rho = reduced_density_matrix(build_full_vbs(S, N), 1, L)
        for (J, M), state in degenerate_states(S, L).items():
            vec = state.to_dense(normalized=True)
            lam = float(eigenvalue_recurrence(S, L, J))
            assert np.max(np.abs(rho @ vec - lam * vec)) < 1e-12


def test_correlator_reconstruction_equals_partial_trace():
    state = build_full_vbs(1, 3)
    for start, length in [(1, 2), (2, 2), (1, 3)]:
        direct = reduced_density_matrix(state, start, length)
        rebuilt = correlator_reconstruction(state, start, length)
        assert np.max(np.abs(direct - rebuilt)) < 1e-12


# ---------------------------------------------------------------------------
# total-spin quantum numbers (all exact until the final float report)
# ---------------------------------------------------------------------------

def test_degenerate_states_have_sharp_quantum_numbers():
    for S, L in [(1, 3), (2, 2)]:
        for (J, M), state in degenerate_states(S, L).items():
            checks = total_spin_checks(state, J=J, M=M)
            assert checks["sz_residual"] == 0.0
            assert checks["casimir_residual"] == 0.0


def test_ladder_relations_exact():
    states = degenerate_states(1, 3)
    assert ladder_residual(states[(1, -1)], states[(1, 0)]) == 0.0
    assert ladder_residual(states[(1, 0)], states[(1, 1)]) == 0.0


def test_ladder_terminates_at_the_top():
    states = degenerate_states(1, 2)
    top = apply_spin_raising(states[(1, 1)])
    assert top.norm_square_exact() == 0
    bottom = apply_spin_lowering(states[(1, -1)])
    assert bottom.norm_square_exact() == 0
    annihilated = apply_spin_raising(states[(0, 0)])
    assert annihilated.norm_square_exact() == 0


def test_full_chain_is_a_singlet():
    chain = build_full_vbs(1, 4)
    assert apply_spin_raising(chain).norm_square_exact() == 0
    assert apply_spin_lowering(chain).norm_square_exact() == 0
    assert apply_spin_z(chain).norm_square_exact() == 0


def test_spin_z_weights_by_magnetization():
    states = degenerate_states(1, 2)
    shifted = apply_spin_z(states[(1, 1)])
    assert states_equal_exact(shifted, states[(1, 1)])
    zeroed = apply_spin_z(states[(1, 0)])
    assert zeroed.norm_square_exact() == 0


# ---------------------------------------------------------------------------
# boundary-operator identities
# ---------------------------------------------------------------------------

def test_partial_inner_identity():
    for S in (1, 2):
        for J in range(S + 1):
            for M in range(-J, J + 1):
                assert partial_inner_identity_check(S, 2, J, M) < 1e-10


def test_bond_operators_commute():
    # folding the two bonds of a 3-site chain in either order gives the
    # identical amplitude dictionary
    a = valence_bond_power(valence_bond_power(vacuum(3), 0, 1, 1), 1, 2, 1)
    b = valence_bond_power(valence_bond_power(vacuum(3), 1, 2, 1), 0, 1, 1)
    assert states_equal_exact(a, b)
    assert a.amps == b.amps and a.scale == b.scale


# ---------------------------------------------------------------------------
# linear algebra over exact amplitudes
# ---------------------------------------------------------------------------

def test_linear_combine_cancels_identical_states():
    u = build_block_vbs(1, 3)
    diff = linear_combine(u, u, 1, -1)
    assert diff.norm_square_exact() == 0


def test_linear_combine_requires_commensurate_scales():
    states = degenerate_states(1, 2)
    # scale radicals sqrt(1/2) vs sqrt(1) do not mix exactly
    with pytest.raises(ValueError):
        linear_combine(states[(0, 0)], states[(1, 1)], 1, 1)


def test_states_equal_exact_detects_sign():
    u = valence_bond_power(vacuum(2), 0, 1, 1)
    flipped = linear_combine(u, u, 0, -1)
    assert states_equal_exact(u, u)
    assert not states_equal_exact(u, flipped)


# ---------------------------------------------------------------------------
# resource caps
# ---------------------------------------------------------------------------

def test_dense_conversion_refuses_huge_states():
    wide = StateVector(spins=(40,) * 5, amps={(0,) * 5: Fraction(1)})
    with pytest.raises(ResourceCapError):
        wide.to_dense()


def test_partial_trace_respects_max_dim():
    state = build_full_vbs(1, 3)
    with pytest.raises(ResourceCapError):
        reduced_density_matrix(state, 1, 3, max_dim=10)
    with pytest.raises(ResourceCapError):
        fock_block_spectrum(1, 3, max_dim=10)
