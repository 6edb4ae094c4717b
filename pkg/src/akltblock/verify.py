"""Verification suites: formula-vs-formula and formula-vs-oracle checks.

Each suite returns a list of check records — plain dicts with keys
``suite``, ``name``, ``passed``, ``detail`` and, on failure, a
``counterexample`` dict carrying the offending (S, L, J) cell and both
values. The CLI serializes these verbatim; tests assert on ``passed``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from fractions import Fraction

import numpy as np

from .oracle.dense import DEFAULT_MAX_DIM, eigenspectrum, numerical_rank
from .oracle.fock import (
    apply_spin_lowering,
    apply_spin_raising,
    apply_spin_z,
    build_block_vbs,
    build_full_vbs,
    correlator_reconstruction,
    degenerate_states,
    fock_block_spectrum,
    ladder_residual,
    partial_inner_identity_check,
    reduced_density_matrix,
    states_equal_exact,
    total_spin_checks,
    vacuum,
    valence_bond_power,
)
from .oracle.hamiltonians import (
    block_hamiltonian,
    null_space,
    pair_projector,
    unique_hamiltonian,
)
from .oracle.pauli import (
    pauli_channel_identity_check,
    pauli_density_matrix_spin1,
    pauli_ground_states_spin1,
)
from .spectrum import (
    block_spectrum,
    eigenvalue_closed,
    eigenvalue_recurrence,
    flat_limit_bound,
    lambda_coeff,
)

__all__ = [
    "SUITES",
    "run_suite",
    "match_spectrum",
    "ground_space_projector_gap",
    "suite_conjecture1",
    "suite_oracle",
    "suite_hamiltonian",
    "suite_appendix",
]

_MATCH_TOL = 1e-9
_ZERO_TOL = 1e-10


def _check(suite: str, name: str, passed: bool, detail: str, counterexample=None) -> dict:
    record = {"suite": suite, "name": name, "passed": bool(passed), "detail": detail}
    if counterexample is not None:
        record["counterexample"] = counterexample
    return record


def match_spectrum(
    observed: Sequence[float],
    expected: Sequence[tuple[int, Fraction | float]],
    tol: float = _MATCH_TOL,
    zero_tol: float = _ZERO_TOL,
) -> tuple[bool, str]:
    """Match oracle eigenvalues against {Lambda(J) with multiplicity 2J+1}.

    Greedy nearest-value consumption: each expected eigenvalue claims the
    closest unclaimed observed one; whatever remains must vanish.
    """
    remaining = list(observed)
    worst_match = 0.0
    for J, lam in sorted(expected, key=lambda item: -float(item[1])):
        target = float(lam)
        for _ in range(2 * J + 1):
            if not remaining:
                return False, f"ran out of eigenvalues while matching J={J}"
            best = min(range(len(remaining)), key=lambda i: abs(remaining[i] - target))
            deviation = abs(remaining[best] - target)
            if deviation > tol:
                return (
                    False,
                    f"J={J}: expected {target!r}, closest observed "
                    f"{remaining[best]!r} (|diff|={deviation:.3e} > {tol})",
                )
            worst_match = max(worst_match, deviation)
            remaining.pop(best)
    worst_leftover = max((abs(v) for v in remaining), default=0.0)
    if worst_leftover > zero_tol:
        return False, f"leftover eigenvalue {worst_leftover:.3e} exceeds {zero_tol}"
    return True, f"max match dev {worst_match:.3e}, max leftover {worst_leftover:.3e}"


def _formula_entries(S: int, L: int) -> list[tuple[int, Fraction]]:
    return [(J, eigenvalue_recurrence(S, L, J)) for J in range(S + 1)]


def suite_conjecture1(max_spin: int = 5, max_length: int = 30) -> list[dict]:
    """Exact agreement of the two formula routes, plus the exact trace law."""
    checks = []
    for S in range(1, max_spin + 1):
        counterexample = None
        for L in range(2, max_length + 1):
            for J in range(S + 1):
                rec = eigenvalue_recurrence(S, L, J)
                closed = eigenvalue_closed(S, L, J)
                if rec != closed:
                    counterexample = {
                        "S": S,
                        "L": L,
                        "J": J,
                        "recurrence": str(rec),
                        "closed_form": str(closed),
                    }
                    break
            if counterexample:
                break
        checks.append(
            _check(
                "conjecture1",
                f"recurrence_equals_closed_spin{S}",
                counterexample is None,
                f"exact equality over L=2..{max_length}, J=0..{S}",
                counterexample,
            )
        )
    counterexample = None
    for S in range(1, max_spin + 1):
        for L in range(1, max_length + 1):
            trace = block_spectrum(S, L).trace()
            if trace != 1:
                counterexample = {"S": S, "L": L, "trace": str(trace)}
                break
        if counterexample:
            break
    checks.append(
        _check(
            "conjecture1",
            "trace_law",
            counterexample is None,
            f"sum_J (2J+1) Lambda(J) == 1 exactly, S<={max_spin}, L<={max_length}",
            counterexample,
        )
    )
    return checks


def _spectra_close(a: Sequence[float], b: Sequence[float]) -> float:
    return max(abs(x - y) for x, y in zip(a, b)) if a else 0.0


def suite_oracle(
    spin: int = 1, max_length: int = 6, max_dim: int = DEFAULT_MAX_DIM
) -> list[dict]:
    """Brute-force Fock (and for spin 1, Pauli) spectra against the formulas."""
    checks = []
    S = spin

    failure = None
    detail = ""
    for L in range(2, max_length + 1):
        observed = fock_block_spectrum(S, L, max_dim=max_dim)
        ok, detail = match_spectrum(observed, _formula_entries(S, L))
        if not ok:
            failure = {"S": S, "L": L, "detail": detail}
            break
    checks.append(
        _check(
            "oracle",
            "fock_spectrum_matches_formula",
            failure is None,
            f"S={S}, L=2..{max_length}: " + detail,
            failure,
        )
    )

    failure = None
    for L in range(2, max_length + 1):
        observed = fock_block_spectrum(S, L, max_dim=max_dim)
        rank = numerical_rank(observed, dim=len(observed))
        if rank != (S + 1) ** 2:
            failure = {"S": S, "L": L, "rank": rank, "expected": (S + 1) ** 2}
            break
    checks.append(
        _check(
            "oracle",
            "rank_law",
            failure is None,
            f"numerical rank of rho equals (S+1)^2 for S={S}, L=2..{max_length}",
            failure,
        )
    )

    L = 2
    reference = fock_block_spectrum(S, L, N=L, start=1, max_dim=max_dim)
    failure = None
    worst = 0.0
    for N in (L, L + 1, L + 2):
        for start in range(1, N - L + 2):
            observed = fock_block_spectrum(S, L, N=N, start=start, max_dim=max_dim)
            deviation = _spectra_close(reference, observed)
            worst = max(worst, deviation)
            if deviation > _MATCH_TOL:
                failure = {"S": S, "L": L, "N": N, "start": start, "deviation": deviation}
    checks.append(
        _check(
            "oracle",
            "position_and_size_independence",
            failure is None,
            f"block spectrum independent of N and block position (max dev {worst:.3e})",
            failure,
        )
    )

    if S == 1:
        checks.extend(_pauli_checks(max_length))
        gap_lengths = [L for L in (6, 8, 10) if L <= max_length]
        if len(gap_lengths) >= 2:
            gaps = ground_space_projector_gap(S=1, lengths=gap_lengths)
            shrinking = all(a > b for a, b in zip(gaps, gaps[1:]))
            small_enough = gaps[-1] < 1e-4 if gap_lengths[-1] >= 10 else True
            passed = shrinking and small_enough
            checks.append(
                _check(
                    "oracle",
                    "ground_space_projector_gap",
                    passed,
                    "max|rho_L - P/(S+1)^2| at L="
                    + ",".join(map(str, gap_lengths))
                    + ": "
                    + ", ".join(f"{g:.3e}" for g in gaps),
                    None if passed else {"lengths": gap_lengths, "gaps": gaps},
                )
            )
        else:
            checks.append(
                _check(
                    "oracle",
                    "ground_space_projector_gap",
                    True,
                    "skipped (needs --max-length >= 8)",
                )
            )
    return checks


def _pauli_checks(max_length: int) -> list[dict]:
    checks = []
    failure = None
    detail = ""
    for L in range(2, min(max_length, 7) + 1):
        observed = eigenspectrum(pauli_density_matrix_spin1(L), max_dim=3**7)
        ok, detail = match_spectrum(observed, _formula_entries(1, L), tol=_ZERO_TOL)
        if not ok:
            failure = {"S": 1, "L": L, "detail": detail}
            break
    checks.append(
        _check(
            "oracle",
            "pauli_spectrum_matches_formula",
            failure is None,
            f"L=2..{min(max_length, 7)}: " + detail,
            failure,
        )
    )

    failure = None
    worst = 0.0
    for L in range(2, min(max_length, 5) + 1):
        states = [pauli_ground_states_spin1(L, alpha) for alpha in range(4)]
        sign = 3.0 if L % 2 == 0 else -3.0
        expected = [(3**L + sign) / 4.0] + [(3**L - sign / 3.0) / 4.0] * 3
        for g, norm_sq in zip(states, expected):
            worst = max(worst, abs(float(np.vdot(g, g).real) - norm_sq))
        gram_off = max(
            abs(np.vdot(states[i], states[j]))
            for i in range(4)
            for j in range(4)
            if i != j
        )
        worst = max(worst, float(gram_off))
        rho = pauli_density_matrix_spin1(L)
        for alpha, g in enumerate(states):
            lam = float(eigenvalue_recurrence(1, L, 0 if alpha == 0 else 1))
            residual = float(np.abs(rho @ g - lam * g).max())
            worst = max(worst, residual)
        if worst > 1e-9:
            failure = {"S": 1, "L": L, "worst": worst}
            break
    checks.append(
        _check(
            "oracle",
            "pauli_ground_states",
            failure is None,
            f"norms, orthogonality, eigen-relation (worst dev {worst:.3e})",
            failure,
        )
    )

    failure = None
    worst = 0.0
    for L in range(2, min(max_length, 5) + 1):
        residual = pauli_channel_identity_check(L)
        worst = max(worst, residual)
        if residual > 1e-13:
            failure = {"L": L, "residual": residual}
    checks.append(
        _check(
            "oracle",
            "pauli_channel_identity",
            failure is None,
            f"L=2..{min(max_length, 5)}, worst residual {worst:.3e}",
            failure,
        )
    )

    failure = None
    worst = 0.0
    for L in range(2, min(max_length, 6) + 1):
        fock = fock_block_spectrum(1, L, max_dim=3**6)
        pauli = eigenspectrum(pauli_density_matrix_spin1(L), max_dim=3**6)
        deviation = _spectra_close(fock, pauli)
        worst = max(worst, deviation)
        if deviation > _ZERO_TOL:
            failure = {"L": L, "deviation": deviation}
    checks.append(
        _check(
            "oracle",
            "pauli_equals_fock",
            failure is None,
            f"two oracle routes agree, L=2..{min(max_length, 6)} (max dev {worst:.3e})",
            failure,
        )
    )
    return checks


def ground_space_projector_gap(
    S: int = 1, lengths: Sequence[int] = (6, 8, 10), chunk: int = 256
) -> list[float]:
    """max|rho_L - P/(S+1)^2| for each L, with P the ground-space projector.

    Both sides are kept in rank-(S+1)^2 factored form (rho_L = A A^T from the
    pure chain state, P from the normalized degenerate VBS states, which are
    pairwise orthogonal), so the entrywise maximum is evaluated in row chunks
    without ever materializing a dense (2S+1)^L square matrix.
    """
    gaps = []
    for L in lengths:
        full = build_full_vbs(S, L)
        dims = full.dims
        d_end = dims[0]
        d_block = math.prod(dims[1:-1])
        psi = full.to_dense().reshape((d_end, d_block, d_end), order="F")
        factor_rho = np.ascontiguousarray(
            psi.transpose(1, 0, 2).reshape(d_block, d_end * d_end)
        )
        columns = [state.to_dense() for state in degenerate_states(S, L).values()]
        factor_proj = np.stack(columns, axis=1) / (S + 1)
        worst = 0.0
        for lo in range(0, d_block, chunk):
            hi = min(lo + chunk, d_block)
            piece = factor_rho[lo:hi] @ factor_rho.T
            piece -= factor_proj[lo:hi] @ factor_proj.T
            worst = max(worst, float(np.abs(piece).max()))
        gaps.append(worst)
    return gaps


def _default_hamiltonian_lengths(spin: int) -> list[int]:
    if spin == 1:
        return [2, 3, 4, 5]
    if spin == 2:
        return [2, 3]
    return [2]


def suite_hamiltonian(
    spin: int = 1,
    lengths: Sequence[int] | None = None,
    max_dim: int = DEFAULT_MAX_DIM,
) -> list[dict]:
    """Projector algebra, ground-space structure, and uniqueness checks."""
    S = spin
    lengths = list(lengths) if lengths is not None else _default_hamiltonian_lengths(S)
    checks = []

    worst = 0.0
    for pair in ((2 * S, 2 * S), (S, 2 * S)):
        tjs = range(abs(pair[0] - pair[1]), pair[0] + pair[1] + 1, 2)
        total = np.zeros(((pair[0] + 1) * (pair[1] + 1),) * 2)
        for tj in tjs:
            proj = pair_projector(pair[0], pair[1], tj)
            worst = max(worst, float(np.abs(proj @ proj - proj).max()))
            worst = max(worst, abs(proj.trace() - (tj + 1)))
            total += proj
        worst = max(worst, float(np.abs(total - np.eye(total.shape[0])).max()))
    checks.append(
        _check(
            "hamiltonian",
            "projector_algebra",
            worst <= 1e-12,
            f"P^2=P, tr P = 2J+1, completeness for S-S and S/2-S pairs (worst {worst:.3e})",
            None if worst <= 1e-12 else {"S": S, "worst": worst},
        )
    )

    failure = None
    info = []
    for L in lengths:
        if (2 * S + 1) ** L > max_dim:
            continue
        ham = block_hamiltonian(S, L, max_dim=max_dim)
        dim_null = null_space(ham, max_dim=max_dim).shape[1]
        lowest = min(eigenspectrum(ham, max_dim=max_dim))
        residual = max(
            float(np.linalg.norm(ham @ state.to_dense()))
            for state in degenerate_states(S, L).values()
        )
        info.append(f"L={L}: null dim {dim_null}, residual {residual:.1e}")
        if dim_null != (S + 1) ** 2 or residual > 1e-9 or lowest < -1e-10:
            failure = {
                "S": S,
                "L": L,
                "null_dimension": dim_null,
                "expected": (S + 1) ** 2,
                "annihilation_residual": residual,
            }
            break
    checks.append(
        _check(
            "hamiltonian",
            "block_ground_space",
            failure is None,
            "; ".join(info) or "no length within cap",
            failure,
        )
    )

    failure = None
    info = []
    for N in lengths:
        dim = (S + 1) ** 2 * (2 * S + 1) ** N
        if dim > max_dim:
            continue
        ham = unique_hamiltonian(S, N, max_dim=max_dim)
        basis = null_space(ham, max_dim=max_dim)
        vbs = build_full_vbs(S, N).to_dense()
        residual = float(np.linalg.norm(ham @ vbs))
        overlap = float(np.abs(basis.T @ vbs).max()) if basis.shape[1] else 0.0
        info.append(f"N={N}: null dim {basis.shape[1]}, residual {residual:.1e}")
        if basis.shape[1] != 1 or residual > 1e-9 or abs(overlap - 1.0) > 1e-9:
            failure = {
                "S": S,
                "N": N,
                "null_dimension": basis.shape[1],
                "annihilation_residual": residual,
                "vbs_overlap": overlap,
            }
            break
    checks.append(
        _check(
            "hamiltonian",
            "unique_ground_state",
            failure is None,
            "; ".join(info) or "no size within cap",
            failure,
        )
    )

    N = lengths[0]
    doubled = unique_hamiltonian(S, N, C=[2.0] * S, D=[2.0] * S, max_dim=max_dim)
    single = unique_hamiltonian(S, N, max_dim=max_dim)
    same_null = null_space(doubled, max_dim=max_dim).shape[1] == null_space(
        single, max_dim=max_dim
    ).shape[1]
    checks.append(
        _check(
            "hamiltonian",
            "coupling_rescale_invariance",
            same_null,
            f"S={S}, N={N}: doubling all projector weights preserves the null space",
            None if same_null else {"S": S, "N": N},
        )
    )
    return checks


def suite_appendix(max_spin: int = 2) -> list[dict]:
    """Correlator, partial-inner-product, and total-spin identity checks."""
    checks = []

    failure = None
    worst = 0.0
    for L in (2, 3):
        full = build_full_vbs(1, 3)
        traced = reduced_density_matrix(full, 1, L)
        rebuilt = correlator_reconstruction(full, 1, L)
        deviation = float(np.abs(traced - rebuilt).max())
        worst = max(worst, deviation)
        if deviation > 1e-10:
            failure = {"S": 1, "L": L, "deviation": deviation}
    checks.append(
        _check(
            "appendix",
            "correlator_reconstruction",
            failure is None,
            f"S=1, N=3, L=2..3 entrywise (worst {worst:.3e})",
            failure,
        )
    )

    failure = None
    worst = 0.0
    for S in range(1, min(max_spin, 2) + 1):
        for J in range(S + 1):
            for M in range(-J, J + 1):
                residual = partial_inner_identity_check(S, 2, J, M)
                worst = max(worst, residual)
                if residual > 1e-10:
                    failure = {"S": S, "L": 2, "J": J, "M": M, "residual": residual}
    checks.append(
        _check(
            "appendix",
            "partial_inner_identity",
            failure is None,
            f"boundary contraction identity, S<={min(max_spin, 2)}, L=2, all (J,M) "
            f"(worst {worst:.3e})",
            failure,
        )
    )

    failure = None
    worst = 0.0
    instances = [(1, 3)] + ([(2, 2)] if max_spin >= 2 else [])
    for S, L in instances:
        states = degenerate_states(S, L)
        for (J, M), state in states.items():
            residuals = total_spin_checks(state)
            worst = max(worst, residuals["sz_residual"], residuals["casimir_residual"])
            if worst > 1e-9:
                failure = {"S": S, "L": L, "J": J, "M": M, **residuals}
                break
        for J in range(1, S + 1):
            for M in range(-J, J):
                residual = ladder_residual(states[(J, M)], states[(J, M + 1)])
                worst = max(worst, residual)
                if residual > 1e-9:
                    failure = {"S": S, "L": L, "J": J, "M": M, "ladder": residual}
        if apply_spin_raising(states[(S, S)]).amps:
            failure = {"S": S, "L": L, "J": S, "M": S, "detail": "top state not annihilated"}
        if apply_spin_raising(states[(0, 0)]).amps or apply_spin_lowering(
            states[(0, 0)]
        ).amps:
            failure = {"S": S, "L": L, "J": 0, "M": 0, "detail": "singlet not annihilated"}
    checks.append(
        _check(
            "appendix",
            "total_spin_quantum_numbers",
            failure is None,
            f"S^z, Casimir, ladder and annihilation residuals (worst {worst:.3e})",
            failure,
        )
    )

    ok = True
    base = valence_bond_power(vacuum(3), 0, 1, 1)
    for op in (apply_spin_raising, apply_spin_lowering, apply_spin_z):
        before = valence_bond_power(op(base), 1, 2, 2)
        after = op(valence_bond_power(base, 1, 2, 2))
        ok = ok and states_equal_exact(before, after)
    full_singlet = not apply_spin_raising(build_full_vbs(1, 2)).amps
    checks.append(
        _check(
            "appendix",
            "bond_operator_commutators",
            ok and full_singlet,
            "total-spin operators commute with valence-bond factors (exact); "
            "full chain is a singlet",
            None if ok and full_singlet else {"detail": "exact commutator check failed"},
        )
    )
    return checks


def suite_flat_limit(max_spin: int = 5, max_length: int = 40) -> list[dict]:
    """Exponential approach of Lambda(J) to the flat value 1/(S+1)^2."""
    failure = None
    for S in range(1, max_spin + 1):
        flat = Fraction(1, (S + 1) ** 2)
        decay = abs(lambda_coeff(1, S))
        for L in range(2, max_length + 1):
            damping = decay ** (L - 1)
            for J in range(S + 1):
                bound = flat_limit_bound(S, J) * damping
                deviation = abs(eigenvalue_recurrence(S, L, J) - flat)
                if deviation > bound:
                    failure = {
                        "S": S,
                        "L": L,
                        "J": J,
                        "deviation": str(deviation),
                        "bound": str(bound),
                    }
                    break
            if failure:
                break
        if failure:
            break
    return [
        _check(
            "conjecture1",
            "flat_limit_bound",
            failure is None,
            f"|Lambda(J) - 1/(S+1)^2| <= K(S,J) |lambda(1,S)|^(L-1), "
            f"S<={max_spin}, L<={max_length} (exact rational comparison)",
            failure,
        )
    ]


SUITES = {
    "conjecture1": lambda **kw: suite_conjecture1(
        max_spin=kw.get("max_spin", 5), max_length=kw.get("max_length", 30)
    )
    + suite_flat_limit(max_spin=kw.get("max_spin", 5)),
    "oracle": lambda **kw: suite_oracle(
        spin=kw.get("spin", 1),
        max_length=kw.get("max_length", 6),
        max_dim=kw.get("max_dim", DEFAULT_MAX_DIM),
    ),
    "hamiltonian": lambda **kw: suite_hamiltonian(
        spin=kw.get("spin", 1),
        lengths=kw.get("lengths"),
        max_dim=kw.get("max_dim", DEFAULT_MAX_DIM),
    ),
    "appendix": lambda **kw: suite_appendix(max_spin=kw.get("max_spin", 2)),
}


def run_suite(name: str, **kwargs) -> list[dict]:
    """Run one named suite, or all of them with per-suite default ranges."""
    if name == "all":
        checks = []
        checks.extend(SUITES["conjecture1"](max_spin=kwargs.get("max_spin", 5)))
        checks.extend(SUITES["oracle"](spin=kwargs.get("spin", 1)))
        checks.extend(SUITES["hamiltonian"](spin=kwargs.get("spin", 1)))
        checks.extend(SUITES["appendix"]())
        return checks
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return SUITES[name](**kwargs)
