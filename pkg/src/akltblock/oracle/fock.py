"""Valence-bond-solid states in the Schwinger-boson occupation basis.

A site of twice-spin ``ts`` carries ``ts`` bosons split between the two
Schwinger modes; the occupation (n_a, n_b) = ((ts+tm)/2, (ts-tm)/2) is
labelled by the twice-magnetization ``tm``. A basis monomial is therefore a
tuple of per-site tm values, with the per-site twice-spins stored once on the
state. Bond expansion and boundary-operator application stay exact: a
:class:`StateVector` holds rational amplitudes times one global
:class:`~akltblock.angular.SignedSqrtRational` scale (the coupling
coefficients of a fixed (J, M) family share a single radical, so no sums of
incompatible square roots ever arise). Converting to the orthonormal |s,m>
product basis, which multiplies the coefficient of occupation (p, q) by
sqrt(p! q!) per site, is the only exact-to-float boundary.

Basis ordering is site-major with magnetization ascending from -s:
``index = sum_j i_j * prod_{j'<j} (ts_{j'}+1)`` with ``i_j = (tm_j+ts_j)/2``
(site 0 varies fastest).

Public functions take the bulk spin S and the edge quantum numbers (J, M) as
plain integers; twice-values appear only in per-site spins, where the
boundary sites genuinely carry half-integer spin S/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..angular import (
    SignedSqrtRational,
    _coupling_prefactor_square,
    _racah_sum,
    _sqrt_exact,
    factorial,
)
from .dense import (
    DEFAULT_MAX_DIM,
    MAX_STATE_ENTRIES,
    ResourceCapError,
    eigenspectrum,
    require_dim,
)

__all__ = [
    "StateVector",
    "vacuum",
    "valence_bond_power",
    "build_block_vbs",
    "build_full_vbs",
    "edge_pair_state",
    "apply_psi_dagger",
    "degenerate_states",
    "reduced_density_matrix",
    "fock_block_spectrum",
    "correlator_reconstruction",
    "partial_inner_identity_check",
    "apply_spin_z",
    "apply_spin_raising",
    "apply_spin_lowering",
    "total_spin_checks",
    "ladder_residual",
    "linear_combine",
    "states_equal_exact",
]


@dataclass
class StateVector:
    """Sparse exact state over the Schwinger occupation basis.

    ``amps`` maps per-site twice-magnetization tuples to rational amplitudes;
    the physical coefficient of a monomial is ``scale * amps[key]`` where
    ``scale`` is one shared signed square root. ``sector`` optionally tags the
    (J, M) edge quantum numbers once a boundary operator has been applied.
    """

    spins: tuple[int, ...]
    amps: dict[tuple[int, ...], Fraction]
    scale: SignedSqrtRational = field(default_factory=SignedSqrtRational.one)
    sector: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        self.amps = {k: v for k, v in self.amps.items() if v != 0}

    @property
    def nsites(self) -> int:
        return len(self.spins)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(ts + 1 for ts in self.spins)

    @property
    def dimension(self) -> int:
        return math.prod(self.dims)

    def norm_square_exact(self) -> Fraction:
        """<psi|psi> in the orthonormal basis, as an exact rational.

        Distinct monomials are orthogonal with <(p,q)|(p,q)> = p! q! per
        site, so the norm-square needs only the squared amplitudes and no
        radical arithmetic.
        """
        total = Fraction(0)
        for key, amp in self.amps.items():
            weight = 1
            for ts, tm in zip(self.spins, key):
                weight *= factorial((ts + tm) // 2) * factorial((ts - tm) // 2)
            total += amp * amp * weight
        return total * self.scale.square

    def to_dense(self, normalized: bool = True) -> np.ndarray:
        """Dense orthonormal-basis vector (the exact-to-float boundary)."""
        if self.dimension > MAX_STATE_ENTRIES:
            raise ResourceCapError(
                f"dense vector of {self.dimension} entries exceeds the cap {MAX_STATE_ENTRIES}"
            )
        strides = []
        acc = 1
        for d in self.dims:
            strides.append(acc)
            acc *= d
        out = np.zeros(self.dimension)
        for key, amp in self.amps.items():
            index = 0
            weight = 1
            for ts, tm, stride in zip(self.spins, key, strides):
                index += ((tm + ts) // 2) * stride
                weight *= factorial((ts + tm) // 2) * factorial((ts - tm) // 2)
            value = self.scale * SignedSqrtRational.from_rational(amp)
            value = value * SignedSqrtRational(1, Fraction(weight))
            out[index] = float(value)
        if normalized:
            norm_sq = self.norm_square_exact()
            if norm_sq == 0:
                raise ValueError("cannot normalize the zero state")
            out /= math.sqrt(float(norm_sq))
        return out


def vacuum(nsites: int) -> StateVector:
    """Boson vacuum: every site has twice-spin 0 and amplitude 1."""
    if nsites < 1:
        raise ValueError(f"need at least one site, got {nsites}")
    return StateVector(spins=(0,) * nsites, amps={(0,) * nsites: Fraction(1)})


def _check_entries(count: int) -> None:
    if count > MAX_STATE_ENTRIES:
        raise ResourceCapError(f"amplitude map of {count} entries exceeds the cap {MAX_STATE_ENTRIES}")


def valence_bond_power(state: StateVector, i: int, j: int, S: int) -> StateVector:
    """Multiply by the valence bond (a_i^+ b_j^+ - b_i^+ a_j^+)^S, exactly.

    Binomial expansion in commuting creation operators: the k-th term adds
    (S-k, k) bosons at site i and (k, S-k) at site j with the signed binomial
    coefficient, i.e. twice-magnetization shifts (S-2k, 2k-S).
    """
    if i == j or not 0 <= i < state.nsites or not 0 <= j < state.nsites:
        raise ValueError(f"bond sites must be distinct and in range, got {(i, j)}")
    if S < 1:
        raise ValueError(f"bond power must be a positive integer, got {S}")
    new_amps: dict[tuple[int, ...], Fraction] = {}
    for k in range(S + 1):
        coeff = math.comb(S, k) * (-1 if k % 2 else 1)
        di, dj = S - 2 * k, 2 * k - S
        for key, amp in state.amps.items():
            new_key = list(key)
            new_key[i] += di
            new_key[j] += dj
            new_key = tuple(new_key)
            new_amps[new_key] = new_amps.get(new_key, Fraction(0)) + coeff * amp
    _check_entries(len(new_amps))
    spins = list(state.spins)
    spins[i] += S
    spins[j] += S
    return StateVector(spins=tuple(spins), amps=new_amps, scale=state.scale)


def build_block_vbs(S: int, L: int) -> StateVector:
    """Block VBS state: L sites, L-1 valence bonds, raw integer amplitudes.

    End sites carry S bosons (spin S/2) and bulk sites 2S bosons (spin S).
    """
    _check_bulk_spin(S)
    if not isinstance(L, int) or L < 2:
        raise ValueError(f"block length must be an integer >= 2, got {L!r}")
    state = vacuum(L)
    for site in range(L - 1):
        state = valence_bond_power(state, site, site + 1, S)
    return state


def build_full_vbs(S: int, N: int) -> StateVector:
    """Open-chain VBS state: N bulk spin-S sites, spin-S/2 ends, N+1 bonds."""
    _check_bulk_spin(S)
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"bulk site count must be an integer >= 1, got {N!r}")
    state = vacuum(N + 2)
    for site in range(N + 1):
        state = valence_bond_power(state, site, site + 1, S)
    return state


def _check_bulk_spin(S: int) -> None:
    if not isinstance(S, int) or isinstance(S, bool) or S < 1:
        raise ValueError(f"bulk spin must be a positive integer, got {S!r}")


def _check_sector(S: int, J: int, M: int) -> None:
    if not isinstance(J, int) or not 0 <= J <= S:
        raise ValueError(f"edge spin J must satisfy 0 <= J <= S={S}, got {J!r}")
    if not isinstance(M, int) or abs(M) > J:
        raise ValueError(f"edge magnetization M must satisfy |M| <= J={J}, got {M!r}")


def _pair_terms(S: int, J: int, M: int):
    """Coupling terms of the two spin-S/2 edge modes to total (J, M).

    Yields (tm1, tm2, rational) such that the boundary operator adds the
    monomial pair with that rational coefficient; the common radical of the
    family is returned separately as a prefactor square.
    """
    tj, tJ, tM = S, 2 * J, 2 * M
    prefactor_square = _coupling_prefactor_square(tj, tj, tJ, tM)
    terms = []
    for tm1 in range(-tj, tj + 1, 2):
        tm2 = tM - tm1
        if abs(tm2) > tj:
            continue
        rational = _racah_sum(tj, tm1, tj, tm2, tJ)
        if rational != 0:
            terms.append((tm1, tm2, rational))
    return prefactor_square, terms


def edge_pair_state(S: int, J: int, M: int) -> StateVector:
    """Normalized two-site state of the boundary pair: |J, M> of two spin-S/2."""
    _check_bulk_spin(S)
    _check_sector(S, J, M)
    prefactor_square, terms = _pair_terms(S, J, M)
    amps = {(tm1, tm2): rational for tm1, tm2, rational in terms}
    return StateVector(
        spins=(S, S),
        amps=amps,
        scale=SignedSqrtRational(1, prefactor_square),
        sector=(J, M),
    )


def apply_psi_dagger(state: StateVector, J: int, M: int) -> StateVector:
    """Attach the edge-spin creation operator for sector (J, M), exactly.

    The input must be a block VBS state (end sites spin S/2, bulk spin S);
    the output carries spin S everywhere and is tagged with ``sector``.
    Amplitudes remain rational because the coupling coefficient divided by
    the boson monomial norms is rational times one (J, M)-dependent radical,
    which goes into the global scale.
    """
    S = state.spins[0]
    if state.nsites < 2 or state.spins[-1] != S or any(
        ts != 2 * S for ts in state.spins[1:-1]
    ):
        raise ValueError("expected a block VBS state with spin-S/2 end sites")
    _check_bulk_spin(S)
    _check_sector(S, J, M)
    prefactor_square, terms = _pair_terms(S, J, M)
    last = state.nsites - 1
    new_amps: dict[tuple[int, ...], Fraction] = {}
    for tm1, tm2, rational in terms:
        for key, amp in state.amps.items():
            new_key = list(key)
            new_key[0] += tm1
            new_key[last] += tm2
            new_key = tuple(new_key)
            new_amps[new_key] = new_amps.get(new_key, Fraction(0)) + rational * amp
    _check_entries(len(new_amps))
    spins = list(state.spins)
    spins[0] += S
    spins[last] += S
    return StateVector(
        spins=tuple(spins),
        amps=new_amps,
        scale=state.scale * SignedSqrtRational(1, prefactor_square),
        sector=(J, M),
    )


def degenerate_states(S: int, L: int) -> dict[tuple[int, int], StateVector]:
    """All (S+1)^2 degenerate block VBS states keyed by (J, M)."""
    block = build_block_vbs(S, L)
    return {
        (J, M): apply_psi_dagger(block, J, M)
        for J in range(S + 1)
        for M in range(-J, J + 1)
    }


def reduced_density_matrix(
    state: StateVector, start: int, length: int, max_dim: int = DEFAULT_MAX_DIM
) -> np.ndarray:
    """Partial trace onto a contiguous block of sites, as a dense matrix.

    The state is normalized first, so the result has unit trace. Row/column
    index is site-major over the block (earliest block site fastest).
    """
    if length < 1 or start < 0 or start + length > state.nsites:
        raise ValueError(
            f"block (start={start}, length={length}) is not a valid site range"
        )
    dims = state.dims
    d_left = math.prod(dims[:start])
    d_block = math.prod(dims[start : start + length])
    d_right = math.prod(dims[start + length :])
    require_dim(d_block, max_dim, what="density matrix")
    psi = state.to_dense(normalized=True).reshape((d_left, d_block, d_right), order="F")
    return np.einsum("abc,adc->bd", psi, psi)


def fock_block_spectrum(
    S: int,
    L: int,
    N: int | None = None,
    start: int = 1,
    max_dim: int = DEFAULT_MAX_DIM,
) -> list[float]:
    """Eigenvalues (descending) of the block density matrix, brute force.

    Builds the full chain with N bulk sites (default N = L), takes the
    partial trace onto bulk sites start..start+L-1 and diagonalizes.
    """
    if N is None:
        N = L
    if not (1 <= start and start + L - 1 <= N):
        raise ValueError(f"block of length {L} at start {start} does not fit N={N}")
    full = build_full_vbs(S, N)
    rho = reduced_density_matrix(full, start, L, max_dim=max_dim)
    return eigenspectrum(rho, max_dim=max_dim)


def correlator_reconstruction(
    state: StateVector, start: int, length: int, max_dim: int = DEFAULT_MAX_DIM
) -> np.ndarray:
    """Rebuild the block density matrix from multi-point correlators.

    Evaluates every correlator <G| prod_j |b_j><a_j| |G> as an explicit
    expectation value (one per matrix entry) instead of tracing out the
    environment; agreement with :func:`reduced_density_matrix` is the
    definitional cross-check.
    """
    if length < 1 or start < 0 or start + length > state.nsites:
        raise ValueError(
            f"block (start={start}, length={length}) is not a valid site range"
        )
    dims = state.dims
    d_left = math.prod(dims[:start])
    d_block = math.prod(dims[start : start + length])
    d_right = math.prod(dims[start + length :])
    require_dim(d_block, max_dim, what="correlator matrix")
    psi = state.to_dense(normalized=True).reshape((d_left, d_block, d_right), order="F")
    rho = np.empty((d_block, d_block))
    for a in range(d_block):
        bra = psi[:, a, :].ravel()
        for b in range(d_block):
            rho[a, b] = float(np.dot(psi[:, b, :].ravel(), bra))
    return rho


def partial_inner_identity_check(S: int, L: int, J: int, M: int) -> float:
    """Relative residual of the boundary-contraction identity.

    Contracting the full (N = L) VBS state with the boundary-pair state
    |J, M> must reproduce (-1)^(S-J+M) (S!)^2 times the degenerate block
    state for (J, -M). Both sides are built independently.
    """
    _check_bulk_spin(S)
    _check_sector(S, J, M)
    full = build_full_vbs(S, L)
    dims = full.dims
    d_end = dims[0]
    d_block = math.prod(dims[1:-1])
    psi = full.to_dense(normalized=False).reshape((d_end, d_block, d_end), order="F")
    pair = edge_pair_state(S, J, M).to_dense(normalized=False).reshape(
        (d_end, d_end), order="F"
    )
    lhs = np.einsum("abc,ac->b", psi, pair)
    block = build_block_vbs(S, L)
    rhs_state = apply_psi_dagger(block, J, -M)
    phase = -1.0 if (S - J + M) % 2 else 1.0
    rhs = phase * factorial(S) ** 2 * rhs_state.to_dense(normalized=False)
    return float(np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs))


def _apply_site_ladder(state: StateVector, raise_spin: bool) -> StateVector:
    """Total S^+ (or S^-) on the monomial basis, exactly.

    On a monomial with occupation (p, q), a^+ b acts with integer coefficient
    q (and b^+ a with p), shifting the twice-magnetization by +-2.
    """
    new_amps: dict[tuple[int, ...], Fraction] = {}
    for key, amp in state.amps.items():
        for site, (ts, tm) in enumerate(zip(state.spins, key)):
            coeff = (ts - tm) // 2 if raise_spin else (ts + tm) // 2
            if coeff == 0:
                continue
            new_key = list(key)
            new_key[site] += 2 if raise_spin else -2
            new_key = tuple(new_key)
            new_amps[new_key] = new_amps.get(new_key, Fraction(0)) + coeff * amp
    return StateVector(spins=state.spins, amps=new_amps, scale=state.scale)


def apply_spin_raising(state: StateVector) -> StateVector:
    """Total raising operator sum_j a_j^+ b_j, exact."""
    return _apply_site_ladder(state, raise_spin=True)


def apply_spin_lowering(state: StateVector) -> StateVector:
    """Total lowering operator sum_j b_j^+ a_j, exact."""
    return _apply_site_ladder(state, raise_spin=False)


def apply_spin_z(state: StateVector) -> StateVector:
    """Total S^z = sum_j (n_a - n_b)/2, exact (diagonal on monomials)."""
    new_amps = {
        key: amp * Fraction(sum(key), 2) for key, amp in state.amps.items()
    }
    return StateVector(spins=state.spins, amps=new_amps, scale=state.scale)


def linear_combine(
    u: StateVector, v: StateVector, cu: Fraction | int, cv: Fraction | int
) -> StateVector:
    """cu*u + cv*v exactly; the two scales must share a radical."""
    if u.spins != v.spins:
        raise ValueError("cannot combine states over different site spins")
    ratio = _sqrt_exact(v.scale.square / u.scale.square)
    if ratio is None:
        raise ValueError("cannot combine states with incompatible scale radicals")
    shift = Fraction(cv) * ratio * (v.scale.sign * u.scale.sign)
    amps = {key: Fraction(cu) * amp for key, amp in u.amps.items()}
    for key, amp in v.amps.items():
        amps[key] = amps.get(key, Fraction(0)) + shift * amp
    return StateVector(spins=u.spins, amps=amps, scale=u.scale)


def states_equal_exact(u: StateVector, v: StateVector) -> bool:
    """Exact equality of two states as vectors (not up to phase)."""
    if u.spins != v.spins:
        return False
    try:
        diff = linear_combine(u, v, 1, -1)
    except ValueError:
        return False
    return not diff.amps


def total_spin_checks(
    state: StateVector, J: int | None = None, M: int | None = None
) -> dict[str, float]:
    """Relative residuals of the edge quantum numbers of a degenerate state.

    Verifies (S^z_tot - M)|v> = 0 and (S^2_tot - J(J+1))|v> = 0, with
    S^2 = S^- S^+ + S^z(S^z + 1), all in exact arithmetic; the residual
    norms are converted to floats only for reporting.
    """
    if J is None or M is None:
        if state.sector is None:
            raise ValueError("state carries no (J, M) tag; pass J and M explicitly")
        J, M = state.sector
    norm = math.sqrt(float(state.norm_square_exact()))
    if norm == 0:
        raise ValueError("zero state")

    z_diff = linear_combine(apply_spin_z(state), state, 1, -Fraction(M))
    sz_residual = math.sqrt(float(z_diff.norm_square_exact())) / norm

    casimir = apply_spin_lowering(apply_spin_raising(state))
    z_part = apply_spin_z(state)
    casimir = linear_combine(casimir, apply_spin_z(z_part), 1, 1)
    casimir = linear_combine(casimir, z_part, 1, 1)
    c_diff = linear_combine(casimir, state, 1, -Fraction(J * (J + 1)))
    casimir_residual = math.sqrt(float(c_diff.norm_square_exact())) / norm
    return {"sz_residual": sz_residual, "casimir_residual": casimir_residual}


def ladder_residual(lower: StateVector, upper: StateVector) -> float:
    """Relative residual of S^+|J,M> = sqrt((J-M)(J+M+1)) |J,M+1>.

    Phase-sensitive on purpose: it pins the relative phases of the (J, M)
    family produced by :func:`apply_psi_dagger`.
    """
    if lower.sector is None or upper.sector is None:
        raise ValueError("both states must carry (J, M) tags")
    J, M = lower.sector
    J2, M2 = upper.sector
    if J2 != J or M2 != M + 1:
        raise ValueError(f"expected sectors (J,M) and (J,M+1), got {lower.sector} and {upper.sector}")
    raised = apply_spin_raising(lower)
    factor = SignedSqrtRational(1, Fraction((J - M) * (J + M + 1)))
    target = StateVector(
        spins=upper.spins, amps=dict(upper.amps), scale=upper.scale * factor
    )
    diff = linear_combine(raised, target, 1, -1)
    scale_norm = math.sqrt(float(target.norm_square_exact()))
    return math.sqrt(float(diff.norm_square_exact())) / scale_norm
