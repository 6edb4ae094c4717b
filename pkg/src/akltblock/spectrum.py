"""Block entanglement spectrum of the spin-S valence-bond-solid chain, exact.

The reduced density matrix of a contiguous length-L block cut out of the
(open, boundary-spin-S/2) VBS chain has exactly (S+1)^2 nonzero eigenvalues:
one value Lambda(J) per total edge-spin sector J = 0..S, each with
multiplicity 2J+1. Two independent exact routes are implemented:

* ``eigenvalue_recurrence`` — a multipole expansion whose l-th channel is
  damped by lambda(l,S)^(L-1), with polynomial weights I_l built from a
  three-term recurrence;
* ``eigenvalue_closed`` — a closed triple sum over squared 3j symbols.

Everything here is big-rational arithmetic; no floats enter until entropy
evaluation. Norm-squares of the underlying (unnormalized) VBS states are
also exposed since the eigenvalues are rescaled norms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .angular import factorial, three_j_zero

__all__ = [
    "IPolynomial",
    "BlockSpectrum",
    "lambda_coeff",
    "legendre_expansion_residual",
    "i_polynomial",
    "eigenvalue_recurrence",
    "eigenvalue_closed",
    "vbs_norm",
    "degenerate_norm",
    "spin1_closed",
    "block_spectrum",
    "flat_limit_bound",
    "saturation_value",
]

EXACT_METHODS = ("recurrence", "closed_form")


def _check_spin(S: int, minimum: int = 1) -> None:
    if not isinstance(S, int) or isinstance(S, bool) or S < minimum:
        raise ValueError(f"bulk spin must be an integer >= {minimum}, got {S!r}")


def _check_sector(S: int, J: int) -> None:
    if not isinstance(J, int) or not 0 <= J <= S:
        raise ValueError(f"edge-spin sector J must satisfy 0 <= J <= S={S}, got {J!r}")


def _check_length(L: int, minimum: int = 1) -> None:
    if not isinstance(L, int) or L < minimum:
        raise ValueError(f"block length must be an integer >= {minimum}, got {L!r}")


def lambda_coeff(l: int, S: int) -> Fraction:
    """Multipole damping coefficient lambda(l, S), exact.

    lambda(l, S) = (-1)^l S!(S+1)! / ((S-l)!(S+l+1)!); successive orders obey
    lambda(l+1)/lambda(l) = -(S-l)/(S+l+2), so the magnitude strictly decays
    with l. lambda(0, S) = 1 for every S.
    """
    _check_spin(S, minimum=0)
    if not 0 <= l <= S:
        raise ValueError(f"multipole order must satisfy 0 <= l <= S={S}, got l={l}")
    value = Fraction(
        factorial(S) * factorial(S + 1), factorial(S - l) * factorial(S + l + 1)
    )
    return -value if l % 2 else value


def legendre_expansion_residual(S: int, t: float) -> float:
    """Float residual of the bond-kernel Legendre expansion at cos(angle) = t.

    Evaluates [ (1-t)/2 ]^S - (1/(S+1)) sum_{l=0}^{S} (2l+1) lambda(l,S) P_l(t)
    with P_l from the standard three-term recurrence. This is a numerical
    identity check; the exact pipeline never needs it.
    """
    _check_spin(S)
    lhs = (0.5 * (1.0 - t)) ** S
    acc = 0.0
    p_prev, p_cur = 0.0, 1.0  # P_{l-1}, P_l starting at l = 0
    for l in range(S + 1):
        acc += (2 * l + 1) * float(lambda_coeff(l, S)) * p_cur
        p_prev, p_cur = p_cur, ((2 * l + 1) * t * p_cur - l * p_prev) / (l + 1)
    return lhs - acc / (S + 1)


@dataclass(frozen=True)
class IPolynomial:
    """Weight polynomial I_l(x) of the recurrence route, exact coefficients.

    ``coefficients[k]`` is the coefficient of x^k; the degree equals l.
    Instances are callable and evaluate by Horner's rule (exact when called
    with a Fraction).
    """

    S: int
    l: int
    coefficients: tuple[Fraction, ...]

    def __call__(self, x: Fraction | float):
        acc: Fraction | float = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


@lru_cache(maxsize=None)
def i_polynomial(l: int, S: int) -> IPolynomial:
    """Build I_l for bulk spin S by the three-term recurrence, exactly.

    Seeds are I_0 = 1 and I_1 = x/((S/2)+1)^2; then

        I_{l+1} = (2l+1)/(S+l+2)^2 * (4x/(l+1) + l) * I_l
                  - l/(l+1) * ((S-l+1)/(S+l+2))^2 * I_{l-1}.
    """
    _check_spin(S)
    if not 0 <= l <= S:
        raise ValueError(f"I_l is only needed for 0 <= l <= S={S}, got l={l}")
    prev = [Fraction(1)]  # I_0
    if l == 0:
        return IPolynomial(S, 0, tuple(prev))
    cur = [Fraction(0), Fraction(4, (S + 2) ** 2)]  # I_1 = 4x/(S+2)^2
    for k in range(1, l):
        lead = Fraction(2 * k + 1, (S + k + 2) ** 2)
        nxt = [Fraction(0)] * (k + 2)
        for power, coeff in enumerate(cur):
            nxt[power + 1] += lead * Fraction(4, k + 1) * coeff
            nxt[power] += lead * k * coeff
        back = Fraction(k, k + 1) * Fraction((S - k + 1) ** 2, (S + k + 2) ** 2)
        for power, coeff in enumerate(prev):
            nxt[power] -= back * coeff
        prev, cur = cur, nxt
    return IPolynomial(S, l, tuple(cur))


def _x_argument(J: int, S: int) -> Fraction:
    # x(J) = J(J+1)/2 - (S/2)(S/2 + 1)
    return Fraction(J * (J + 1), 2) - Fraction(S * (S + 2), 4)


def eigenvalue_recurrence(S: int, L: int, J: int) -> Fraction:
    """Block eigenvalue Lambda(J) via the multipole recurrence route, exact.

    Lambda(J) = (1/(S+1)^2) sum_{l=0}^{S} (2l+1) lambda(l,S)^(L-1) I_l(x(J))
    with x(J) = J(J+1)/2 - (S/2)(S/2+1).
    """
    _check_spin(S)
    _check_length(L)
    _check_sector(S, J)
    x = _x_argument(J, S)
    total = Fraction(0)
    for l in range(S + 1):
        total += (2 * l + 1) * lambda_coeff(l, S) ** (L - 1) * i_polynomial(l, S)(x)
    return total / (S + 1) ** 2


def _edge_sum(S: int, L: int, J: int) -> Fraction:
    """Triple sum over (l1, lL, l) shared by the closed form and the norms."""
    total = Fraction(0)
    for l1 in range(S + 1):
        damped = (2 * l1 + 1) * lambda_coeff(l1, S) ** (L - 1)
        for lL in range(S - J + 1):
            pair = damped * (2 * lL + 1) * lambda_coeff(lL, S - J)
            for l in range(J + 1):
                w = three_j_zero(l1, lL, l)
                if w.sign == 0:
                    continue
                total += pair * (2 * l + 1) * lambda_coeff(l, J) ** 2 * w.square
    return total


def eigenvalue_closed(S: int, L: int, J: int) -> Fraction:
    """Block eigenvalue Lambda(J) via the closed triple-sum route, exact.

    Independent of ``eigenvalue_recurrence``: only squared 3j symbols at zero
    projections enter, so the whole sum stays rational.
    """
    _check_spin(S)
    _check_length(L)
    _check_sector(S, J)
    prefactor = Fraction(
        factorial(2 * J + 1) * factorial(S) ** 2,
        factorial(S + J + 1) * factorial(S - J + 1) * factorial(J + 1) ** 2,
    )
    return prefactor * _edge_sum(S, L, J)


def vbs_norm(S: int, N: int) -> Fraction:
    """Norm-square of the raw full-chain VBS state, exact.

    The chain has N bulk spin-S sites plus one spin-S/2 site at each end
    (N+1 valence bonds); the norm-square is [(2S+1)!/(S+1)]^N * S!(S+1)!.
    """
    _check_spin(S)
    if not isinstance(N, int) or N < 0:
        raise ValueError(f"bulk site count must be an integer >= 0, got {N!r}")
    return Fraction(factorial(2 * S + 1), S + 1) ** N * (factorial(S) * factorial(S + 1))


def degenerate_norm(S: int, L: int, J: int) -> Fraction:
    """Norm-square of the degenerate block VBS state for sector (J, M), exact.

    The value is independent of M. It rescales to the block eigenvalue:
    Lambda(J) = [(S+1)/(2S+1)!]^L * (S!S!/(S+1)) * degenerate_norm(S, L, J).
    """
    _check_spin(S)
    _check_length(L, minimum=2)
    _check_sector(S, J)
    prefactor = Fraction(
        factorial(2 * J + 1) * factorial(2 * S + 1) ** L,
        (S + 1) ** (L - 1)
        * factorial(S + J + 1)
        * factorial(S - J + 1)
        * factorial(J + 1) ** 2,
    )
    return prefactor * _edge_sum(S, L, J)


def spin1_closed(L: int, J: int) -> Fraction:
    """Spin-1 eigenvalues in closed form, exact.

    Lambda(0) = (1 + 3(-1/3)^L)/4 and Lambda(1) = (1 - (-1/3)^L)/4 (the
    latter triply degenerate).
    """
    _check_length(L)
    if J not in (0, 1):
        raise ValueError(f"spin-1 sectors are J=0 and J=1, got {J!r}")
    damping = Fraction(-1, 3) ** L
    if J == 0:
        return (1 + 3 * damping) / 4
    return (1 - damping) / 4


def flat_limit_bound(S: int, J: int) -> Fraction:
    """Constant K(S, J) of the large-L deviation bound, exact.

    |Lambda(J) - 1/(S+1)^2| <= K(S,J) * |lambda(1,S)|^(L-1) with
    K(S,J) = (1/(S+1)^2) sum_{l=1}^{S} (2l+1) |I_l(x(J))|.
    """
    _check_spin(S)
    _check_sector(S, J)
    x = _x_argument(J, S)
    total = Fraction(0)
    for l in range(1, S + 1):
        total += (2 * l + 1) * abs(i_polynomial(l, S)(x))
    return total / (S + 1) ** 2


@dataclass(frozen=True)
class BlockSpectrum:
    """Eigenvalues of the block density matrix grouped by edge-spin sector.

    ``entries`` holds (J, eigenvalue, multiplicity) with multiplicity 2J+1;
    eigenvalues are Fractions for the exact methods and floats for oracle
    methods. ``method`` names the route that produced the values.
    """

    S: int
    L: int
    entries: tuple[tuple[int, Fraction | float, int], ...]
    method: str

    def trace(self):
        return sum(mult * value for _, value, mult in self.entries)

    def eigenvalues(self) -> list:
        """All eigenvalues expanded with multiplicity, descending."""
        out = []
        for _, value, mult in self.entries:
            out.extend([value] * mult)
        return sorted(out, reverse=True)


def block_spectrum(S: int, L: int, method: str = "recurrence") -> BlockSpectrum:
    """Full exact spectrum (all sectors J = 0..S) by the named exact route."""
    if method == "recurrence":
        evaluate = eigenvalue_recurrence
    elif method == "closed_form":
        evaluate = eigenvalue_closed
    else:
        raise ValueError(
            f"method must be one of {EXACT_METHODS} for exact spectra, got {method!r}"
        )
    entries = tuple((J, evaluate(S, L, J), 2 * J + 1) for J in range(S + 1))
    return BlockSpectrum(S=S, L=L, entries=entries, method=method)


def saturation_value(S: int) -> float:
    """Large-L entropy plateau 2 ln(S+1) in nats."""
    _check_spin(S)
    return 2.0 * math.log(S + 1)
