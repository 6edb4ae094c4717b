"""Entanglement entropies of a block spectrum (natural logarithms).

von Neumann: -sum_J (2J+1) Lambda(J) ln Lambda(J), with 0 ln 0 := 0.
Renyi:       (1/(1-alpha)) ln sum_J (2J+1) Lambda(J)^alpha, alpha = 1
             dispatching to the von Neumann value.

Exact rational eigenvalues are converted to floats at the very last step
(round-to-nearest, relative error below 2^-52 per entry); both entropies
saturate at 2 ln(S+1) as the block grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .spectrum import BlockSpectrum, saturation_value

__all__ = ["InvalidSpectrumError", "EntropyReport", "von_neumann", "renyi", "entropy_report"]

_TRACE_TOL = 1e-12
_NEGATIVE_TOL = -1e-10


class InvalidSpectrumError(ValueError):
    """The spectrum does not look like a density-matrix spectrum."""


def _weights(spec: BlockSpectrum) -> list[tuple[float, int]]:
    """Validate the spectrum and return (eigenvalue, multiplicity) floats.

    Exact entries must sum to exactly 1 and be non-negative; float entries
    must sum to 1 within 1e-12 and may dip to -1e-10 (oracle zero padding),
    in which case they are clamped to zero.
    """
    exact = all(isinstance(value, (Fraction, int)) for _, value, _ in spec.entries)
    weights: list[tuple[float, int]] = []
    for _, value, mult in spec.entries:
        if exact:
            if value < 0:
                raise InvalidSpectrumError(f"negative exact eigenvalue {value}")
        elif value < _NEGATIVE_TOL:
            raise InvalidSpectrumError(f"eigenvalue {value} below {_NEGATIVE_TOL}")
        weights.append((max(float(value), 0.0), mult))
    trace = spec.trace()
    if exact:
        if trace != 1:
            raise InvalidSpectrumError(f"exact spectrum has trace {trace}, expected 1")
    elif abs(float(trace) - 1.0) > _TRACE_TOL:
        raise InvalidSpectrumError(f"spectrum trace {float(trace)} is not 1 within {_TRACE_TOL}")
    return weights


def von_neumann(spec: BlockSpectrum) -> float:
    """von Neumann entropy in nats."""
    total = 0.0
    for value, mult in _weights(spec):
        if value > 0.0:
            total -= mult * value * math.log(value)
    return total


def renyi(spec: BlockSpectrum, alpha: float) -> float:
    """Renyi entropy of order alpha in nats (alpha = 1 gives von Neumann)."""
    if not alpha > 0:
        raise ValueError(f"Renyi order must be positive, got {alpha!r}")
    if alpha == 1:
        return von_neumann(spec)
    power_sum = 0.0
    for value, mult in _weights(spec):
        if value > 0.0:
            power_sum += mult * value**alpha
    return math.log(power_sum) / (1.0 - alpha)


@dataclass(frozen=True)
class EntropyReport:
    """Entropies of one (S, L) block with the saturation diagnostic.

    ``renyi`` lists (alpha, value) pairs; ``saturation_gap`` is
    2 ln(S+1) - von_neumann, which shrinks like |lambda(1,S)|^(L-1).
    """

    S: int
    L: int
    von_neumann: float
    renyi: tuple[tuple[float, float], ...]
    saturation_gap: float


def entropy_report(spec: BlockSpectrum, alphas: tuple[float, ...] = (0.5, 2.0)) -> EntropyReport:
    """Bundle von Neumann and Renyi entropies for a computed spectrum."""
    value = von_neumann(spec)
    return EntropyReport(
        S=spec.S,
        L=spec.L,
        von_neumann=value,
        renyi=tuple((float(a), renyi(spec, a)) for a in alphas),
        saturation_gap=saturation_value(spec.S) - value,
    )
