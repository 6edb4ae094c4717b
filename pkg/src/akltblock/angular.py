"""Exact angular-momentum coupling coefficients.

Spins enter in the twice-integer convention: a (possibly half-integer)
angular momentum j is passed as the plain integer 2j, and a magnetization m
as 2m, so every quantum number stays exactly representable. Coefficients are
returned as :class:`SignedSqrtRational` values, i.e. ``sign * sqrt(square)``
with a rational ``square``; products and squares of such values are exact.
Phases follow the Condon-Shortley convention (the stretched-state coefficient
is +1 and lowering never introduces signs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "factorial",
    "SignedSqrtRational",
    "three_j_zero",
    "clebsch_gordan",
    "wigner_3j",
]


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    """Exact factorial of a non-negative integer (arbitrary precision)."""
    if n < 0:
        raise ValueError(f"factorial requires n >= 0, got {n}")
    return math.factorial(n)


def _tfact(twice: int) -> int:
    """Factorial of twice/2. ``twice`` must be an even non-negative integer."""
    if twice < 0 or twice % 2:
        raise ValueError(f"expected an even non-negative twice-value, got {twice}")
    return factorial(twice // 2)


def _sqrt_exact(q: Fraction) -> Fraction | None:
    """Square root of a non-negative rational if it is rational, else None."""
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class SignedSqrtRational:
    """Exact value ``sign * sqrt(square)`` with ``square`` a rational >= 0.

    Closed under multiplication; squaring gives back a plain Fraction.
    Addition is supported when both operands lie on a common radical (the
    ratio of their squares is the square of a rational), which covers every
    sum this package forms; adding incompatible radicals raises ValueError
    rather than silently rounding.
    """

    sign: int
    square: Fraction

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign}")
        square = Fraction(self.square)
        if square < 0:
            raise ValueError("square must be non-negative")
        if (self.sign == 0) != (square == 0):
            raise ValueError("square == 0 exactly when sign == 0")
        object.__setattr__(self, "square", square)

    @classmethod
    def zero(cls) -> "SignedSqrtRational":
        return cls(0, Fraction(0))

    @classmethod
    def one(cls) -> "SignedSqrtRational":
        return cls(1, Fraction(1))

    @classmethod
    def from_rational(cls, value: Fraction | int) -> "SignedSqrtRational":
        q = Fraction(value)
        if q == 0:
            return cls.zero()
        return cls(1 if q > 0 else -1, q * q)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SignedSqrtRational.from_rational(other)
        elif not isinstance(other, SignedSqrtRational):
            return NotImplemented
        return SignedSqrtRational(self.sign * other.sign, self.square * other.square)

    __rmul__ = __mul__

    def __neg__(self) -> "SignedSqrtRational":
        return SignedSqrtRational(-self.sign, self.square)

    def __add__(self, other):
        if not isinstance(other, SignedSqrtRational):
            return NotImplemented
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        ratio = _sqrt_exact(other.square / self.square)
        if ratio is None:
            raise ValueError("cannot add square roots over incompatible radicals exactly")
        coeff = self.sign + other.sign * ratio  # value = coeff * sqrt(self.square)
        if coeff == 0:
            return SignedSqrtRational.zero()
        return SignedSqrtRational(1 if coeff > 0 else -1, coeff * coeff * self.square)

    def __sub__(self, other):
        if not isinstance(other, SignedSqrtRational):
            return NotImplemented
        return self + (-other)

    def __bool__(self) -> bool:
        return self.sign != 0

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.sqrt(self.square.numerator / self.square.denominator)
        except OverflowError:
            # factorial ratios can exceed float range even when the root does not
            log_sq = math.log(self.square.numerator) - math.log(self.square.denominator)
            return self.sign * math.exp(log_sq / 2.0)


def _zero() -> SignedSqrtRational:
    return SignedSqrtRational.zero()


def three_j_zero(l1: int, l2: int, l3: int) -> SignedSqrtRational:
    """Wigner 3j symbol (l1 l2 l3; 0 0 0) for integer orders, exact.

    Nonzero only when l1+l2+l3 = 2g is even and the triangle inequality
    holds; in that case the value is

        (-1)^g * sqrt[(2g-2l1)!(2g-2l2)!(2g-2l3)!/(2g+1)!]
               * g!/((g-l1)!(g-l2)!(g-l3)!).

    Any invalid triple (including negative orders) yields exact zero.
    """
    if min(l1, l2, l3) < 0:
        return _zero()
    total = l1 + l2 + l3
    if total % 2 or not abs(l1 - l2) <= l3 <= l1 + l2:
        return _zero()
    g = total // 2
    under_root = Fraction(
        factorial(2 * g - 2 * l1) * factorial(2 * g - 2 * l2) * factorial(2 * g - 2 * l3),
        factorial(2 * g + 1),
    )
    rational = Fraction(
        factorial(g), factorial(g - l1) * factorial(g - l2) * factorial(g - l3)
    )
    return SignedSqrtRational(-1 if g % 2 else 1, under_root * rational * rational)


def _check_jm(tj: int, tm: int, name: str) -> None:
    if tj < 0:
        raise ValueError(f"negative twice-spin {name}={tj}")
    if (tj + tm) % 2:
        raise ValueError(
            f"parity mismatch for {name}: twice-spin {tj} and twice-magnetization {tm}"
        )
    if abs(tm) > tj:
        raise ValueError(f"|m| exceeds j for {name}: 2m={tm}, 2j={tj}")


def _triangle_ok(tj1: int, tj2: int, tj3: int) -> bool:
    return abs(tj1 - tj2) <= tj3 <= tj1 + tj2 and (tj1 + tj2 + tj3) % 2 == 0


def _racah_sum(tj1: int, tm1: int, tj2: int, tm2: int, tj: int) -> Fraction:
    """Alternating k-sum of the van der Waerden closed form, exact.

    The full Clebsch-Gordan coefficient is this rational sum times the square
    root of ``_coupling_prefactor_square * (j1-m1)!(j1+m1)!(j2-m2)!(j2+m2)!``.
    """
    kmin = max(0, (tj2 - tj - tm1) // 2, (tj1 - tj + tm2) // 2)
    kmax = min((tj1 + tj2 - tj) // 2, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        tk = 2 * k
        den = (
            factorial(k)
            * _tfact(tj1 + tj2 - tj - tk)
            * _tfact(tj1 - tm1 - tk)
            * _tfact(tj2 + tm2 - tk)
            * _tfact(tj - tj2 + tm1 + tk)
            * _tfact(tj - tj1 - tm2 + tk)
        )
        total += Fraction(-1 if k % 2 else 1, den)
    return total


def _coupling_prefactor_square(tj1: int, tj2: int, tj: int, tm: int) -> Fraction:
    """(2J+1) * Delta(j1 j2 J) * (J+M)!(J-M)!, exact.

    This is the part of the squared Clebsch-Gordan coefficient that does not
    depend on m1, m2 — the common radical of a fixed (J, M) coupling family.
    """
    delta = Fraction(
        _tfact(tj1 + tj2 - tj) * _tfact(tj1 - tj2 + tj) * _tfact(-tj1 + tj2 + tj),
        _tfact(tj1 + tj2 + tj + 2),
    )
    return (tj + 1) * delta * _tfact(tj + tm) * _tfact(tj - tm)


def clebsch_gordan(
    tj1: int, tm1: int, tj2: int, tm2: int, tj: int, tm: int
) -> SignedSqrtRational:
    """Clebsch-Gordan coefficient (J,M | j1,m1; j2,m2), exact.

    All six arguments are twice-values. Returns exact zero when M != m1+m2
    or when (j1, j2, J) violates the triangle rule; raises ValueError on
    parity mismatches, |m| > j, or negative twice-spins.
    """
    _check_jm(tj1, tm1, "j1")
    _check_jm(tj2, tm2, "j2")
    _check_jm(tj, tm, "J")
    if tm1 + tm2 != tm or not _triangle_ok(tj1, tj2, tj):
        return _zero()
    racah = _racah_sum(tj1, tm1, tj2, tm2, tj)
    if racah == 0:
        return _zero()
    mfacts = (
        _tfact(tj1 - tm1) * _tfact(tj1 + tm1) * _tfact(tj2 - tm2) * _tfact(tj2 + tm2)
    )
    square = racah * racah * _coupling_prefactor_square(tj1, tj2, tj, tm) * mfacts
    return SignedSqrtRational(1 if racah > 0 else -1, square)


def wigner_3j(
    tj1: int, tj2: int, tj3: int, tm1: int, tm2: int, tm3: int
) -> SignedSqrtRational:
    """General Wigner 3j symbol (twice-values), via the phase relation

    (j1 j2 j3; m1 m2 m3) = (-1)^(j1-j2-m3) (J,-m3|j1,m1;j2,m2) / sqrt(2j3+1).
    """
    _check_jm(tj1, tm1, "j1")
    _check_jm(tj2, tm2, "j2")
    _check_jm(tj3, tm3, "j3")
    if tm1 + tm2 + tm3 != 0 or not _triangle_ok(tj1, tj2, tj3):
        return _zero()
    cg = clebsch_gordan(tj1, tm1, tj2, tm2, tj3, -tm3)
    if cg.sign == 0:
        return _zero()
    phase = -1 if ((tj1 - tj2 - tm3) // 2) % 2 else 1
    return SignedSqrtRational(phase * cg.sign, cg.square / (tj3 + 1))
