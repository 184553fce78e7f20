"""Special values of the quadratic L-function L_k(s) = L(s, chi_{d_k}).

``l_minus_two`` is exact: L(-2, chi) = -B_{3,chi}/3 with the generalized
Bernoulli number B_{3,chi} = f^2 * sum_{a=1}^{f} chi(a) B_3(a/f).  The
functional equation

    L_k(-2) = -|d_k|^{5/2} / (2 pi^3) * L_k(3)

gives an independent floating point value with a certified truncation error,
used only as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ValidationError
from .quadfield import QuadField

ZETA3_UPPER = Fraction(5, 4)


def bernoulli3(x: Fraction) -> Fraction:
    return x**3 - Fraction(3, 2) * x**2 + Fraction(1, 2) * x


def character_table(field: QuadField) -> list[int]:
    """chi(a) for a = 0 .. f-1."""
    return [field.chi(a) for a in range(field.f)]


def bernoulli3_chi(field: QuadField) -> Fraction:
    f = field.f
    chi = character_table(field)
    s = sum((chi[a] * bernoulli3(Fraction(a, f)) for a in range(1, f)), Fraction(0))
    return f * f * s


def bernoulli3_chi_half(field: QuadField) -> Fraction:
    """Same as :func:`bernoulli3_chi`, summing only over a < f/2.

    Valid because chi is odd and B_3(1 - x) = -B_3(x).
    """
    f = field.f
    chi = character_table(field)
    s = sum((chi[a] * bernoulli3(Fraction(a, f)) for a in range(1, (f + 1) // 2)), Fraction(0))
    return 2 * f * f * s


def l_minus_two(field: QuadField) -> Fraction:
    return -bernoulli3_chi(field) / 3


def bernoulli1_chi(field: QuadField) -> Fraction:
    chi = character_table(field)
    return Fraction(sum(a * chi[a] for a in range(1, field.f)), field.f)


def class_number_analytic(field: QuadField) -> int:
    """Class number from h = w |B_{1,chi}| / 2 (independent of form counting)."""
    h = field.w * abs(bernoulli1_chi(field)) / 2
    if h.denominator != 1:
        raise ArithmeticError(f"non-integral analytic class number {h} for {field}")
    return int(h)


def _partial_sum(field: QuadField, s: int, terms: int) -> float:
    chi = np.array(character_table(field), dtype=np.float64)
    n = np.arange(1, terms + 1, dtype=np.float64)
    vals = chi[np.arange(1, terms + 1) % field.f] / n**s
    return math.fsum(vals[::-1])


def _tail(s: int, terms: int) -> float:
    # sum_{n > N} n^-s < integral_N^inf x^-s dx
    return terms ** (1 - s) / (s - 1)


@dataclass(frozen=True)
class LValueReport:
    exact: Fraction
    numeric: float
    tail_bound: float

    @property
    def agrees(self) -> bool:
        return abs(float(self.exact) - self.numeric) <= self.tail_bound


def l_minus_two_numeric(field: QuadField, terms: int = 100_000) -> LValueReport:
    if terms < field.f:
        raise ValidationError(f"need at least one character period ({field.f} terms), got {terms}")
    l3 = _partial_sum(field, 3, terms)
    scale = field.f**2.5 / (2 * math.pi**3)
    numeric = -scale * l3
    # truncation error plus a generous allowance for float rounding
    bound = scale * _tail(3, terms) + 1e-12 * max(1.0, abs(numeric))
    return LValueReport(exact=l_minus_two(field), numeric=numeric, tail_bound=bound)


def l_value_upper(field: QuadField, s: int, terms: int = 2000) -> float:
    """Certified upper bound for L_k(s), s >= 2."""
    if s < 2:
        raise ValidationError("s must be at least 2")
    return _partial_sum(field, s, max(terms, field.f)) + _tail(s, max(terms, field.f)) + 1e-12


def zeta_upper(s: int, terms: int = 2000) -> float:
    """Certified upper bound for zeta(s), s >= 2."""
    if s < 2:
        raise ValidationError("s must be at least 2")
    n = np.arange(1, terms + 1, dtype=np.float64)
    return math.fsum((1.0 / n**s)[::-1]) + _tail(s, terms) + 1e-12


def l_at_three_upper(field: QuadField, terms: int = 2000) -> float:
    return l_value_upper(field, 3, terms)
