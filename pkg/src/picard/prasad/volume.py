"""Covolumes of principal arithmetic lattices in SU(2,1) and the bounds built on them.

Haar measure is normalized so that the compact dual P^2 has Euler
characteristic 3.  For a principal lattice with parahoric data K_f,

    mu = -L_k(-2)/48 * prod_p lambda_p,    chi = 3 mu,    vol = 8 pi^2 chi / 3.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import ValidationError
from ..lfunc import l_minus_two, l_value_upper, zeta_upper
from ..quadfield import (
    PrimeSplitting,
    QuadField,
    class_number,
    is_prime,
    make_field,
    ramified_primes,
    splitting,
)


class ParahoricChoice(enum.Enum):
    V0 = "v0"
    V1 = "v1"
    V2 = "v2"
    IWAHORI = "iwahori"

    def __str__(self):
        return self.value


def lambda_factor(p: int, s: PrimeSplitting, c: ParahoricChoice) -> int:
    """Local factor lambda_p of the volume formula."""
    if c is ParahoricChoice.V2 and s is not PrimeSplitting.SPLIT:
        raise ValidationError(f"V2 only exists at split primes; {p} is {s}")
    if c is ParahoricChoice.IWAHORI:
        if s is PrimeSplitting.SPLIT:
            return (p * p + p + 1) * (p + 1)
        if s is PrimeSplitting.INERT:
            return p**3 + 1
        return p + 1
    if c is ParahoricChoice.V1 and s is PrimeSplitting.INERT:
        return p * p - p + 1
    return 1


@dataclass(frozen=True)
class LatticeDatum:
    """A principal arithmetic lattice: the field plus non-default parahoric choices.

    Primes missing from ``choices`` carry the hyperspecial (or, at ramified
    primes, the v0) subgroup.
    """

    field: QuadField
    choices: tuple = field(default=())

    def __post_init__(self):
        items = dict(self.choices)
        for p, c in items.items():
            if not is_prime(p):
                raise ValidationError(f"parahoric choice at non-prime {p}")
            if not isinstance(c, ParahoricChoice):
                raise ValidationError(f"bad parahoric choice {c!r}")
            if c is ParahoricChoice.V2 and splitting(self.field, p) is not PrimeSplitting.SPLIT:
                raise ValidationError(f"V2 at {p}, which does not split in {self.field}")
        norm = tuple(sorted((p, c) for p, c in items.items() if c is not ParahoricChoice.V0))
        object.__setattr__(self, "choices", norm)

    @classmethod
    def make(cls, d: int, choices=None) -> "LatticeDatum":
        return cls(make_field(d), tuple((choices or {}).items()))

    @property
    def iwahori_set(self) -> frozenset:
        return frozenset(p for p, c in self.choices if c is ParahoricChoice.IWAHORI)

    def lambdas(self) -> dict[int, int]:
        return {p: lambda_factor(p, splitting(self.field, p), c) for p, c in self.choices}

    def lambda_product(self) -> int:
        return math.prod(self.lambdas().values())

    @property
    def is_sister_of_standard(self) -> bool:
        """Only ramified-prime choices, so the volume equals the standard lattice's."""
        ram = ramified_primes(self.field)
        return all(p in ram and c is ParahoricChoice.V1 for p, c in self.choices)

    def label(self) -> str:
        if not self.choices:
            return "default"
        return ", ".join(f"{c}@{p}" for p, c in self.choices)


def covolume(datum: LatticeDatum) -> Fraction:
    return -l_minus_two(datum.field) / 48 * datum.lambda_product()


def euler_characteristic(datum: LatticeDatum) -> Fraction:
    return 3 * covolume(datum)


@dataclass(frozen=True, order=True)
class PiSquaredVolume:
    """The real number ``coefficient * pi^2``."""

    coefficient: Fraction

    def __add__(self, other):
        return PiSquaredVolume(self.coefficient + other.coefficient)

    def __float__(self):
        return float(self.coefficient) * math.pi**2

    def __str__(self):
        return f"{self.coefficient} * pi^2"


def volume_from_chi(chi) -> PiSquaredVolume:
    chi = Fraction(chi)
    if chi <= 0:
        raise ValidationError(f"Euler characteristic must be positive, got {chi}")
    return PiSquaredVolume(8 * chi / 3)


def normalizer_index_bound(datum: LatticeDatum) -> int:
    return 3 ** (1 + len(datum.iwahori_set)) * class_number(datum.field).h3


# Constants quoted for the two fields excluded from the general bound.
QUOTED_MIN_COVOLUME = {1: Fraction(1, 32), 3: Fraction(1, 216)}


@dataclass(frozen=True)
class CovolumeBound:
    value: Fraction
    quoted: bool
    formula_value: Fraction

    def __str__(self):
        tag = " (quoted constant)" if self.quoted else ""
        return f"{self.value}{tag}"


def min_covolume_lower_bound(field: QuadField) -> CovolumeBound:
    """Lower bound for the covolume of a maximal lattice over ``field``.

    For d not in {1, 3} this is |d_k|/1080.  For d in {1, 3} the quoted
    constants 1/32 and 1/216 are returned and flagged; ``formula_value`` then
    carries -L_k(-2)/(144 h_k), the value the preceding estimate actually gives.
    """
    formula = -l_minus_two(field) / (144 * class_number(field).h)
    if field.d in QUOTED_MIN_COVOLUME:
        return CovolumeBound(QUOTED_MIN_COVOLUME[field.d], True, formula)
    return CovolumeBound(Fraction(field.f, 1080), False, formula)


def brauer_siegel_bound(field: QuadField, n: int = 3, terms: int = 2000) -> float:
    """Upper bound h_k <= w n(n-1)(n-1)!/(2 pi)^n |d_k|^{n/2} zeta(n) L_k(n)."""
    if n < 2:
        raise ValidationError("n must be at least 2")
    const = field.w * n * (n - 1) * math.factorial(n - 1) / (2 * math.pi) ** n
    return const * field.f ** (n / 2) * zeta_upper(n, terms) * l_value_upper(field, n, terms)


@dataclass(frozen=True)
class SisterCount:
    count: int
    exact: bool


def sister_count(field: QuadField) -> SisterCount:
    """2^|Ram(k)| minimal-covolume principal lattices; exact when h_k = 1."""
    return SisterCount(2 ** len(ramified_primes(field)), class_number(field).h == 1)
