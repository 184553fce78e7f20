"""Imaginary quadratic fields Q(sqrt(-d)).

Only the handful of invariants the volume formula needs: the fundamental
discriminant, the Kronecker character attached to it, splitting of rational
primes, and the class number (with its 3-primary part).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import ValidationError


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return False
        p += 2
    return True


def prime_divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def primes_up_to(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


@dataclass(frozen=True)
class QuadField:
    """The field k = Q(sqrt(-d)) for squarefree d >= 1.

    ``d_k`` is the fundamental discriminant, ``f = |d_k|`` the conductor of
    the attached quadratic character and ``w`` the number of roots of unity.
    """

    d: int
    d_k: int
    f: int
    w: int

    def chi(self, n: int) -> int:
        return kronecker(self.d_k, n)

    def __str__(self):
        return f"Q(sqrt(-{self.d}))"


def make_field(d: int) -> QuadField:
    if not isinstance(d, int) or isinstance(d, bool):
        raise ValidationError(f"d must be an integer, got {d!r}")
    if d < 1:
        raise ValidationError(f"d must be positive, got {d}")
    if not is_squarefree(d):
        raise ValidationError(f"d = {d} is not squarefree")
    d_k = -d if d % 4 == 3 else -4 * d
    w = {1: 4, 3: 6}.get(d, 2)
    return QuadField(d=d, d_k=d_k, f=-d_k, w=w)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), including the 2-adic and sign supplements."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # (a/2) is 0 for even a, +1 for a = +-1 mod 8, -1 for a = +-3 mod 8
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        n >>= v
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # now n odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


class PrimeSplitting(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"

    def __str__(self):
        return self.value


def splitting(field: QuadField, p: int) -> PrimeSplitting:
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    c = kronecker(field.d_k, p)
    if c == 0:
        return PrimeSplitting.RAMIFIED
    return PrimeSplitting.SPLIT if c == 1 else PrimeSplitting.INERT


def ramified_primes(field: QuadField) -> frozenset[int]:
    return frozenset(prime_divisors(field.d_k))


@dataclass(frozen=True)
class ClassData:
    h: int
    h3: int


def reduced_forms(disc: int) -> list[tuple[int, int, int]]:
    """Reduced primitive positive definite forms (a, b, c) of discriminant ``disc``.

    Reduced means |b| <= a <= c, with b >= 0 whenever |b| == a or a == c.
    """
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValidationError(f"{disc} is not a negative discriminant")
    forms = []
    amax = math.isqrt(-disc // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            forms.append((a, b, c))
    return forms


@lru_cache(maxsize=None)
def _class_number(d_k: int) -> int:
    return len(reduced_forms(d_k))


def class_number(field: QuadField) -> ClassData:
    h = _class_number(field.d_k)
    h3 = 1
    while h % (3 * h3) == 0:
        h3 *= 3
    return ClassData(h=h, h3=h3)
