"""Smith normal form over the integers and finitely generated abelian groups."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


def smith_diagonal(matrix) -> list[int]:
    """Nonzero diagonal entries d1 | d2 | ... of the Smith normal form of ``matrix``."""
    a = [list(map(int, row)) for row in matrix if any(row)]
    diag: list[int] = []
    if not a:
        return diag
    ncols = len(a[0])
    t = 0
    while a:
        # pivot: smallest nonzero entry in absolute value
        best = None
        for i, row in enumerate(a):
            for j in range(t, ncols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[0], a[i] = a[i], a[0]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[0][t]
            done = True
            # clear the pivot column
            for row in a[1:]:
                q = row[t] // p
                if q:
                    for k in range(t, ncols):
                        row[k] -= q * a[0][k]
                if row[t]:
                    done = False
            # clear the pivot row
            for k in range(t + 1, ncols):
                q = a[0][k] // p
                if q:
                    for row in a:
                        row[k] -= q * row[t]
                if a[0][k]:
                    done = False
            if done:
                break
            # a remainder is smaller than the pivot; move it into place
            best = None
            for i, row in enumerate(a):
                if i and row[t] and (best is None or abs(row[t]) < best[0]):
                    best = (abs(row[t]), i, t)
            for k in range(t + 1, ncols):
                if a[0][k] and (best is None or abs(a[0][k]) < best[0]):
                    best = (abs(a[0][k]), 0, k)
            _, i, j = best
            a[0], a[i] = a[i], a[0]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[0][t]))
        a = [row for row in a[1:] if any(row[t + 1 :])]
        t += 1
    # enforce the divisibility chain
    diag.sort()
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                x, y = diag[i], diag[j]
                g = _gcd(x, y)
                if g != x:
                    diag[i], diag[j] = g, x * y // g
                    changed = True
        diag.sort()
    return diag


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank plus Z/d for each d in ``torsion`` (d > 1, d_i | d_{i+1})."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def primary_parts(self) -> list[int]:
        parts = []
        for d in self.torsion:
            p = 2
            while d > 1:
                if d % p == 0:
                    q = 1
                    while d % p == 0:
                        d //= p
                        q *= p
                    parts.append(q)
                p += 1
        return sorted(parts, key=lambda q: (_prime_of(q), q))

    def __str__(self):
        terms = []
        for q, m in Counter(self.primary_parts()).items():
            terms.append(f"(Z/{q})^{m}" if m > 1 else f"Z/{q}")
        if self.free_rank:
            terms.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(terms) if terms else "0"

    def key(self):
        return (self.free_rank, self.torsion)


def _prime_of(q):
    p = 2
    while q % p:
        p += 1
    return p


def smith_normal_form(matrix, ncols: int | None = None) -> tuple[int, tuple[int, ...]]:
    """(free rank, divisor chain) of the cokernel of an integer relation matrix.

    Rows are relations and columns generators, so the free rank is the
    column count minus the rank.  The chain keeps unit divisors; use
    :func:`abelian_group` for the reduced form.
    """
    rows = [list(r) for r in matrix]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    diag = smith_diagonal(rows)
    return ncols - len(diag), tuple(diag)


def abelian_group(matrix, ncols: int | None = None) -> AbelianGroup:
    rank, chain = smith_normal_form(matrix, ncols)
    return AbelianGroup(rank, tuple(d for d in chain if d > 1))


def parse_abelian(text: str) -> AbelianGroup:
    """Inverse of ``str(AbelianGroup)`` for strings like ``(Z/3)^2 + Z/9 + Z^2``."""
    rank = 0
    cyclic: list[int] = []
    text = text.replace("⊕", "+").replace(" ", "")
    if text == "0":
        return AbelianGroup(0, ())
    for term in text.split("+"):
        mult = 1
        if term.startswith("("):
            inner, _, exp = term[1:].partition(")")
            mult = int(exp[1:]) if exp else 1
            term = inner
        elif "^" in term:
            term, _, exp = term.partition("^")
            mult = int(exp)
        if term == "Z":
            rank += mult
        elif term.startswith("Z/"):
            cyclic.extend([int(term[2:])] * mult)
        else:
            raise ValueError(f"cannot parse abelian group term {term!r}")
    # fold prime powers back into the invariant factor chain
    return AbelianGroup(rank, tuple(d for d in smith_diagonal(_diag_matrix(cyclic)) if d > 1))


def _diag_matrix(entries):
    n = len(entries)
    return [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]
