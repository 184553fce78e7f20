"""Exact 3x3 matrices over Q(sqrt(-d)) and torsion witnesses in SU(2,1).

Elements of k are stored as pairs of rationals (a, b) meaning a + b*sqrt(-d).
In witness files an entry is written as a string such as ``"-1"``, ``"i/2"``,
``"2i"`` or ``"1/2-3i"``, where ``i`` stands for sqrt(-d).
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from ..errors import DataError, ValidationError


@dataclass(frozen=True)
class QuadNumber:
    """a + b*sqrt(-d) with rational a, b."""

    a: Fraction
    b: Fraction
    d: int

    @classmethod
    def of(cls, x, d: int) -> "QuadNumber":
        if isinstance(x, QuadNumber):
            return x
        return cls(Fraction(x), Fraction(0), d)

    def _check(self, other):
        if self.d != other.d:
            raise ValidationError(f"mixed fields Q(sqrt(-{self.d})) and Q(sqrt(-{other.d}))")

    def __add__(self, other):
        other = QuadNumber.of(other, self.d)
        self._check(other)
        return QuadNumber(self.a + other.a, self.b + other.b, self.d)

    def __sub__(self, other):
        return self + (-QuadNumber.of(other, self.d))

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, self.d)

    def __mul__(self, other):
        other = QuadNumber.of(other, self.d)
        self._check(other)
        a, b, c, e = self.a, self.b, other.a, other.b
        return QuadNumber(a * c - self.d * b * e, a * e + b * c, self.d)

    def conj(self):
        return QuadNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a + self.d * self.b * self.b

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadNumber(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        return self * QuadNumber.of(other, self.d).inverse()

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def is_real(self):
        return self.b == 0

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        im = {1: "i", -1: "-i"}.get(self.b, f"{self.b}i")
        if self.b.denominator != 1:
            im = f"{self.b.numerator}i/{self.b.denominator}"
        if self.a == 0:
            return im
        return f"{self.a}{'' if im.startswith('-') else '+'}{im}"


_TERM = re.compile(r"([+-]?)(\d*)(i?)(?:/(\d+))?")


def parse_entry(text: str, d: int) -> QuadNumber:
    """Parse ``"1/2-3i"``-style text into an element of Q(sqrt(-d))."""
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise ValidationError("empty matrix entry")
    a = Fraction(0)
    b = Fraction(0)
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if (not m or m.end() == pos or (not m.group(2) and not m.group(3))
                or (pos and not m.group(1))):
            raise ValidationError(f"malformed matrix entry {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        num = int(m.group(2)) if m.group(2) else 1
        den = int(m.group(4)) if m.group(4) else 1
        if den == 0:
            raise ValidationError(f"zero denominator in {text!r}")
        v = Fraction(sign * num, den)
        if m.group(3):
            b += v
        else:
            a += v
        pos = m.end()
    return QuadNumber(a, b, d)


Matrix = tuple  # 3x3 tuple of tuples of QuadNumber


def mat(rows, d: int) -> Matrix:
    out = []
    for r in rows:
        out.append(tuple(parse_entry(x, d) if isinstance(x, str) else QuadNumber.of(x, d) for x in r))
    if len(out) != 3 or any(len(r) != 3 for r in out):
        raise ValidationError("witness matrices must be 3x3")
    return tuple(out)


def identity(d: int) -> Matrix:
    return tuple(tuple(QuadNumber.of(int(i == j), d) for j in range(3)) for i in range(3))


def matmul(x: Matrix, y: Matrix) -> Matrix:
    n = len(x)
    return tuple(
        tuple(sum((x[i][k] * y[k][j] for k in range(1, n)), x[i][0] * y[0][j]) for j in range(n))
        for i in range(n)
    )


def adjoint(x: Matrix) -> Matrix:
    """Conjugate transpose."""
    return tuple(tuple(x[j][i].conj() for j in range(3)) for i in range(3))


def det(x: Matrix) -> QuadNumber:
    return (x[0][0] * (x[1][1] * x[2][2] - x[1][2] * x[2][1])
            - x[0][1] * (x[1][0] * x[2][2] - x[1][2] * x[2][0])
            + x[0][2] * (x[1][0] * x[2][1] - x[1][1] * x[2][0]))


def scalar_value(x: Matrix):
    """The scalar c if x == c*I, otherwise None."""
    c = x[0][0]
    for i in range(3):
        for j in range(3):
            if (x[i][j] != c) if i == j else not x[i][j].is_zero():
                return None
    return c


@dataclass(frozen=True)
class MatrixWitness:
    name: str
    d: int
    matrix: Matrix
    order: int
    form: Matrix | None = None
    applies_to: str = "all"
    source: str = ""

    @property
    def determinant(self):
        return det(self.matrix)


@dataclass(frozen=True)
class WitnessCheck:
    order: int | None  # None: no scalar power up to the cutoff
    preserves_form: bool

    @property
    def order_text(self):
        return "undetermined" if self.order is None else str(self.order)


def projective_order(m: Matrix, d: int, cutoff: int = 120):
    p = m
    for n in range(1, cutoff + 1):
        if scalar_value(p) is not None:
            return n
        p = matmul(p, m)
    return None


def preserves(m: Matrix, form: Matrix) -> bool:
    return matmul(matmul(adjoint(m), form), m) == form


def verify_torsion_witness(w, form=None, cutoff: int = 120) -> WitnessCheck:
    """Projective order of ``w`` and whether it preserves the Hermitian ``form``.

    ``w`` may be a :class:`MatrixWitness` (its own form is used when ``form``
    is omitted) or a bare matrix.
    """
    if isinstance(w, MatrixWitness):
        m, d = w.matrix, w.d
        form = w.form if form is None else form
    else:
        m, d = w, w[0][0].d
    if form is None:
        raise ValidationError("no Hermitian form to check against")
    if adjoint(form) != form:
        raise ValidationError("form is not Hermitian")
    return WitnessCheck(projective_order(m, d, cutoff), preserves(m, form))


def _hermitian_basis(d: int):
    """Nine matrices spanning the Hermitian 3x3 matrices over the rationals."""
    zero = QuadNumber.of(0, d)
    basis = []

    def build(entries):
        rows = [[zero] * 3 for _ in range(3)]
        for (i, j), v in entries.items():
            rows[i][j] = v
        return tuple(tuple(r) for r in rows)

    for i in range(3):
        basis.append(build({(i, i): QuadNumber.of(1, d)}))
    for i, j in ((0, 1), (0, 2), (1, 2)):
        one = QuadNumber.of(1, d)
        basis.append(build({(i, j): one, (j, i): one}))
        s = QuadNumber(Fraction(0), Fraction(1), d)
        basis.append(build({(i, j): s, (j, i): s.conj()}))
    return basis


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        out.append(v)
    return out


def _combine(coeffs, basis, d):
    zero = QuadNumber.of(0, d)
    return tuple(
        tuple(sum((b[i][j] * c for c, b in zip(coeffs, basis) if c), zero) for j in range(3))
        for i in range(3)
    )


def signature(form: Matrix) -> tuple[int, int]:
    """(positive, negative) eigenvalue counts of a Hermitian matrix, exactly.

    The characteristic polynomial is real-rooted, so Descartes' rule of signs
    counts positive and negative roots exactly.
    """
    tr = sum((form[i][i] for i in range(3)), QuadNumber.of(0, form[0][0].d))
    s2 = (form[0][0] * form[1][1] - form[0][1] * form[1][0]
          + form[0][0] * form[2][2] - form[0][2] * form[2][0]
          + form[1][1] * form[2][2] - form[1][2] * form[2][1])
    dt = det(form)
    t, s, e = tr.a, s2.a, dt.a

    def changes(seq):
        signs = [x > 0 for x in seq if x != 0]
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)

    return changes([1, -t, s, -e]), changes([1, t, s, e])


def find_preserved_form(w, search: int = 2):
    """A Hermitian form of signature (2,1) preserved by ``w``, or None.

    Solves adjoint(w) h w = h as a 9-dimensional rational linear system and
    scans small integer combinations of a nullspace basis for one of
    signature (2,1).  Returns ``(form, basis)``; ``form`` is None when no
    such combination is found and ``basis`` lists the whole solution space.
    """
    m = w.matrix if isinstance(w, MatrixWitness) else w
    d = m[0][0].d
    basis = _hermitian_basis(d)
    cols = []
    for b in basis:
        diff = tuple(tuple(x - y for x, y in zip(r1, r2))
                     for r1, r2 in zip(matmul(matmul(adjoint(m), b), m), b))
        cols.append([c for r in diff for x in r for c in (x.a, x.b)])
    eqs = [[cols[k][e] for k in range(9)] for e in range(18)]
    null = _nullspace(eqs, 9)
    sols = [_combine(v, basis, d) for v in null]
    if not sols:
        return None, []
    rng = range(-search, search + 1)
    for coeffs in itertools.product(rng, repeat=len(sols)):
        if not any(coeffs):
            continue
        h = _combine([Fraction(c) for c in coeffs], sols, d)
        if signature(h) == (2, 1):
            return h, sols
    return None, sols


def _parse_witness(obj) -> MatrixWitness:
    try:
        d = int(obj["d"])
        m = mat(obj["matrix"], d)
        form = mat(obj["form"], d) if obj.get("form") else None
        return MatrixWitness(obj["name"], d, m, int(obj["order"]), form,
                             obj.get("applies_to", "all"), obj.get("source", ""))
    except (KeyError, TypeError) as exc:
        raise DataError(f"bad witness record: {exc}") from None


def load_witnesses(path=None) -> list[MatrixWitness]:
    if path is None:
        text = resources.files("picard.data").joinpath("witnesses.json").read_text()
    else:
        text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"witness file is not valid JSON: {exc}") from None
    return [_parse_witness(o) for o in data["witnesses"]]


def format_matrix(m: Matrix) -> list[list[str]]:
    return [[str(x) for x in r] for r in m]
