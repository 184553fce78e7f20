"""Case-by-case search for maximal lattices that could cover an Euler characteristic one manifold.

Model.  A maximal lattice normalizes some principal lattice Gamma_{K_f} with
index m dividing ``normalizer_index_bound``.  Its orbifold Euler
characteristic is chi_P(K_f)/m, where chi_P = 3 mu |Z| and |Z| is the number of
cube roots of unity in k (the center of SU(2,1) over k).  A manifold of
Euler characteristic one covers it with degree n only if chi_P/m = 1/n.
Torsion of projective order r in the lattice then forces r | n.

When h_k = 1 and d != 3 the standard lattice and its sisters are their own
normalizers, so only m = 1 is allowed for them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from ..quadfield import (
    PrimeSplitting,
    QuadField,
    class_number,
    is_squarefree,
    make_field,
    primes_up_to,
    ramified_primes,
    splitting,
)
from .volume import (
    LatticeDatum,
    ParahoricChoice,
    covolume,
    lambda_factor,
    normalizer_index_bound,
    sister_count,
    volume_from_chi,
)
from .witness import MatrixWitness, load_witnesses, projective_order

CANDIDATE_FIELDS = (1, 2, 3, 5, 6, 7, 11, 15, 19, 23, 31)

POSSIBLE = "possible"
ELIMINATED = "eliminated"
NEEDS_GROUP_THEORY = "requires-group-theory"


def center_order(field: QuadField) -> int:
    return 3 if field.d == 3 else 1


def projective_chi(datum: LatticeDatum) -> Fraction:
    """Euler characteristic of the image of Gamma_{K_f} in PU(2,1)."""
    return 3 * covolume(datum) * center_order(datum.field)


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def allowed_normalizer_indices(datum: LatticeDatum) -> list[int]:
    f = datum.field
    if datum.is_sister_of_standard and class_number(f).h == 1 and f.d != 3:
        return [1]
    return divisors(normalizer_index_bound(datum))


def local_choices(field: QuadField, p: int) -> list[ParahoricChoice]:
    """Non-default choices at p after the usual normalizations.

    Iwahori only at split primes; at split primes the other vertex
    stabilizers are conjugate to the default and are dropped.
    """
    s = splitting(field, p)
    if s is PrimeSplitting.SPLIT:
        return [ParahoricChoice.IWAHORI]
    return [ParahoricChoice.V1]


def enumerate_data(field: QuadField, p_max: int = 20, max_primes: int = 2):
    """All lattice data with at most ``max_primes`` non-default primes p <= p_max.

    Ramified primes additionally range over every subset of sister choices,
    so the standard lattice's sisters are always included.
    """
    primes = primes_up_to(p_max)
    options = [(p, c) for p in primes for c in local_choices(field, p)]
    seen = set()
    ram = sorted(ramified_primes(field))
    for k in range(max_primes + 1):
        for combo in itertools.combinations(options, k):
            if len({p for p, _ in combo}) < k:
                continue
            d = LatticeDatum(field, combo)
            if d.choices not in seen:
                seen.add(d.choices)
                yield d
    for k in range(max_primes + 1, len(ram) + 1):
        for sub in itertools.combinations(ram, k):
            d = LatticeDatum(field, tuple((p, ParahoricChoice.V1) for p in sub))
            if d.choices not in seen:
                seen.add(d.choices)
                yield d


@dataclass(frozen=True)
class TorsionRule:
    name: str
    order: int
    applies_to: str  # "all", "standard" or "sister"
    d: int | None  # None: every field

    def applies(self, datum: LatticeDatum) -> bool:
        if self.d is not None and datum.field.d != self.d:
            return False
        if self.applies_to == "all":
            return True
        if self.applies_to == "standard":
            return not datum.choices
        if self.applies_to == "sister":
            return bool(datum.choices) and datum.is_sister_of_standard
        return False


def torsion_rules(witnesses: list[MatrixWitness] | None = None) -> list[TorsionRule]:
    """Rules derived from the shipped witnesses; each order is re-verified."""
    if witnesses is None:
        witnesses = load_witnesses()
    rules = []
    for w in witnesses:
        order = projective_order(w.matrix, w.d)
        if order != w.order:
            raise ValueError(f"witness {w.name} has order {order}, claimed {w.order}")
        rules.append(TorsionRule(w.name, order, w.applies_to, None if w.applies_to == "all" else w.d))
    return rules


@dataclass(frozen=True)
class Candidate:
    datum: LatticeDatum
    lam: int
    m: int
    chi: Fraction  # Euler characteristic of the candidate maximal orbifold
    n: int  # degree of the putative manifold cover
    killed_by: tuple = ()

    @property
    def alive(self):
        return not self.killed_by


@dataclass
class FieldVerdict:
    d: int
    chi_standard: Fraction
    candidates: list[Candidate] = field(default_factory=list)
    verdict: str = ELIMINATED
    reason: str = ""
    chi_scale: Fraction = Fraction(1)

    @property
    def survivors(self) -> list[Candidate]:
        return [c for c in self.candidates if c.alive]

    def status(self, datum: LatticeDatum) -> str:
        """Verdict for a single datum: minimal survivors are possible, others need more work."""
        alive = [c for c in self.survivors if c.datum == datum]
        if not alive:
            return ELIMINATED
        return POSSIBLE if alive[0].lam == 1 else NEEDS_GROUP_THEORY

    def survivor_labels(self) -> list[str]:
        labels = []
        for c in self.survivors:
            lab = c.datum.label()
            if lab not in labels:
                labels.append(lab)
        return labels


def evaluate_field(d: int, p_max: int = 20, max_primes: int = 2, rules=None,
                   chi_scale=Fraction(1)) -> FieldVerdict:
    """Apply the divisor test and torsion rules to every datum over Q(sqrt(-d)).

    ``chi_scale`` multiplies every Euler characteristic; it exists to evaluate
    alternative readings of a field's chi value.
    """
    f = make_field(d)
    rules = torsion_rules() if rules is None else rules
    chi_std = projective_chi(LatticeDatum(f)) * chi_scale
    out = FieldVerdict(d, chi_std, chi_scale=Fraction(chi_scale))
    _assert_tail(f, chi_std, p_max)
    for datum in enumerate_data(f, p_max, max_primes):
        chi_p = projective_chi(datum) * chi_scale
        for m in allowed_normalizer_indices(datum):
            chi = chi_p / m
            if chi.numerator != 1:
                continue
            n = chi.denominator
            killed = tuple(r.name for r in rules if r.applies(datum) and n % r.order)
            out.candidates.append(Candidate(datum, datum.lambda_product(), m, chi, n, killed))
    if not out.candidates:
        out.verdict, out.reason = ELIMINATED, "divisor"
    elif not out.survivors:
        out.verdict, out.reason = ELIMINATED, "torsion"
    elif any(c.lam == 1 for c in out.survivors):
        out.verdict, out.reason = POSSIBLE, "minimal lattice survives"
    else:
        out.verdict, out.reason = NEEDS_GROUP_THEORY, "only non-minimal data survive"
    return out


def _assert_tail(f: QuadField, chi_std: Fraction, p_max: int):
    """Check that primes beyond p_max can never pass the divisor test.

    Every other choice only raises chi_P / m, since lambda_p / 3 > 1 at each
    Iwahori prime.  So a choice at p > p_max survives only if lambda_p is at
    most 3 h_3 / chi_std (3^2 h_3 / chi_std when p itself is Iwahori).  The
    first prime past p_max in each splitting class already exceeds that, and
    lambda_p grows with p.
    """
    h3 = class_number(f).h3
    p = p_max + 1
    seen = set()
    while len(seen) < 2 and p < 10 * p_max + 100:
        if all(p % q for q in range(2, int(p**0.5) + 1)):
            s = splitting(f, p)
            if s is not PrimeSplitting.RAMIFIED and s not in seen:
                seen.add(s)
                for c in local_choices(f, p):
                    budget = (9 if c is ParahoricChoice.IWAHORI else 3) * h3 / chi_std
                    lam = lambda_factor(p, s, c)
                    assert lam > budget, f"prime {p} escapes the search cutoff for d={f.d}"
        p += 1


@dataclass
class MinimalityReport:
    d: int
    datum: LatticeDatum
    ratio: Fraction  # covolume / normalizer index bound
    mu: Fraction
    chi: Fraction
    volume: object
    minimal_lattices: list[str]
    sister_count: int


def minimality_search(d_max: int = 100, p_max: int = 20, max_primes: int = 2) -> MinimalityReport:
    """Minimize covolume / normalizer index bound over all fields and data."""
    best = None
    for d in range(1, d_max + 1):
        if not is_squarefree(d):
            continue
        f = make_field(d)
        base = covolume(LatticeDatum(f))
        h3 = class_number(f).h3
        for datum in enumerate_data(f, p_max, max_primes):
            r = base * datum.lambda_product() / (3 ** (1 + len(datum.iwahori_set)) * h3)
            if best is None or r < best[0]:
                best = (r, datum)
    ratio, datum = best
    # the principal lattices of minimal covolume in the winning field
    mu = covolume(datum)
    minimal = [t for t in enumerate_data(datum.field, p_max, max_primes) if covolume(t) == mu]
    chi = projective_chi(datum) / normalizer_index_bound(datum)
    return MinimalityReport(
        datum.field.d, datum, ratio, mu, chi, volume_from_chi(chi),
        [t.label() for t in minimal], sister_count(datum.field).count,
    )


@dataclass
class CensusReport:
    fields: list[FieldVerdict]
    minimality: MinimalityReport | None = None
    alternates: dict = field(default_factory=dict)  # d -> FieldVerdict under another reading

    def verdict(self, d: int) -> FieldVerdict:
        return next(v for v in self.fields if v.d == d)


# Euler characteristic readings that disagree with the computed L-value.
ALTERNATE_CHI_SCALE = {7: Fraction(3)}


def census(d_list=CANDIDATE_FIELDS, p_max: int = 20, max_primes: int = 2,
           minimality: bool = True, d_max: int = 100) -> CensusReport:
    rules = torsion_rules()
    fields = [evaluate_field(d, p_max, max_primes, rules) for d in sorted(set(d_list))]
    alts = {
        d: evaluate_field(d, p_max, max_primes, rules, s)
        for d, s in ALTERNATE_CHI_SCALE.items() if d in d_list
    }
    mini = minimality_search(d_max, p_max, max_primes) if minimality else None
    return CensusReport(fields, mini, alts)
