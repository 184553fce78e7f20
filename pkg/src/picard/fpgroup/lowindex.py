"""Low-index subgroup search, subgroup records and the staged search.

The search kernel comes in two builds with one contract: a compiled
extension (``_lowindex_c``) and a pure-Python fallback (``_lowindex_py``).
The compiled one is used when it imports; set ``PICARD_KERNEL=python`` to
force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from ..errors import BudgetExceeded, DataError, ValidationError
from . import _lowindex_py
from .cosets import CosetTable, todd_coxeter
from .rewrite import (
    cyclic_canonical,
    reidemeister_schreier,
    simplify,
    table_cusp_count,
    table_homology,
)
from .snf import AbelianGroup
from .words import GroupData, Presentation, format_word, free_reduce, inverse, multiply

try:
    from . import _lowindex_c
except ImportError:  # pragma: no cover - depends on the build
    _lowindex_c = None

KERNELS = {"python": _lowindex_py.search}
if _lowindex_c is not None:
    KERNELS["cython"] = _lowindex_c.search


def default_kernel() -> str:
    forced = os.environ.get("PICARD_KERNEL")
    if forced:
        if forced not in KERNELS:
            raise ValidationError(f"kernel {forced!r} is not available; have {sorted(KERNELS)}")
        return forced
    return "cython" if "cython" in KERNELS else "python"


def _pres(group) -> Presentation:
    return group.presentation if isinstance(group, GroupData) else group


def _tables(flat, n, ngens):
    w = 2 * ngens
    return [CosetTable(ngens, [t[i * w:(i + 1) * w] for i in range(n)]) for t in flat]


def search_tables(group, n: int, exclude=(), kernel: str | None = None,
                  max_nodes: int = 0) -> list[CosetTable]:
    """Coset tables of all index-n subgroups up to conjugacy.

    Each table is the lexicographically least among the tables of its
    conjugacy class.  Subgroups in which some word of ``exclude`` has a
    conjugate (equivalently, where it fixes a coset) are skipped.
    """
    if n < 1:
        raise ValidationError("index must be at least 1")
    pres = _pres(group)
    fn = KERNELS[kernel or default_kernel()]
    flat, nodes, complete = fn(pres.ngens, pres.relators, [tuple(w) for w in exclude], n, max_nodes)
    if not complete:
        raise BudgetExceeded(f"low-index search stopped after {nodes} nodes")
    return sorted(_tables(flat, n, pres.ngens), key=lambda t: t.rows)


@dataclass
class SubgroupRecord:
    """A finite-index subgroup and its invariants."""

    generators: list[tuple]
    index: int
    abelian_invariants: AbelianGroup
    cusp_count: int | None
    torsion_free: bool | None
    table: CosetTable = field(repr=False, compare=False, default=None)

    def format_generators(self, names) -> list[str]:
        return [format_word(w, names) for w in self.generators]


def subgroup_generators(group, table: CosetTable) -> list[tuple]:
    """A short generating set: the Schreier generators left after Tietze elimination."""
    sub = reidemeister_schreier(group, table)
    simple, _ = simplify(sub)
    idx = {name: i for i, name in enumerate(sub.generators)}
    return [free_reduce(sub.words[idx[name]]) for name in simple.generators]


def is_torsion_free(table: CosetTable, torsion) -> bool:
    return not any(table.fixed_points(w) for w in torsion)


def make_record(group, table: CosetTable, generators=None) -> SubgroupRecord:
    peripheral = group.peripheral if isinstance(group, GroupData) else []
    torsion = group.torsion if isinstance(group, GroupData) else []
    if generators is None:
        generators = subgroup_generators(group, table)
    return SubgroupRecord(
        generators=list(generators),
        index=table.n,
        abelian_invariants=table_homology(group, table),
        cusp_count=table_cusp_count(table, peripheral) if peripheral else None,
        torsion_free=is_torsion_free(table, torsion) if torsion else None,
        table=table,
    )


def low_index_subgroups(group, n: int, exclude=(), kernel=None, max_nodes: int = 0):
    """Records for every index-n subgroup, up to conjugacy, avoiding ``exclude``."""
    return [make_record(group, t) for t in search_tables(group, n, exclude, kernel, max_nodes)]


def homology(group, rec: SubgroupRecord, order=None) -> AbelianGroup:
    return table_homology(group, _record_table(group, rec), order)


def cusp_count(group, rec: SubgroupRecord) -> int:
    if not isinstance(group, GroupData) or not group.peripheral:
        raise DataError("no peripheral subgroup in the group data")
    return table_cusp_count(_record_table(group, rec), group.peripheral)


def _record_table(group, rec):
    if rec.table is not None:
        return rec.table
    return todd_coxeter(group, rec.generators)


def subgroup_record(group, generators, max_cosets: int | None = None) -> SubgroupRecord:
    """Record for the subgroup generated by ``generators`` (must have finite index)."""
    kw = {} if max_cosets is None else {"max_cosets": max_cosets}
    table = todd_coxeter(group, generators, **kw)
    return make_record(group, table, generators)


def intersection_subgroup(group: GroupData) -> SubgroupRecord:
    """The designated index-4 base subgroup from the ``intersection:`` section."""
    if not group.intersection:
        raise DataError("no intersection subgroup in the group data")
    table = todd_coxeter(group, group.intersection, max_cosets=10_000)
    if table.n != 4:
        raise DataError(f"intersection words generate a subgroup of index {table.n}, not 4")
    return make_record(group, table, group.intersection)


def canonical_key(table: CosetTable) -> tuple:
    """Invariant of the conjugacy class: least standardized table over all base cosets."""
    best = None
    for base in range(table.n):
        order = [base]
        new = {base: 0}
        i = 0
        while i < len(order):
            row = table.rows[order[i]]
            for c in row:
                if c not in new:
                    new[c] = len(order)
                    order.append(c)
            i += 1
        key = tuple(tuple(new[c] for c in table.rows[old]) for old in order)
        if best is None or key < best:
            best = key
    return best


def relative_exclusions(group, base: CosetTable, sub, words) -> list[tuple]:
    """Rewrite ambient words into exclusions for subgroups of ``base``.

    A word w has a conjugate in K <= H iff for some coset H g fixed by w the
    element g w g^-1 of H has an H-conjugate in K.  The returned words are
    those elements g w g^-1, written in the generators of ``sub``, with
    cyclic conjugates and inverses merged (they have the same fixed points).
    """
    reps = base.transversal()
    out = []
    seen = set()
    for w in words:
        for c in base.fixed_points(w):
            u = cyclic_canonical(sub.rewrite_to_simplified(multiply(reps[c], w, inverse(reps[c]))))
            if u and u not in seen:
                seen.add(u)
                out.append(u)
    return out


@dataclass
class _Stage:
    """Base subgroup H with a simplified presentation and the maps to it."""

    schreier: object
    simple: Presentation
    images: list

    def rewrite_to_simplified(self, word):
        w = self.schreier.rewrite(word)
        parts = [self.images[a >> 1] if not a & 1 else inverse(self.images[a >> 1]) for a in w]
        return free_reduce(multiply(*parts)) if parts else ()

    def to_ambient(self, word):
        idx = {name: i for i, name in enumerate(self.schreier.generators)}
        gens = [self.schreier.words[idx[name]] for name in self.simple.generators]
        parts = [gens[a >> 1] if not a & 1 else inverse(gens[a >> 1]) for a in word]
        return free_reduce(multiply(*parts)) if parts else ()


def base_stage(group, base: CosetTable) -> _Stage:
    rs = reidemeister_schreier(group, base)
    simple, images = simplify(rs)
    return _Stage(rs, simple, images)


@dataclass
class StagedResult:
    base: SubgroupRecord
    records: list[SubgroupRecord]
    raw_count: int  # subgroups of H found before merging ambient conjugates
    exclusions: int


def staged_search(group: GroupData, n: int, exclude=None, base: SubgroupRecord | None = None,
                  kernel=None, max_nodes: int = 0, max_cosets: int = 1_000_000) -> StagedResult:
    """Subgroups of index n inside the base subgroup H, then lifted to the whole group.

    ``exclude`` defaults to the torsion representatives.  Results are
    re-enumerated in the ambient group (so their index is [G:H]*n by
    construction and by check) and merged up to ambient conjugacy.
    """
    if base is None:
        base = intersection_subgroup(group)
    if exclude is None:
        exclude = group.torsion
    stage = base_stage(group, base.table)
    ex = relative_exclusions(group, base.table, stage, exclude)
    tables = search_tables(stage.simple, n, ex, kernel, max_nodes)
    records = []
    seen = set()
    for t in tables:
        sub_gens = subgroup_generators(stage.simple, t)
        gens = [stage.to_ambient(w) for w in sub_gens]
        top = todd_coxeter(group, gens, max_cosets=max_cosets)
        if top.n != base.index * n:
            raise AssertionError(f"lifted subgroup has index {top.n}, expected {base.index * n}")
        key = canonical_key(top)
        if key in seen:
            continue
        seen.add(key)
        records.append(make_record(group, top))
    records.sort(key=lambda r: (r.abelian_invariants.key(), -(r.cusp_count or 0), r.table.rows))
    return StagedResult(base, records, len(tables), len(ex))


def count_subgroup_classes(pres: Presentation, n: int, kernel=None) -> int:
    """Number of conjugacy classes of index-n subgroups."""
    return len(search_tables(pres, n, (), kernel))


def record_presentation(group, rec: SubgroupRecord) -> Presentation:
    """A simplified presentation of the subgroup of ``rec``."""
    simple, _ = simplify(reidemeister_schreier(group, _record_table(group, rec)))
    return simple
