"""Reidemeister-Schreier rewriting, subgroup homology and cusp counting."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import DataError
from .cosets import CosetTable, todd_coxeter
from .snf import AbelianGroup, abelian_group
from .words import GroupData, Presentation, cyclic_reduce, free_reduce, inverse, multiply


@dataclass
class SubgroupPresentation(Presentation):
    """Presentation of a finite-index subgroup on its Schreier generators.

    ``words[i]`` is generator ``i`` written in the ambient group's letters.
    """

    words: list[tuple] = field(default_factory=list)
    table: CosetTable | None = None
    schreier: dict = field(default_factory=dict)
    transversal: list = field(default_factory=list)

    def rewrite(self, word) -> tuple:
        """Express an ambient word lying in the subgroup in Schreier generators."""
        c = 0
        out = []
        rows = self.table.rows
        for a in word:
            if a & 1:
                d = rows[c][a]
                s = self.schreier.get((d, a >> 1))
                if s is not None:
                    out.append(2 * s + 1)
            else:
                s = self.schreier.get((c, a >> 1))
                if s is not None:
                    out.append(2 * s)
                d = rows[c][a]
            c = d
        if c != 0:
            raise ValueError("word does not lie in the subgroup")
        return free_reduce(out)


def reidemeister_schreier(group, table: CosetTable, order=None) -> SubgroupPresentation:
    """Schreier generators and rewritten relators for the subgroup of ``table``.

    Coset representatives come from a breadth-first spanning tree; ``order``
    changes the letter order used to build it (see
    :meth:`CosetTable.transversal`).  Tree edges are dropped as trivial
    generators.
    """
    pres = group.presentation if isinstance(group, GroupData) else group
    reps = table.transversal(order)
    rows = table.rows
    tree = set()
    for c, w in enumerate(reps):
        if w:
            parent = table.trace(0, w[:-1])
            a = w[-1]
            # record the tree edge as (source coset, generator) for a positive letter
            tree.add((parent, a >> 1) if not a & 1 else (c, a >> 1))
    schreier = {}
    words = []
    names = []
    for c in range(table.n):
        for g in range(pres.ngens):
            if (c, g) in tree:
                continue
            d = rows[c][2 * g]
            schreier[(c, g)] = len(words)
            words.append(multiply(reps[c], (2 * g,), inverse(reps[d])))
            names.append(f"{pres.generators[g]}_{c}")
    sub = SubgroupPresentation(names, [], words=words, table=table, schreier=schreier,
                               transversal=reps)
    rels = []
    for c in range(table.n):
        for r in pres.relators:
            rels.append(_rewrite_from(sub, c, r))
    sub.relators = [r for r in rels if r]
    return sub


def _rewrite_from(sub, c, word):
    rows = sub.table.rows
    out = []
    for a in word:
        if a & 1:
            d = rows[c][a]
            s = sub.schreier.get((d, a >> 1))
            if s is not None:
                out.append(2 * s + 1)
        else:
            s = sub.schreier.get((c, a >> 1))
            if s is not None:
                out.append(2 * s)
            d = rows[c][a]
        c = d
    return free_reduce(out)


def relation_matrix(pres: Presentation) -> list[list[int]]:
    m = []
    for r in pres.relators:
        row = [0] * pres.ngens
        for a in r:
            row[a >> 1] += -1 if a & 1 else 1
        m.append(row)
    return m


def abelianization(pres: Presentation) -> AbelianGroup:
    return abelian_group(relation_matrix(pres), pres.ngens)


def table_homology(group, table: CosetTable, order=None) -> AbelianGroup:
    """First homology of the subgroup whose coset table is ``table``."""
    return abelianization(reidemeister_schreier(group, table, order))


def peripheral_orbits(table: CosetTable, peripheral) -> list[list[int]]:
    """Orbits on cosets of the subgroup generated by the peripheral words."""
    if not peripheral:
        raise DataError("no peripheral subgroup in the group data")
    perms = [table.word_permutation(w) for w in peripheral]
    seen = [False] * table.n
    orbits = []
    for start in range(table.n):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        i = 0
        while i < len(orbit):
            c = orbit[i]
            i += 1
            for p in perms:
                d = p[c]
                if not seen[d]:
                    seen[d] = True
                    orbit.append(d)
        orbits.append(orbit)
    return orbits


def table_cusp_count(table: CosetTable, peripheral) -> int:
    """Number of double cosets H \\ G / P, i.e. peripheral orbits on cosets of H."""
    return len(peripheral_orbits(table, peripheral))


def simplify(pres: Presentation, max_length: int = 200):
    """Tietze eliminations: drop a generator that occurs exactly once in some relator.

    Returns ``(presentation, images)`` where ``images[g]`` writes old
    generator ``g`` as a word in the surviving generators.  Relators longer
    than ``max_length`` are never used to eliminate, which keeps the relator
    lengths from growing without bound.
    """
    names = list(pres.generators)
    rels = [cyclic_reduce(r) for r in pres.relators]
    images = {g: (2 * g,) for g in range(len(names))}
    alive = list(range(len(names)))

    def substitute(word, g, value):
        out = []
        for a in word:
            if a >> 1 == g:
                out.extend(value if not a & 1 else inverse(value))
            else:
                out.append(a)
        return free_reduce(out)

    while True:
        best = None
        for ri, r in enumerate(rels):
            if not r or len(r) > max_length:
                continue
            counts: dict[int, int] = {}
            for a in r:
                counts[a >> 1] = counts.get(a >> 1, 0) + 1
            for g, k in counts.items():
                if k == 1 and (best is None or len(r) < best[0]):
                    best = (len(r), ri, g)
        if best is None:
            break
        _, ri, g = best
        r = rels[ri]
        i = next(k for k, a in enumerate(r) if a >> 1 == g)
        # rotate so the lone occurrence leads: x^e rest = 1, so x^e = rest^-1
        rot = r[i:] + r[:i]
        rest = rot[1:]
        value = inverse(rest) if not rot[0] & 1 else rest
        rels = [cyclic_reduce(substitute(s, g, value)) for k, s in enumerate(rels) if k != ri]
        images = {h: substitute(w, g, value) for h, w in images.items()}
        alive.remove(g)

    renum = {g: i for i, g in enumerate(alive)}

    def relabel(w):
        return tuple(2 * renum[a >> 1] + (a & 1) for a in w)

    final = []
    seen = set()
    for r in rels:
        r = cyclic_canonical(relabel(r))
        if r and r not in seen:
            seen.add(r)
            final.append(r)
    final.sort(key=lambda w: (len(w), w))
    out = Presentation([names[g] for g in alive], final)
    return out, [relabel(images[g]) for g in range(len(names))]


def cyclic_canonical(r):
    r = cyclic_reduce(r)
    if not r:
        return r
    rots = [r[i:] + r[:i] for i in range(len(r))]
    inv = inverse(r)
    rots += [inv[i:] + inv[:i] for i in range(len(inv))]
    return min(rots, key=lambda w: (len(w), w))


def subgroup_table(group, subgens, max_cosets=None) -> CosetTable:
    kwargs = {} if max_cosets is None else {"max_cosets": max_cosets}
    return todd_coxeter(group, subgens, **kwargs)
