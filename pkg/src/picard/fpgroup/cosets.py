"""Coset tables and Todd-Coxeter coset enumeration (HLT strategy)."""

from __future__ import annotations

from collections import deque

from ..errors import BudgetExceeded, ValidationError
from .words import GroupData, Presentation

DEFAULT_MAX_COSETS = 1_000_000


class CosetTable:
    """The right action of a group on the cosets of a subgroup.

    ``rows[c][a]`` is the coset reached from coset ``c`` by letter ``a``
    (letter numbering as in :mod:`picard.fpgroup.words`).  Cosets are
    numbered from 0 here; coset 0 is the subgroup itself.
    """

    def __init__(self, ngens: int, rows: list[list[int]], complete: bool = True):
        self.ngens = ngens
        self.rows = rows
        self.complete = complete

    @property
    def n(self) -> int:
        return len(self.rows)

    index = n

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, CosetTable) and self.rows == other.rows

    def __repr__(self):
        return f"CosetTable(index={self.n}, ngens={self.ngens})"

    def trace(self, coset: int, word) -> int:
        for a in word:
            coset = self.rows[coset][a]
        return coset

    def action(self, gen: int) -> list[int]:
        """Image of every coset under generator ``gen`` as a list."""
        return [row[2 * gen] for row in self.rows]

    def word_permutation(self, word) -> list[int]:
        return [self.trace(c, word) for c in range(self.n)]

    def fixed_points(self, word) -> list[int]:
        return [c for c in range(self.n) if self.trace(c, word) == c]

    def check(self, relators, subgens=()) -> None:
        """Raise AssertionError unless this is a valid complete coset table."""
        n = self.n
        for a in range(2 * self.ngens):
            img = [row[a] for row in self.rows]
            assert sorted(img) == list(range(n)), f"letter {a} is not a permutation"
            for c in range(n):
                assert self.rows[img[c]][a ^ 1] == c
        for r in relators:
            for c in range(n):
                assert self.trace(c, r) == c, "relator acts nontrivially"
        for w in subgens:
            assert self.trace(0, w) == 0, "subgroup generator moves coset 0"

    def standardize(self) -> "CosetTable":
        """Renumber cosets in breadth-first order from coset 0."""
        order = [0]
        new = {0: 0}
        i = 0
        while i < len(order):
            row = self.rows[order[i]]
            for a in range(2 * self.ngens):
                c = row[a]
                if c not in new:
                    new[c] = len(order)
                    order.append(c)
            i += 1
        rows = [[new[c] for c in self.rows[old]] for old in order]
        return CosetTable(self.ngens, rows, self.complete)

    def transversal(self, order=None) -> list[tuple]:
        """Coset representatives: the word labelling a spanning-tree path to each coset.

        ``order`` permutes the letters tried during the breadth-first search,
        which is how a second, different transversal is produced.
        """
        letters_ = list(range(2 * self.ngens)) if order is None else list(order)
        reps: list = [None] * self.n
        reps[0] = ()
        queue = deque([0])
        while queue:
            c = queue.popleft()
            for a in letters_:
                d = self.rows[c][a]
                if reps[d] is None:
                    reps[d] = reps[c] + (a,)
                    queue.append(d)
        return reps

    @classmethod
    def from_permutations(cls, perms: list[list[int]]) -> "CosetTable":
        """Build a table from the permutation action of each generator."""
        n = len(perms[0])
        rows = [[0] * (2 * len(perms)) for _ in range(n)]
        for g, perm in enumerate(perms):
            for c, d in enumerate(perm):
                rows[c][2 * g] = d
                rows[d][2 * g + 1] = c
        return cls(len(perms), rows)


def _enumerate(ngens, relators, subgens, max_cosets):
    ncols = 2 * ngens
    rows: list[list[int]] = [[-1] * ncols]
    parent = [0]
    relators = [r for r in relators if r]

    def rep(c):
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def new_coset():
        if len(rows) >= max_cosets:
            raise BudgetExceeded(f"coset enumeration exceeded {max_cosets} cosets")
        rows.append([-1] * ncols)
        parent.append(len(parent))
        return len(rows) - 1

    def define(c, a):
        d = new_coset()
        rows[c][a] = d
        rows[d][a ^ 1] = c
        return d

    def coincidence(c, d):
        queue = []

        def merge(k, l):
            k, l = rep(k), rep(l)
            if k != l:
                if k > l:
                    k, l = l, k
                parent[l] = k
                queue.append(l)

        merge(c, d)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = rows[g]
            for a in range(ncols):
                e = row[a]
                if e < 0:
                    continue
                if rows[e][a ^ 1] == g:
                    rows[e][a ^ 1] = -1
                m, n = rep(g), rep(e)
                if rows[m][a] >= 0:
                    merge(n, rows[m][a])
                elif rows[n][a ^ 1] >= 0:
                    merge(m, rows[n][a ^ 1])
                else:
                    rows[m][a] = n
                    rows[n][a ^ 1] = m

    def scan_and_fill(c, w):
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and rows[f][w[i]] >= 0:
                f = rows[f][w[i]]
                i += 1
            if i > j:
                if f != c:
                    coincidence(f, c)
                return
            while j >= i and rows[b][w[j] ^ 1] >= 0:
                b = rows[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                rows[f][w[i]] = b
                rows[b][w[i] ^ 1] = f
                return
            define(f, w[i])

    for w in subgens:
        if w:
            scan_and_fill(0, w)
    c = 0
    while c < len(rows):
        if parent[c] == c:
            for r in relators:
                scan_and_fill(c, r)
                if parent[c] != c:
                    break
            if parent[c] == c:
                for a in range(ncols):
                    if rows[c][a] < 0:
                        define(c, a)
        c += 1

    live = [c for c in range(len(rows)) if parent[c] == c]
    renum = {c: i for i, c in enumerate(live)}
    out = [[renum[rep(rows[c][a])] for a in range(ncols)] for c in live]
    return out


def todd_coxeter(group, subgens=(), max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by ``subgens``.

    ``group`` is a :class:`GroupData` or a :class:`Presentation`.  Raises
    :class:`BudgetExceeded` if more than ``max_cosets`` cosets are live at
    once.  The result is complete and standardized.
    """
    pres = group.presentation if isinstance(group, GroupData) else group
    if not isinstance(pres, Presentation):
        raise TypeError(f"expected GroupData or Presentation, got {type(group).__name__}")
    if max_cosets < 1:
        raise ValidationError("max_cosets must be positive")
    rows = _enumerate(pres.ngens, pres.relators, [tuple(w) for w in subgens], max_cosets)
    return CosetTable(pres.ngens, rows).standardize()


def group_order(group, max_cosets: int = DEFAULT_MAX_COSETS) -> int:
    """Order of a finite group, as the index of the trivial subgroup."""
    return todd_coxeter(group, (), max_cosets).n
