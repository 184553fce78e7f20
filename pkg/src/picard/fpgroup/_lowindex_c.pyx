# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled low-index subgroup search; same contract as ``_lowindex_py.search``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

DEF UNDEF = -1


cdef class _Search:
    cdef int ncols, n, used
    cdef int *t
    cdef int *trail
    cdef int ntrail
    cdef int *stack
    cdef int nstack
    cdef int *rot_off      # per letter: start index into rot_idx
    cdef int *rot_idx      # rotation ids grouped by first letter
    cdef int *rot_start    # per rotation: start index into rot_data
    cdef int *rot_len
    cdef int *rot_data
    cdef int *ex_start
    cdef int *ex_len
    cdef int *ex_data
    cdef int nex
    cdef int *fwd
    cdef int *back
    cdef long long nodes, max_nodes
    cdef bint exhausted
    cdef list results

    def __cinit__(self, int ngens, list rotations, list exclude, int n, long long max_nodes):
        cdef int i, j, k, total, letter
        self.ncols = 2 * ngens
        self.n = n
        self.t = <int *> malloc(n * self.ncols * sizeof(int))
        self.trail = <int *> malloc((n * self.ncols + 1) * sizeof(int))
        self.stack = <int *> malloc((2 * n * self.ncols + 2) * sizeof(int))
        self.fwd = <int *> malloc((n + 1) * sizeof(int))
        self.back = <int *> malloc((n + 1) * sizeof(int))
        for i in range(n * self.ncols):
            self.t[i] = UNDEF
        self.ntrail = 0
        self.nstack = 0

        nrot = len(rotations)
        total = 0
        for w in rotations:
            total += len(w)
        self.rot_off = <int *> malloc((self.ncols + 1) * sizeof(int))
        self.rot_idx = <int *> malloc((nrot + 1) * sizeof(int))
        self.rot_start = <int *> malloc((nrot + 1) * sizeof(int))
        self.rot_len = <int *> malloc((nrot + 1) * sizeof(int))
        self.rot_data = <int *> malloc((total + 1) * sizeof(int))
        k = 0
        for i, w in enumerate(rotations):
            self.rot_start[i] = k
            self.rot_len[i] = len(w)
            for a in w:
                self.rot_data[k] = a
                k += 1
        k = 0
        for letter in range(self.ncols):
            self.rot_off[letter] = k
            for i, w in enumerate(rotations):
                if w[0] == letter:
                    self.rot_idx[k] = i
                    k += 1
        self.rot_off[self.ncols] = k

        self.nex = len(exclude)
        total = 0
        for w in exclude:
            total += len(w)
        self.ex_start = <int *> malloc((self.nex + 1) * sizeof(int))
        self.ex_len = <int *> malloc((self.nex + 1) * sizeof(int))
        self.ex_data = <int *> malloc((total + 1) * sizeof(int))
        k = 0
        for i, w in enumerate(exclude):
            self.ex_start[i] = k
            self.ex_len[i] = len(w)
            for a in w:
                self.ex_data[k] = a
                k += 1
        self.nodes = 0
        self.max_nodes = max_nodes
        self.exhausted = False
        self.results = []

    def __dealloc__(self):
        free(self.t); free(self.trail); free(self.stack); free(self.fwd); free(self.back)
        free(self.rot_off); free(self.rot_idx); free(self.rot_start); free(self.rot_len)
        free(self.rot_data); free(self.ex_start); free(self.ex_len); free(self.ex_data)

    cdef inline void assign(self, int c, int a, int d):
        self.t[c * self.ncols + a] = d
        self.t[d * self.ncols + (a ^ 1)] = c
        self.trail[self.ntrail] = c * self.ncols + a
        self.ntrail += 1
        self.trail[self.ntrail] = d * self.ncols + (a ^ 1)
        self.ntrail += 1
        self.stack[self.nstack] = c * self.ncols + a
        self.nstack += 1

    cdef inline void undo(self, int mark):
        while self.ntrail > mark:
            self.ntrail -= 1
            self.t[self.trail[self.ntrail]] = UNDEF

    cdef bint process(self):
        cdef int pos, c, a, k, r, f, b, i, j, m, e, x, s, d
        cdef int ncols = self.ncols
        cdef int *t = self.t
        while self.nstack > 0:
            self.nstack -= 1
            pos = self.stack[self.nstack]
            # each assignment sets two mirror entries; scan both
            for s in range(2):
                if s == 0:
                    c = pos // ncols
                    a = pos % ncols
                else:
                    d = t[pos]
                    a = (pos % ncols) ^ 1
                    c = d
                for k in range(self.rot_off[a], self.rot_off[a + 1]):
                    r = self.rot_idx[k]
                    m = self.rot_len[r]
                    f = c
                    i = 0
                    while i < m:
                        e = t[f * ncols + self.rot_data[self.rot_start[r] + i]]
                        if e == UNDEF:
                            break
                        f = e
                        i += 1
                    if i == m:
                        if f != c:
                            return False
                        continue
                    b = c
                    j = m - 1
                    while j > i:
                        e = t[b * ncols + (self.rot_data[self.rot_start[r] + j] ^ 1)]
                        if e == UNDEF:
                            break
                        b = e
                        j -= 1
                    if j == i:
                        x = self.rot_data[self.rot_start[r] + i]
                        if t[b * ncols + (x ^ 1)] != UNDEF:
                            return False
                        self.assign(f, x, b)
        return True

    cdef bint canonical(self, int used):
        cdef int base, c, a, src, x, y, z, nxt, i
        cdef int ncols = self.ncols
        cdef int *t = self.t
        cdef bint done
        for base in range(1, used):
            for i in range(used):
                self.fwd[i] = UNDEF
                self.back[i] = UNDEF
            self.fwd[base] = 0
            self.back[0] = base
            nxt = 1
            done = False
            for c in range(used):
                if done:
                    break
                src = self.back[c]
                if src == UNDEF:
                    break
                for a in range(ncols):
                    x = t[src * ncols + a]
                    y = t[c * ncols + a]
                    if x == UNDEF or y == UNDEF:
                        done = True
                        break
                    z = self.fwd[x]
                    if z == UNDEF:
                        z = nxt
                        self.fwd[x] = z
                        self.back[z] = x
                        nxt += 1
                    if z < y:
                        return False
                    if z > y:
                        done = True
                        break
        return True

    cdef bint excluded_fixed(self, int used):
        cdef int k, c, d, i
        cdef int *t = self.t
        for k in range(self.nex):
            for c in range(used):
                d = c
                for i in range(self.ex_len[k]):
                    d = t[d * self.ncols + self.ex_data[self.ex_start[k] + i]]
                    if d == UNDEF:
                        break
                if d == c:
                    return True
        return False

    cdef void rec(self, int used):
        cdef int pos, c, a, inv, d, mark, used2, k
        cdef int ncols = self.ncols
        if self.exhausted:
            return
        self.nodes += 1
        if self.max_nodes > 0 and self.nodes > self.max_nodes:
            self.exhausted = True
            return
        pos = -1
        for k in range(used * ncols):
            if self.t[k] == UNDEF:
                pos = k
                break
        if pos < 0:
            if used == self.n:
                self.results.append([self.t[k] for k in range(self.n * ncols)])
            return
        c = pos // ncols
        a = pos % ncols
        inv = a ^ 1
        for d in range(used + 1):
            if d == used:
                if used >= self.n:
                    break
            elif self.t[d * ncols + inv] != UNDEF:
                continue
            mark = self.ntrail
            self.nstack = 0
            self.assign(c, a, d)
            used2 = used + 1 if d == used else used
            if self.process() and self.canonical(used2) and not (
                self.nex > 0 and self.excluded_fixed(used2)
            ):
                self.rec(used2)
            self.undo(mark)
            if self.exhausted:
                return


def search(ngens, relators, exclude, n, max_nodes=0):
    from ._lowindex_py import _rotations

    ncols = 2 * ngens
    by_letter = _rotations([r for r in relators if r], ncols)
    rotations = [w for bucket in by_letter for w in bucket]
    s = _Search(ngens, rotations, [tuple(w) for w in exclude if w], n, max_nodes)
    s.rec(1)
    return s.results, s.nodes, not s.exhausted
