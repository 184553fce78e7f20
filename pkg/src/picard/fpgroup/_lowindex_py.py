"""Pure-Python low-index subgroup search (Sims' coset table backtrack).

This is the fallback for :mod:`picard.fpgroup._lowindex_c`; both expose
``search(ngens, relators, exclude, n, max_nodes)`` returning the complete
canonical coset tables of index exactly ``n`` as flat lists, in the order
the backtrack reaches them.
"""

UNDEF = -1


def _rotations(relators, ncols):
    """Cyclic conjugates of every relator and its inverse, bucketed by first letter."""
    by_letter = [[] for _ in range(ncols)]
    seen = set()
    for r in relators:
        inv = tuple(a ^ 1 for a in reversed(r))
        for w in (tuple(r), inv):
            for i in range(len(w)):
                rot = w[i:] + w[:i]
                if rot not in seen:
                    seen.add(rot)
                    by_letter[rot[0]].append(rot)
    return by_letter


def _canonical(t, ncols, n):
    """True unless renumbering from some other base coset gives a smaller table."""
    for base in range(1, n):
        fwd = [UNDEF] * n
        back = [UNDEF] * n
        fwd[base] = 0
        back[0] = base
        nxt = 1
        done = False
        for c in range(n):
            if done:
                break
            src = back[c]
            if src == UNDEF:
                break
            for a in range(ncols):
                x = t[src * ncols + a]
                y = t[c * ncols + a]
                if x == UNDEF or y == UNDEF:
                    done = True
                    break
                z = fwd[x]
                if z == UNDEF:
                    z = nxt
                    fwd[x] = z
                    back[z] = x
                    nxt += 1
                if z < y:
                    return False
                if z > y:
                    done = True
                    break
    return True


def _excluded_fixed(t, ncols, n, exclude):
    """True if some excluded word provably fixes a coset."""
    for w in exclude:
        for c in range(n):
            d = c
            for a in w:
                d = t[d * ncols + a]
                if d == UNDEF:
                    break
            if d == c:
                return True
    return False


def search(ngens, relators, exclude, n, max_nodes=0, tables_out=None):
    ncols = 2 * ngens
    rots = _rotations([r for r in relators if r], ncols)
    exclude = [tuple(w) for w in exclude if w]
    results = [] if tables_out is None else tables_out
    nodes = 0

    def assign(t, c, a, d, stack):
        t[c * ncols + a] = d
        t[d * ncols + (a ^ 1)] = c
        stack.append((c, a))
        stack.append((d, a ^ 1))

    def process(t, stack):
        # scan every relator rotation through each new edge
        while stack:
            c, a = stack.pop()
            for w in rots[a]:
                f = c
                i = 0
                m = len(w)
                while i < m:
                    e = t[f * ncols + w[i]]
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
                    e = t[b * ncols + (w[j] ^ 1)]
                    if e == UNDEF:
                        break
                    b = e
                    j -= 1
                if j == i:
                    x = w[i]
                    if t[b * ncols + (x ^ 1)] != UNDEF:
                        return False
                    assign(t, f, x, b, stack)
        return True

    def rec(t, used):
        nonlocal nodes
        nodes += 1
        if max_nodes and nodes > max_nodes:
            raise _Budget()
        # first undefined entry among live cosets
        pos = -1
        for k in range(used * ncols):
            if t[k] == UNDEF:
                pos = k
                break
        if pos < 0:
            if used == n:
                results.append(list(t[: n * ncols]))
            return
        c, a = divmod(pos, ncols)
        inv = a ^ 1
        candidates = [d for d in range(used) if t[d * ncols + inv] == UNDEF]
        if used < n:
            candidates.append(used)
        for d in candidates:
            t2 = list(t)
            stack = []
            assign(t2, c, a, d, stack)
            if not process(t2, stack):
                continue
            used2 = used + 1 if d == used else used
            if not _canonical(t2, ncols, used2):
                continue
            if exclude and _excluded_fixed(t2, ncols, used2, exclude):
                continue
            rec(t2, used2)

    t0 = [UNDEF] * (n * ncols)
    stack = []
    # an empty first row still needs the relator scan once it fills, handled by process()
    try:
        rec(t0, 1)
    except _Budget:
        return results, nodes, False
    return results, nodes, True


class _Budget(Exception):
    pass
