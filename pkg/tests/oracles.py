"""Brute-force oracles for the subgroup search."""

import itertools

from picard.fpgroup import todd_coxeter


def compose(p, q):
    return tuple(q[i] for i in p)


def elements(p):
    """The regular representation: permutations of the trivial subgroup's cosets."""
    reg = todd_coxeter(p)
    reps = reg.transversal()
    perms = [tuple(reg.word_permutation(w)) for w in reps]
    return reg, reps, perms


def all_subgroups(perms):
    ident = tuple(range(len(perms[0])))
    subs = {frozenset([ident])}
    frontier = list(subs)
    while frontier:
        nxt = []
        for h in frontier:
            for g in perms:
                if g in h:
                    continue
                new = set(h) | {g}
                grow = True
                while grow:
                    grow = False
                    for a in list(new):
                        for b in list(new):
                            c = compose(a, b)
                            if c not in new:
                                new.add(c)
                                grow = True
                k = frozenset(new)
                if k not in subs:
                    subs.add(k)
                    nxt.append(k)
        frontier = nxt
    return subs


def inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def conjugacy_classes(subs, perms):
    seen = set()
    out = []
    for h in sorted(subs, key=lambda s: sorted(s)):
        if h in seen:
            continue
        cls = {frozenset(compose(compose(inv(g), x), g) for x in h) for g in perms}
        seen |= cls
        out.append(cls)
    return out


def subgroup_of_table(table, reps, perms):
    return frozenset(perms[i] for i, w in enumerate(reps) if table.trace(0, w) == 0)


def transitive_class_count(n):
    """Conjugacy classes of index-n subgroups of F2 by brute force over S_n."""
    perms = list(itertools.permutations(range(n)))
    seen = set()
    classes = 0
    for a in perms:
        for b in perms:
            if (a, b) in seen:
                continue
            orb = {0}
            stack = [0]
            while stack:
                c = stack.pop()
                for g in (a, b):
                    for d in (g[c], g.index(c)):
                        if d not in orb:
                            orb.add(d)
                            stack.append(d)
            if len(orb) < n:
                continue
            orbit = set()
            for s in perms:
                si = inv(s)
                orbit.add((compose(compose(si, a), s), compose(compose(si, b), s)))
            seen |= orbit
            classes += 1
    return classes


def subgroup_classes(p):
    """Conjugacy classes of subgroups of a finite group, by closure in its regular representation."""
    reg, reps, perms = elements(p)
    return reps, perms, conjugacy_classes(all_subgroups(perms), perms)


def prime_order_indices(perms):
    """Positions in ``perms`` of the elements of prime order."""
    ident = tuple(range(len(perms[0])))
    out = []
    for i, g in enumerate(perms):
        k, x = 1, g
        while x != ident:
            x = compose(x, g)
            k += 1
        if k > 1 and all(k % q for q in range(2, k)):
            out.append(i)
    return out
