"""Low-index search against brute-force subgroup enumeration."""

import pytest

from picard.errors import BudgetExceeded, ValidationError
from picard.fpgroup import KERNELS, canonical_key, low_index_subgroups, search_tables, todd_coxeter

from conftest import SMALL_GROUPS, pres
from oracles import prime_order_indices, subgroup_classes, subgroup_of_table, transitive_class_count


@pytest.mark.parametrize("name", sorted(SMALL_GROUPS))
def test_search_matches_brute_force(name):
    p, order = SMALL_GROUPS[name]
    reps, perms, classes = subgroup_classes(p)
    for n in range(1, order + 1):
        if order % n:
            assert search_tables(p, n) == []
            continue
        want = [c for c in classes if len(next(iter(c))) == order // n]
        got = [subgroup_of_table(t, reps, perms) for t in search_tables(p, n)]
        assert len(got) == len(want)
        # each found subgroup lies in a different class, and every class is hit
        hit = [next(i for i, c in enumerate(want) if h in c) for h in got]
        assert sorted(hit) == list(range(len(want)))


@pytest.mark.parametrize("name", ["S3", "A4", "Q8", "S4", "SL(2,3)", "D6", "C2xA4"])
def test_exclusion_matches_brute_force(name):
    p, order = SMALL_GROUPS[name]
    reps, perms, classes = subgroup_classes(p)
    torsion = prime_order_indices(perms)
    exclude = [reps[i] for i in torsion]
    for n in range(1, order + 1):
        if order % n:
            continue
        want = [c for c in classes if len(next(iter(c))) == order // n
                and not any(perms[i] in h for h in c for i in torsion)]
        tables = search_tables(p, n, exclude)
        assert len(tables) == len(want)
        for t in tables:
            for w in exclude:
                assert not t.fixed_points(w)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 3), (3, 7), (4, 26)])
def test_free_group_counts(n, count):
    free = pres("ab")
    assert len(search_tables(free, n)) == count
    assert transitive_class_count(n) == count


def test_free_group_index_five_six():
    free = pres("ab")
    assert [len(search_tables(free, n)) for n in (5, 6)] == [97, 624]


def test_cyclic_three_excluding_generator():
    p = pres("a", "a^3")
    assert len(search_tables(p, 3, [p.parse("a")])) == 1
    assert search_tables(p, 1, [p.parse("a")]) == []


def test_output_is_canonical_and_sorted():
    p, _ = SMALL_GROUPS["S4"]
    tabs = search_tables(p, 4)
    assert [t.rows for t in tabs] == sorted(t.rows for t in tabs)
    keys = [canonical_key(t) for t in tabs]
    assert len(set(keys)) == len(keys)
    for t in tabs:
        t.check(p.relators)


def test_records_have_invariants():
    p, _ = SMALL_GROUPS["A4"]
    recs = low_index_subgroups(p, 4)
    assert len(recs) == 1
    r = recs[0]
    assert r.index == 4 and str(r.abelian_invariants) == "Z/3"
    assert todd_coxeter(p, r.generators).n == 4


def test_budget_and_validation():
    free = pres("ab")
    with pytest.raises(BudgetExceeded):
        search_tables(free, 6, max_nodes=10)
    with pytest.raises(ValidationError):
        search_tables(free, 0)


@pytest.mark.skipif("cython" not in KERNELS, reason="compiled kernel not built")
@pytest.mark.parametrize("name,n", [("S4", 4), ("C2xA4", 6), ("SL(2,3)", 8)])
def test_kernels_agree(name, n):
    p, _ = SMALL_GROUPS[name]
    assert search_tables(p, n, kernel="python") == search_tables(p, n, kernel="cython")


@pytest.mark.skipif("cython" not in KERNELS, reason="compiled kernel not built")
def test_kernels_agree_free_and_fp(fp_group):
    free = pres("ab")
    for n in range(1, 6):
        assert search_tables(free, n, kernel="python") == search_tables(free, n, kernel="cython")
    for n in range(1, 7):
        a = search_tables(fp_group, n, fp_group.torsion[:4], kernel="python")
        assert a == search_tables(fp_group, n, fp_group.torsion[:4], kernel="cython")


def test_forced_kernel(monkeypatch):
    from picard.fpgroup import default_kernel
    monkeypatch.setenv("PICARD_KERNEL", "python")
    assert default_kernel() == "python"
    monkeypatch.setenv("PICARD_KERNEL", "fortran")
    with pytest.raises(ValidationError):
        default_kernel()
