"""Compare the compiled and pure-Python low-index kernels.

    python benchmarks/bench_lowindex.py [--repeat N] [--json]

Each case runs both kernels on the same input, checks that they return the
same tables, and reports the best wall time of ``--repeat`` runs.
"""

import argparse
import json
import sys
import time
from importlib import resources

from picard.fpgroup import KERNELS, Presentation, load_group_data, search_tables


def _pres(gens, *rels):
    p = Presentation(list(gens), [])
    p.relators = [p.parse(r) for r in rels]
    return p


def cases():
    fp = load_group_data(resources.files("picard.data").joinpath("falbel_parker.grp"))
    free = _pres("ab")
    s4 = _pres("ab", "a^2", "b^3", "a b a b a b a b")
    tri = _pres("ab", "a^2", "b^3", "a b a b a b a b a b a b a b")  # (2,3,7) triangle group
    return [
        ("F2 index 6", free, 6, ()),
        ("S4 index 12", s4, 12, ()),
        ("(2,3,7) index 24", tri, 24, ()),
        ("Eisenstein-Picard index 12", fp.presentation, 12, ()),
        ("Eisenstein-Picard index 16, torsion excluded", fp.presentation, 16, fp.torsion),
    ]


def best_time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if "cython" not in KERNELS:
        print("compiled kernel not built; run `pip install --no-build-isolation -e .`", file=sys.stderr)
        return 1
    rows = []
    for name, pres, n, exclude in cases():
        timings = {}
        results = {}
        for kernel in ("python", "cython"):
            timings[kernel], results[kernel] = best_time(
                lambda k=kernel: search_tables(pres, n, exclude, kernel=k), args.repeat)
        if results["python"] != results["cython"]:
            raise AssertionError(f"kernels disagree on {name}")
        rows.append({"case": name, "subgroups": len(results["cython"]),
                     "python_s": round(timings["python"], 4), "cython_s": round(timings["cython"], 4),
                     "speedup": round(timings["python"] / max(timings["cython"], 1e-9), 1)})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'case':48} {'found':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}")
        for r in rows:
            print(f"{r['case']:48} {r['subgroups']:>6} {r['python_s']:>10.4f} {r['cython_s']:>10.4f} "
                  f"{r['speedup']:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
