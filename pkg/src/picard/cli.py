"""Command-line interface.

Every subcommand builds one report (a JSON-serializable dict) and prints it
either as JSON (``--json``) or as a plain table.  Both renderings come from
the same dict, so they always carry the same values.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import __version__
from .errors import BudgetExceeded, DataError, ValidationError
from .lfunc import ZETA3_UPPER, l_at_three_upper, l_minus_two, l_minus_two_numeric
from .quadfield import class_number, make_field, ramified_primes
from .prasad import (
    LatticeDatum,
    ParahoricChoice,
    brauer_siegel_bound,
    census,
    covolume,
    find_preserved_form,
    load_witnesses,
    min_covolume_lower_bound,
    normalizer_index_bound,
    projective_chi,
    signature,
    sister_count,
    verify_torsion_witness,
    volume_from_chi,
)
from .prasad.census import CANDIDATE_FIELDS
from .prasad.witness import format_matrix

EXIT_VALIDATION = 2
EXIT_BUDGET = 3

# Euler characteristics quoted in the literature for comparison with computed values.
QUOTED_CHI = {
    1: Fraction(1, 32), 2: Fraction(3, 16), 5: Fraction(15, 8), 6: Fraction(23, 8),
    7: Fraction(3, 7), 11: Fraction(3, 8), 15: Fraction(1), 19: Fraction(11, 8),
    23: Fraction(3), 31: Fraction(6),
}

# Euler characteristics of two nonarithmetic lattices, kept for reference only.
NONARITHMETIC_CHI = (Fraction(109, 96), Fraction(227, 144))


def rat(x) -> str:
    return str(Fraction(x))


def vol(coefficient) -> str:
    return f"{Fraction(coefficient)} * pi^2"


def _primes(text):
    if not text:
        return []
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ValidationError(f"bad prime list {text!r}") from None


def _ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValidationError(f"bad integer list {text!r}") from None


def _datum(args) -> LatticeDatum:
    choices = {}
    for flag, choice in (("iwahori", ParahoricChoice.IWAHORI), ("v1", ParahoricChoice.V1),
                         ("v2", ParahoricChoice.V2)):
        for p in _primes(getattr(args, flag)):
            if p in choices:
                raise ValidationError(f"prime {p} given more than one parahoric choice")
            choices[p] = choice
    return LatticeDatum.make(args.d, choices)


def cmd_lvalue(args):
    f = make_field(args.d)
    exact = l_minus_two(f)
    rep = l_minus_two_numeric(f, args.terms)
    chi = -exact / 16
    res = {
        "field": {"d": f.d, "d_k": f.d_k, "w": f.w},
        "L(-2)": rat(exact),
        "chi_standard": rat(chi),
        "oracle": {
            "method": "functional equation, truncated L(3) series",
            "terms": args.terms,
            "numeric": rep.numeric,
            "tail_bound": rep.tail_bound,
            "agrees": rep.agrees,
        },
        "L(3)_upper": l_at_three_upper(f),
        "zeta(3)_upper": rat(ZETA3_UPPER),
    }
    notes = []
    if f.d in QUOTED_CHI:
        q = QUOTED_CHI[f.d]
        res["chi_quoted"] = rat(q)
        res["chi_matches_quoted"] = q == chi
        if q != chi:
            notes.append(f"FLAG: computed chi {chi} differs from the quoted value {q} "
                         f"(ratio {q / chi}); both oracles support the computed value")
    return res, notes


def cmd_volume(args):
    datum = _datum(args)
    f = datum.field
    mu = covolume(datum)
    bound = normalizer_index_bound(datum)
    chi_p = projective_chi(datum)
    cand = chi_p / bound
    res = {
        "field": {"d": f.d, "d_k": f.d_k},
        "choices": datum.label(),
        "lambda": {str(p): lam for p, lam in datum.lambdas().items()},
        "mu": rat(mu),
        "chi": rat(3 * mu),
        "center_order": 3 if f.d == 3 else 1,
        "chi_projective": rat(chi_p),
        "volume": vol(volume_from_chi(chi_p).coefficient),
        "normalizer_index_bound": bound,
        "candidate_chi": rat(cand),
        "candidate_volume": vol(volume_from_chi(cand).coefficient),
    }
    notes = ["chi = 3 mu; the projective value multiplies by the center of SU(2,1) over k",
             "candidate = projective chi divided by the normalizer index bound"]
    return res, notes


def cmd_bound(args):
    f = make_field(args.d)
    b = min_covolume_lower_bound(f)
    cls = class_number(f)
    res = {
        "field": {"d": f.d, "d_k": f.d_k, "w": f.w},
        "class_number": cls.h,
        "class_number_3part": cls.h3,
        "min_covolume_bound": rat(b.value),
        "quoted_constant": b.quoted,
        "formula_value": rat(b.formula_value),
        "brauer_siegel_n": args.n,
        "brauer_siegel_bound": brauer_siegel_bound(f, args.n),
        "sister_count": sister_count(f).count,
        "sister_count_exact": sister_count(f).exact,
        "ramified_primes": sorted(ramified_primes(f)),
    }
    if not b.quoted:
        # chi >= 3 * bound, so vol >= 8 pi^2 * bound
        res["min_volume_bound"] = vol(Fraction(f.f, 405))
    notes = []
    if b.quoted:
        notes.append(f"FLAG: quoted constant {b.value}; the displayed estimate gives {b.formula_value}")
    return res, notes


def cmd_census(args):
    d_list = _ints(args.list) if args.list else list(CANDIDATE_FIELDS)
    rep = census(d_list, p_max=args.p_max, minimality=not args.no_minimality, d_max=args.d_max)
    rows = []
    for v in rep.fields:
        row = {
            "d": v.d,
            "chi_standard": rat(v.chi_standard),
            "candidates": len(v.candidates),
            "survivors": [f"{lab} ({v.status(c.datum)})" for lab, c in _first_by_label(v)],
            "verdict": v.verdict,
            "reason": v.reason,
        }
        if v.d in rep.alternates:
            a = rep.alternates[v.d]
            row["alternate_reading"] = {"chi_standard": rat(a.chi_standard), "verdict": a.verdict,
                                        "reason": a.reason}
        rows.append(row)
    res = {"fields": rows}
    m = rep.minimality
    if m is not None:
        res["minimum"] = {
            "d": m.d, "datum": m.datum.label(), "covolume_over_bound": rat(m.ratio),
            "mu": rat(m.mu), "chi": rat(m.chi), "volume": vol(m.volume.coefficient),
            "minimal_lattices": m.minimal_lattices, "sister_count": m.sister_count,
        }
    notes = ["divisor: no datum gives chi = 1/n", "torsion: every candidate killed by a torsion witness"]
    if 7 in d_list:
        notes.append("FLAG: d=7 evaluated under the computed chi 1/7 and the quoted 3/7")
    return res, notes


def _first_by_label(v):
    seen = {}
    for c in v.survivors:
        seen.setdefault(c.datum.label(), c)
    return list(seen.items())


def _group_data(path):
    from .fpgroup import load_group_data

    p = Path(path)
    if not p.exists():
        name = p.name if p.suffix else p.name + ".grp"
        packaged = resources.files("picard.data").joinpath(name)
        if not packaged.is_file():
            raise DataError(f"no such group data file: {path}")
        return load_group_data(packaged), f"package:{name}"
    return load_group_data(p), str(p)


def _record_json(g, rec):
    return {
        "index": rec.index,
        "generators": rec.format_generators(g.generators),
        "homology": str(rec.abelian_invariants),
        "free_rank": rec.abelian_invariants.free_rank,
        "torsion_divisors": list(rec.abelian_invariants.torsion),
        "cusps": rec.cusp_count,
        "torsion_free": rec.torsion_free,
    }


def cmd_subgroups(args):
    from .fpgroup import low_index_subgroups, staged_search

    g, src = _group_data(args.data)
    exclude = g.torsion if args.exclude_torsion else []
    res = {"data": src}
    if args.staged:
        stages = _ints(args.staged)
        if len(stages) != 2 or stages[0] != 4:
            raise ValidationError("--staged expects 4,N (the index-4 intersection, then index N)")
        if stages[0] * stages[1] != args.index:
            raise ValidationError(f"--staged {args.staged} does not multiply to --index {args.index}")
        out = staged_search(g, stages[1], exclude=exclude, kernel=args.kernel, max_nodes=args.max_nodes)
        res["base"] = _record_json(g, out.base)
        res["subgroups_in_base"] = out.raw_count
        res["relative_exclusions"] = out.exclusions
        recs = out.records
    else:
        recs = low_index_subgroups(g, args.index, exclude, kernel=args.kernel,
                                   max_nodes=args.max_nodes)
    res["count"] = len(recs)
    res["subgroups"] = [_record_json(g, r) for r in recs]
    return res, []


def _subgroup(args):
    from .fpgroup import subgroup_record

    g, src = _group_data(args.data)
    words = [g.parse(w) for w in args.subgroup.split(",") if w.strip()]
    return g, src, subgroup_record(g, words, max_cosets=args.max_cosets)


def cmd_homology(args):
    g, src, rec = _subgroup(args)
    from .fpgroup import homology

    second = homology(g, rec, order=list(reversed(range(2 * g.presentation.ngens))))
    return {"data": src, "index": rec.index, "homology": str(rec.abelian_invariants),
            "free_rank": rec.abelian_invariants.free_rank,
            "torsion_divisors": list(rec.abelian_invariants.torsion),
            "second_transversal_agrees": second == rec.abelian_invariants}, []


def cmd_cusps(args):
    g, src, rec = _subgroup(args)
    from .fpgroup import cusp_count

    return {"data": src, "index": rec.index, "cusps": cusp_count(g, rec)}, []


def cmd_witness(args):
    ws = load_witnesses(args.data)
    rows = []
    for w in ws:
        chk = verify_torsion_witness(w) if w.form is not None else None
        form, _ = find_preserved_form(w)
        rows.append({
            "name": w.name,
            "d": w.d,
            "claimed_order": w.order,
            "order": chk.order_text if chk else None,
            "preserves_form": chk.preserves_form if chk else None,
            "determinant": str(w.determinant),
            "solved_form": format_matrix(form) if form else None,
            "solved_signature": list(signature(form)) if form else None,
            "applies_to": w.applies_to,
        })
    return {"data": args.data or "package:witnesses.json", "witnesses": rows}, []


COMMANDS = {
    "lvalue": cmd_lvalue, "volume": cmd_volume, "bound": cmd_bound, "census": cmd_census,
    "subgroups": cmd_subgroups, "homology": cmd_homology, "cusps": cmd_cusps,
    "witness": cmd_witness,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="picard", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--json", action="store_true", help="print the structured report")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lvalue", help="exact L_k(-2) with its numeric oracle")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--terms", type=int, default=100_000)

    p = sub.add_parser("volume", help="covolume, Euler characteristic and volume")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--iwahori", default="")
    p.add_argument("--v1", default="")
    p.add_argument("--v2", default="")

    p = sub.add_parser("bound", help="covolume and class number bounds")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-n", type=int, default=3)

    p = sub.add_parser("census", help="eliminate fields case by case")
    p.add_argument("--list", default="")
    p.add_argument("--p-max", type=int, default=20)
    p.add_argument("--d-max", type=int, default=100)
    p.add_argument("--no-minimality", action="store_true")

    p = sub.add_parser("subgroups", help="low-index subgroup search")
    p.add_argument("--data", required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--exclude-torsion", action="store_true")
    p.add_argument("--staged", default="")
    p.add_argument("--kernel", choices=["cython", "python"], default=None)
    p.add_argument("--max-nodes", type=int, default=0)

    for name in ("homology", "cusps"):
        p = sub.add_parser(name, help=f"{name} of a finite-index subgroup")
        p.add_argument("--data", required=True)
        p.add_argument("--subgroup", required=True, help="comma-separated words")
        p.add_argument("--max-cosets", type=int, default=1_000_000)

    p = sub.add_parser("witness", help="verify torsion witness matrices")
    p.add_argument("--data", default=None)
    return ap


def _run(args) -> dict:
    if args.command == "subgroups" and args.kernel is not None:
        from .fpgroup import KERNELS

        if args.kernel not in KERNELS:
            raise ValidationError(f"kernel {args.kernel!r} is not built")
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "json")}
    results, notes = COMMANDS[args.command](args)
    return {"command": args.command, "inputs": inputs, "results": results, "notes": notes}


def report(argv) -> dict:
    """Run a subcommand and return its structured report (exceptions propagate)."""
    return _run(build_parser().parse_args(argv))


def render(rep: dict) -> str:
    lines = [f"picard {rep['command']}"]

    def emit(key, value, indent):
        pad = "  " * indent
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            for k, v in value.items():
                emit(k, v, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for i, item in enumerate(value, 1):
                emit(f"[{i}]", item, indent + 1)
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: " + (", ".join(str(v) for v in value) or "none"))
        else:
            lines.append(f"{pad}{key}: {value}")

    for k, v in rep["results"].items():
        emit(k, v, 1)
    for n in rep["notes"]:
        lines.append(f"  note: {n}")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(sys.argv[1:] if argv is None else argv)
    try:
        rep = _run(args)
    except (ValidationError, DataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    print(json.dumps(rep, indent=2) if args.json else render(rep))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
