"""Command-line front end: verification sweeps, enumeration, SVG rendering.

Every verify subcommand emits a deterministic report (JSON or text) made
of check records {check, params, lhs, rhs, status} and exits 0 exactly
when all records pass.  Randomized sweeps draw from a seeded PRNG whose
seed is part of the report.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time
from fractions import Fraction

from . import detid, lgv, paths, regions
from .exactalg import RatFunc, substitute, RF_ZERO
from .paths import WeightMode


def _record(check: str, params: dict, lhs, rhs, ok: bool,
            millis: float | None = None) -> dict:
    rec = {
        "check": check,
        "params": params,
        "lhs": lhs.canonical() if isinstance(lhs, RatFunc) else str(lhs),
        "rhs": rhs.canonical() if isinstance(rhs, RatFunc) else str(rhs),
        "status": "pass" if ok else "fail",
    }
    if millis is not None:
        rec["millis"] = round(millis, 1)
    return rec


def _check(records: list, timings: bool, check: str, params: dict, lhs,
           rhs=None, ok=None):
    t0 = time.monotonic()
    if callable(lhs):
        lhs, rhs = lhs()
    if ok is None:
        ok = lhs == rhs
    ms = (time.monotonic() - t0) * 1000.0
    records.append(_record(check, params, lhs, rhs, ok,
                           ms if timings else None))


def _emit(records: list, args, extra: dict | None = None) -> int:
    records.sort(key=lambda r: (r["check"], json.dumps(r["params"],
                                                       sort_keys=True)))
    failed = sum(1 for r in records if r["status"] != "pass")
    doc = {"checks": records, "failed": failed,
           "passed": len(records) - failed}
    if extra:
        doc.update(extra)
    if args.format == "json":
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        lines = ["%-4s %s %s" % (r["status"], r["check"],
                                 json.dumps(r["params"], sort_keys=True))
                 for r in records]
        lines.append("passed %d, failed %d" % (doc["passed"], failed))
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if failed == 0 else 1


def _increasing_tuples(n: int, lo: int, hi: int):
    return itertools.combinations(range(lo, hi + 1), n)


# -- verify subcommands ----------------------------------------------------

def run_verify_half(args) -> int:
    records: list = []
    for n in range(1, args.max_m + 1):
        for a in _increasing_tuples(n, 0, args.max_c):
            for c in _increasing_tuples(n, 0, args.max_c):
                if any(ci < ai for ai, ci in zip(a, c)):
                    continue
                base = lgv.determinant(lgv.lgv_matrix_half(a, c))
                if base.is_zero():
                    continue
                for d in range(0, args.d_max + 1):
                    lhs, rhs = lgv.half_quotient_check(a, c, d)
                    ok = (lhs == rhs and not rhs.depends_on("X")
                          and not rhs.depends_on("Y"))
                    _check(records, args.timings, "half-shift-factorization",
                           {"a": list(a), "c": list(c), "d": d},
                           lhs, rhs, ok)
    return _emit(records, args)


def run_verify_quarter(args) -> int:
    records: list = []
    for b in range(0, args.max_b + 1):
        for c in range(2 * b + 1, args.max_c + 1):
            _check(records, args.timings, "quarter-closed-odd-start",
                   {"b": b, "c": c},
                   lambda b=b, c=c: (paths.gftwo(b, c),
                                     paths.gf_xy1(2 * b + 1, b, c, 0)))
            if b >= 1:
                _check(records, args.timings, "quarter-closed-mixed-start",
                       {"b": b, "c": c},
                       lambda b=b, c=c: (
                           paths.gfthree(b, c),
                           paths.gf_xy1(2 * b + 1, b, c, 0) * Fraction(1, 2)
                           + paths.gf_xy1(2 * b, b - 1, c, 0)))
    for m in range(1, args.max_m + 1):
        for x in range(0, args.max_x + 1):
            for a in _increasing_tuples(m, 1, args.max_a):
                _check(records, args.timings, "quarter-determinant-vs-brute",
                       {"a": list(a), "m": m, "x": x},
                       lambda m=m, x=x, a=a: (
                           lgv.quarter_family_gf(m, x, a),
                           lgv.family_gf_brute(
                               lgv.quarter_endpoints(m, x, a),
                               WeightMode.UNIT_XY_HALF_ZERO)))
    return _emit(records, args)


def _parse_include(text: str) -> detid.AdmissibleSeq:
    vals = tuple(int(t) for t in text.replace("(", "").replace(")", "")
                 .split(",") if t.strip())
    return detid.AdmissibleSeq(vals)


def run_verify_detid(args) -> int:
    records: list = []
    seqs = []
    for m in range(1, args.max_m + 1):
        seqs.extend(detid.enumerate_admissible(m))
    for text in args.include or []:
        seqs.append(_parse_include(text))
    for s in seqs:
        _check(records, args.timings, "determinant-identity",
               {"a": list(s.values)},
               lambda s=s: detid.theorem_check(s))
    for m in range(1, args.max_m + 1):
        for s in detid.enumerate_irreducible(m):
            rep = detid.verify_triangulization(s)
            _check(records, args.timings, "triangulization",
                   {"a": list(s.values)},
                   "ok" if rep["ok"] else "; ".join(rep["failures"]),
                   "ok", rep["ok"])
    return _emit(records, args)


def run_verify_lemma(args) -> int:
    rng = random.Random(args.seed)
    records: list = []
    for n in range(1, args.max_n + 1):
        for r in range(1, n + 1):
            for _ in range(args.samples):
                gammas = [Fraction(rng.randint(-9, 9),
                                   rng.randint(1, 9)) for _ in range(n - r)]
                total = detid.qbinom_identity_check(n, r, gammas)
                _check(records, args.timings, "qbinom-alternating-sum",
                       {"gammas": [str(g) for g in gammas], "n": n, "r": r},
                       total, RF_ZERO)
    return _emit(records, args, {"seed": args.seed})


# -- enumerate / render ----------------------------------------------------

def run_enumerate(args) -> int:
    if args.kind == "admissible":
        items = [list(s.values) for s in detid.enumerate_admissible(args.length)]
    elif args.kind == "dyck":
        items = ["".join(st.value for st in p.steps)
                 for p in detid.enumerate_dyck(args.length)]
    else:
        with open(args.region) as fh:
            region = regions.Region.from_json(json.load(fh))
        items = [[[o.value, r, i] for (o, r, i) in t.lozenges]
                 for t in regions.enumerate_tilings(region)]
    doc = {"count": len(items), "items": items, "kind": args.kind}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def run_render(args) -> int:
    with open(args.region) as fh:
        region = regions.Region.from_json(json.load(fh))
    tiling = None
    if args.tiling_index is not None:
        tilings = regions.enumerate_tilings(region)
        if not tilings:
            sys.stderr.write("region has no tilings\n")
            return 1
        if not (0 <= args.tiling_index < len(tilings)):
            sys.stderr.write("tiling index out of range (%d tilings)\n"
                             % len(tilings))
            return 1
        tiling = tilings[args.tiling_index]
    svg = regions.render_svg(region, tiling, show_paths=args.paths)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return 0


# -- selftest --------------------------------------------------------------

def run_selftest(args) -> int:
    """Condensed run over every verification family with bounded sweeps."""
    fast = args.fast
    records: list = []

    # closed form vs recursion
    hi = 3 if fast else 5
    for a in range(0, hi + 1):
        for c in range(a, hi + 1):
            for b in range(0, hi + 1):
                for d in range(0, b + 1):
                    _check(records, args.timings, "closed-vs-brute",
                           {"a": a, "b": b, "c": c, "d": d},
                           lambda a=a, b=b, c=c, d=d: (
                               paths.gf_closed(a, b, c, d),
                               paths.gf_brute(a, b, c, d)))

    # determinant vs family enumeration
    cmax = 3 if fast else 5
    for n in (1, 2):
        for a in _increasing_tuples(n, 0, cmax):
            for c in _increasing_tuples(n, 0, cmax):
                _check(records, args.timings, "lgv-vs-brute",
                       {"a": list(a), "c": list(c)},
                       lambda a=a, c=c: (
                           lgv.determinant(lgv.lgv_matrix_half(a, c)),
                           lgv.family_gf_brute(lgv.half_endpoints(a, c))))

    # tilings against the path determinant
    wmax, hmax = (2, 2) if fast else (2, 3)
    for w in range(1, wmax + 1):
        for h in range(1, hmax + 1):
            for rd in itertools.chain.from_iterable(
                    itertools.combinations(range(1, h + 1), k)
                    for k in range(h + 1)):
                ld = tuple(r for r in range(1, h + 1) if r not in rd)
                region = regions.Region(regions.RegionKind.HALF_HEXAGON, w, h,
                                        left_dents=ld, right_dents=rd)
                ep = regions.region_to_endpoints(region)
                _check(records, args.timings, "tiling-vs-determinant",
                       {"height": h, "left": list(ld), "right": list(rd),
                        "width": w},
                       lambda region=region, ep=ep: (
                           regions.tiling_gf(region),
                           lgv.family_gf_brute(ep)))

    # determinant identity incl. negative control
    mmax = 2 if fast else 3
    for m in range(1, mmax + 1):
        for s in detid.enumerate_admissible(m):
            _check(records, args.timings, "determinant-identity",
                   {"a": list(s.values)},
                   lambda s=s: detid.theorem_check(s))
    lhs, rhs = detid.theorem_check(detid.AdmissibleSeq((3,)))
    _check(records, args.timings, "determinant-identity-negative-control",
           {"a": [3]}, lhs, rhs, lhs != rhs)
    for m in range(1, mmax + 1):
        for s in detid.enumerate_irreducible(m):
            rep = detid.verify_triangulization(s)
            _check(records, args.timings, "triangulization",
                   {"a": list(s.values)},
                   "ok" if rep["ok"] else "; ".join(rep["failures"]),
                   "ok", rep["ok"])

    # alternating q-binomial sum
    rng = random.Random(args.seed)
    nmax = 4 if fast else 6
    for n in range(1, nmax + 1):
        for r in range(1, n + 1):
            gammas = [Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                      for _ in range(n - r)]
            _check(records, args.timings, "qbinom-alternating-sum",
                   {"gammas": [str(g) for g in gammas], "n": n, "r": r},
                   detid.qbinom_identity_check(n, r, gammas), RF_ZERO)

    # Catalan counts
    for m in range(1, 6):
        count = len(detid.enumerate_admissible(m))
        _check(records, args.timings, "admissible-catalan-count",
               {"m": m}, count, detid.catalan(m + 1), count == detid.catalan(m + 1))

    return _emit(records, args, {"seed": args.seed})


# -- argument parsing ------------------------------------------------------

def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", default=None, help="write the report to a file")
    p.add_argument("--timings", action="store_true",
                   help="include per-check timings (non-deterministic output)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dentedhex",
        description="Exact verification of lozenge-tiling generating-function "
                    "factorizations and the underlying determinant identity.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-half",
                       help="width-shift factorization for dented half hexagons")
    p.add_argument("--max-m", type=int, default=2, help="largest path count")
    p.add_argument("--max-c", type=int, default=4, help="largest endpoint value")
    p.add_argument("--d-max", type=int, default=2, help="largest width shift")
    _add_common(p)
    p.set_defaults(func=run_verify_half)

    p = sub.add_parser("verify-quarter",
                       help="quarter-hexagon closed forms against their definitions")
    p.add_argument("--max-b", type=int, default=2)
    p.add_argument("--max-c", type=int, default=7)
    p.add_argument("--max-m", type=int, default=2)
    p.add_argument("--max-x", type=int, default=1)
    p.add_argument("--max-a", type=int, default=4)
    _add_common(p)
    p.set_defaults(func=run_verify_quarter)

    p = sub.add_parser("verify-detid",
                       help="the q-Pochhammer determinant identity and its triangulization")
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--include", action="append", default=[],
                   help="extra sequence, e.g. --include 3 or --include 1,3,4")
    _add_common(p)
    p.set_defaults(func=run_verify_detid)

    p = sub.add_parser("verify-lemma",
                       help="the alternating q-binomial sum with random gamma vectors")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=run_verify_lemma)

    p = sub.add_parser("enumerate", help="list combinatorial objects as JSON")
    p.add_argument("kind", choices=("admissible", "dyck", "tilings"))
    p.add_argument("--length", type=int, default=3,
                   help="sequence length / Dyck half-length")
    p.add_argument("--region", default=None, help="region JSON file (tilings)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=run_enumerate)

    p = sub.add_parser("render", help="render a region (and one tiling) as SVG")
    p.add_argument("--region", required=True, help="region JSON file")
    p.add_argument("--tiling-index", type=int, default=None)
    p.add_argument("--paths", action="store_true",
                   help="overlay the nonintersecting paths")
    p.add_argument("--out", default=None)
    p.set_defaults(func=run_render)

    p = sub.add_parser("selftest", help="bounded run over all verification families")
    p.add_argument("--fast", action="store_true", help="smaller sweep bounds")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=run_selftest)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
