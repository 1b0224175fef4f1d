"""Command-line front end. Data goes to stdout (or --output), progress to stderr."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable

from . import __version__
from .analysis import (
    AtlasReport,
    PQParams,
    build_atlas,
    classify,
    closed_form_heights,
    height_profile,
    predict,
)
from .cyclotomic import phi, psi
from .lattice import DEFAULT_ENUMERATION_BUDGET, EnumerationBudgetExceeded, enumerate_divisors, p2q_shape
from .ntheory import as_index, primes_upto
from .polyring import IntPoly, coeff_set, format_set, format_sparse, height_minus, height_plus

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_DEGREE_BUDGET = 10 ** 6


class BudgetError(Exception):
    pass


@dataclass(frozen=True)
class SweepConfig:
    prime_cap_p: int
    prime_cap_q: int
    degree_budget: int
    workers: int
    output_format: str
    output_path: str | None

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.degree_budget < 1:
            raise ValueError("degree budget must be at least 1")

    def pairs(self) -> list[tuple[int, int]]:
        return [(p, q)
                for p in primes_upto(self.prime_cap_p)
                for q in primes_upto(self.prime_cap_q)
                if p != q and p * p * q <= self.degree_budget]


# ------------------------------------------------------------------ rendering

def csv_set(values: Iterable[int]) -> str:
    """'lo..hi' for an integer interval, else a brace list."""
    v = sorted(set(values))
    if len(v) > 1 and v[-1] - v[0] + 1 == len(v):
        return f"{v[0]}..{v[-1]}"
    return "{" + ",".join(map(str, v)) + "}"


def _flags(v) -> dict:
    return {"flat": v.is_flat, "convex": v.is_convex, "stronglyConvex": v.is_strongly_convex,
            "missing": list(v.missing)}


def _poly_row(n: int, name: str, f: IntPoly, dense: bool) -> dict:
    c = coeff_set(f)
    hp, hm = height_plus(f), height_minus(f)
    row = {"n": n, "polynomial": name, "degree": f.degree, "terms": sum(1 for a in f.coeffs if a),
           "height": [max(hp, -hm), hp, hm], "coefficientSet": list(c.values),
           **_flags(classify(f)), "sparse": format_sparse(f)}
    if dense:
        row["dense"] = list(f.coeffs)
    return row


def _atlas_rows(rep: AtlasReport) -> list[dict]:
    return [{"p": rep.p, "q": rep.q, "n": rep.n, "k": r.k,
             "predicted": list(r.predicted), "computed": list(r.computed), "match": r.match,
             "height": [r.height, r.height_plus, r.height_minus], **_flags(r.verdict)}
            for r in rep.rows]


SET_COLUMNS = frozenset({"coefficientSet", "predicted", "computed"})


def _flatten(row: dict) -> dict:
    out = dict(row)
    h = out.pop("height", None)
    if isinstance(h, list):
        out["height"], out["heightPlus"], out["heightMinus"] = h
    elif h is not None:
        out["height"] = h
    return out


def _columns(columns: list[str]) -> list[str]:
    out = []
    for c in columns:
        out += ["height", "heightPlus", "heightMinus"] if c == "height3" else [c]
    return out


def _cell(v, column: str, text: bool = False):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-" if text else ""
    if isinstance(v, list):
        if column in SET_COLUMNS:
            return format_set(v) if text else csv_set(v)
        return " ".join(map(str, v)) if v or not text else "-"
    return v


def _csv(rows: list[dict], columns: list[str]) -> str:
    cols = _columns(columns)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in map(_flatten, rows):
        w.writerow([_cell(r.get(c), c) for c in cols])
    return buf.getvalue()


def _text_table(rows: list[dict], columns: list[str]) -> str:
    cols = _columns(columns)
    cells = [[str(_cell(r.get(c), c, text=True)) for c in cols] for r in map(_flatten, rows)]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------- workers

def _run_parallel(fn: Callable, items: list, workers: int, label: str):
    """Map in input order; progress lines on stderr when it is a terminal."""
    show = sys.stderr.isatty()
    total = len(items)

    def progress(i):
        if show:
            print(f"\r{label} {i}/{total}", end="" if i < total else "\n", file=sys.stderr, flush=True)

    if workers == 1 or total <= 1:
        out = []
        for i, x in enumerate(items, 1):
            out.append(fn(x))
            progress(i)
        return out
    with ProcessPoolExecutor(max_workers=workers) as ex:
        out = []
        for i, r in enumerate(ex.map(fn, items, chunksize=max(1, total // (8 * workers))), 1):
            out.append(r)
            progress(i)
        return out


def _atlas_job(pq):
    return build_atlas(*pq)


def _heights_job(args):
    n, budget = args
    idx = as_index(n)
    kind = _kind(n)
    try:
        hp = height_profile(n, budget)
    except EnumerationBudgetExceeded:
        return {"n": n, "kind": kind, "divisors": 1 << idx.num_divisors, "skipped": True}
    row = {"n": n, "kind": kind, "divisors": hp.divisor_count, "skipped": False,
           "B": hp.b, "Bplus": hp.b_plus, "Bminus": hp.b_minus, "Bprime": hp.b_prime,
           "C": hp.balanced_c, "flat": hp.flat_count}
    cf = closed_form_heights(n) if n > 1 else None
    if cf is not None:
        keys = {"b": "B", "b_plus": "Bplus", "b_minus": "Bminus", "b_prime": "Bprime", "balanced_c": "C"}
        row["closedForm"] = {keys[k]: v for k, v in cf.items()}
        row["match"] = all(row[keys[k]] == v for k, v in cf.items())
    return row


def _flat_job(args):
    n, budget = args
    try:
        hp = height_profile(n, budget)
    except EnumerationBudgetExceeded:
        return {"n": n, "kind": _kind(n), "skipped": True}
    return {"n": n, "kind": _kind(n), "skipped": False, "flat": hp.flat_count, "divisors": hp.divisor_count}


def _scan_job(args):
    n, target = args
    f = phi(n) if target == "phi" else psi(n)
    v = classify(f)
    if v.is_convex:
        return None
    c = coeff_set(f)
    return {"n": n, "target": target, "primes": list(as_index(n).primes), "coefficientSet": list(c.values),
            "height": max(c.hi, -c.lo), "missing": list(v.missing)}


def _kind(n: int) -> str:
    idx = as_index(n)
    f = idx.factors
    if n == 1:
        return "one"
    if len(f) == 1:
        return "p^e"
    if len(f) == 2 and f[0][1] == f[1][1] == 1:
        return "pq"
    if p2q_shape(idx) is not None:
        return "p^2q"
    return "other"


# ------------------------------------------------------------------ commands

@dataclass
class Result:
    command: str
    params: dict
    rows: list
    columns: list
    mismatches: int = 0
    pairs: int | None = None
    exit_code: int = EXIT_OK
    text: str | None = None


def cmd_poly(args, which: str) -> Result:
    n = args.n
    if n > args.degree_budget:
        raise BudgetError(f"n = {n} exceeds the degree budget {args.degree_budget}")
    f = phi(n) if which == "phi" else psi(n)
    name = ("Phi_" if which == "phi" else "Psi_") + str(n)
    row = _poly_row(n, name, f, args.dense)
    lines = [name,
             f"degree: {row['degree']}",
             f"terms: {row['terms']}",
             "height: {} (max {}, min {})".format(*row["height"]),
             f"C = {format_set(row['coefficientSet'])}",
             "flat: {}  convex: {}  strongly convex: {}".format(
                 *(_cell(row[k], k) for k in ("flat", "convex", "stronglyConvex"))),
             f"missing: {_cell(row['missing'], 'missing', text=True)}",
             f"{name} = {row['sparse']}"]
    if args.dense:
        lines.append("dense: " + " ".join(map(str, f.coeffs)))
    cols = ["n", "polynomial", "degree", "terms", "height3", "coefficientSet",
            "flat", "convex", "stronglyConvex", "missing", "sparse"] + (["dense"] if args.dense else [])
    return Result(which, {"n": n, "dense": args.dense}, [row], cols, text="\n".join(lines) + "\n")


def cmd_divisors(args) -> Result:
    n = args.n
    if n > args.degree_budget:
        raise BudgetError(f"n = {n} exceeds the degree budget {args.degree_budget}")
    rows = []
    mismatches = 0
    for di, f in enumerate_divisors(n, args.enum_budget):
        hp, hm = height_plus(f), height_minus(f)
        c = coeff_set(f).values
        pred = predict(n, di.mask) if n > 1 else None
        row = {"n": n, "mask": di.mask, "factors": list(di.selected),
               "degree": f.degree, "coefficientSet": list(c),
               "height": [max(hp, -hm), hp, hm], **_flags(classify(f))}
        if pred is not None:
            row["predicted"] = list(pred.values())
            row["match"] = row["predicted"] == row["coefficientSet"]
            mismatches += not row["match"]
        if args.dense:
            row["dense"] = list(f.coeffs)
        rows.append(row)
    cols = ["n", "mask", "factors", "degree", "coefficientSet", "predicted", "match", "height3",
            "flat", "convex", "stronglyConvex", "missing"] + (["dense"] if args.dense else [])
    return Result("divisors", {"n": n}, rows, cols, mismatches=mismatches,
                  exit_code=EXIT_MISMATCH if mismatches else EXIT_OK)


def cmd_atlas(args) -> Result:
    cfg = SweepConfig(args.p_cap, args.q_cap, args.degree_budget, args.workers, args.format, args.output)
    pairs = cfg.pairs()
    reports = _run_parallel(_atlas_job, pairs, cfg.workers, "atlas")
    mism = sum(len(r.mismatches) for r in reports)
    params = {"pCap": cfg.prime_cap_p, "qCap": cfg.prime_cap_q, "degreeBudget": cfg.degree_budget}
    cols = ["p", "q", "n", "k", "predicted", "computed", "match", "height3",
            "flat", "convex", "stronglyConvex", "missing"]
    if args.format == "json":
        rows = [{"p": r.p, "q": r.q, "n": r.n, "pStar": PQParams(r.p, r.q).p_star,
                 "mismatches": len(r.mismatches), "rows": _atlas_rows(r)} for r in reports]
    else:
        rows = [row for r in reports for row in _atlas_rows(r)]
    lines = []
    for r in reports:
        lines.append(f"p={r.p} q={r.q} n={r.n}: {64 - len(r.mismatches)}/64 match")
        for m in r.mismatches:
            lines.append(f"  k={m.k} predicted {format_set(m.predicted)} computed {format_set(m.computed)}")
    lines.append(f"pairs: {len(reports)}  mismatches: {mism}")
    return Result("atlas", params, rows, cols, mismatches=mism, pairs=len(reports),
                  exit_code=EXIT_MISMATCH if mism else EXIT_OK, text="\n".join(lines) + "\n")


def _range(args) -> list[int]:
    if args.end < args.start:
        raise argparse.ArgumentTypeError(f"empty range {args.start}..{args.end}")
    return list(range(args.start, args.end + 1))


def cmd_heights(args) -> Result:
    ns = [n for n in _range(args) if n <= args.degree_budget]
    rows = _run_parallel(_heights_job, [(n, args.enum_budget) for n in ns], args.workers, "heights")
    mism = sum(1 for r in rows if r.get("match") is False)
    cols = ["n", "kind", "divisors", "skipped", "B", "Bplus", "Bminus", "Bprime", "C", "flat", "match"]
    return Result("heights", {"start": args.start, "end": args.end}, rows, cols, mismatches=mism,
                  exit_code=EXIT_MISMATCH if mism else EXIT_OK)


def cmd_flat_count(args) -> Result:
    ns = [n for n in _range(args) if n <= args.degree_budget]
    rows = _run_parallel(_flat_job, [(n, args.enum_budget) for n in ns], args.workers, "flat-count")
    return Result("flat-count", {"start": args.start, "end": args.end}, rows,
                  ["n", "kind", "skipped", "divisors", "flat"])


def cmd_convexity_scan(args) -> Result:
    ns = [n for n in _range(args) if n <= args.degree_budget]
    found = _run_parallel(_scan_job, [(n, args.target) for n in ns], args.workers, "scan")
    rows = [r for r in found if r is not None]
    return Result("convexity-scan", {"start": args.start, "end": args.end, "target": args.target},
                  rows, ["n", "target", "primes", "coefficientSet", "height", "missing"])


# ------------------------------------------------------------------- plumbing

def _positive(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def _default_workers() -> int:
    env = os.environ.get("CYCLODIV_WORKERS")
    if not env:
        return 1
    try:
        return _positive(env)
    except argparse.ArgumentTypeError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--workers", type=_positive, default=_default_workers(),
                        help="process count (default: $CYCLODIV_WORKERS or 1)")
    common.add_argument("--degree-budget", type=_positive, default=DEFAULT_DEGREE_BUDGET,
                        help="largest n (or p^2 q) to construct")
    common.add_argument("--enum-budget", type=_positive, default=DEFAULT_ENUMERATION_BUDGET,
                        help="largest number of divisors to enumerate")
    common.add_argument("--output", metavar="PATH", help="write data here instead of stdout")
    common.add_argument("--dense", action="store_true", help="include full coefficient lists")
    common.add_argument("--timing", action="store_true", help="report elapsed time in JSON summaries")

    parser = argparse.ArgumentParser(prog="cyclodiv", description="Coefficient sets of divisors of x^n - 1.")
    parser.add_argument("--version", action="version", version=f"cyclodiv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (("phi", "the n-th cyclotomic polynomial"),
                           ("psi", "the n-th inverse cyclotomic polynomial")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("n", type=_positive)
        sp.set_defaults(func=lambda a, which=name: cmd_poly(a, which))

    sp = sub.add_parser("divisors", parents=[common], help="every monic divisor of x^n - 1")
    sp.add_argument("n", type=_positive)
    sp.set_defaults(func=cmd_divisors)

    sp = sub.add_parser("atlas", parents=[common], help="predicted vs computed C(f_k) over prime pairs")
    sp.add_argument("--p-cap", type=_positive, default=50)
    sp.add_argument("--q-cap", type=_positive, default=50)
    sp.set_defaults(func=cmd_atlas)

    for name, func, helptext in (("heights", cmd_heights, "B, B+, B-, B', C per n"),
                                 ("flat-count", cmd_flat_count, "number of flat divisors per n"),
                                 ("convexity-scan", cmd_convexity_scan, "n whose Phi_n or Psi_n is not convex")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("start", type=_positive)
        sp.add_argument("end", type=_positive, nargs="?")
        if name == "convexity-scan":
            sp.add_argument("--target", choices=("phi", "psi"), default="phi")
        sp.set_defaults(func=func)
    return parser


def render(res: Result, fmt: str, elapsed_ms: int | None) -> str:
    if fmt == "json":
        doc = {"version": __version__, "command": res.command, "params": res.params, "rows": res.rows,
               "summary": {"pairs": res.pairs if res.pairs is not None else len(res.rows),
                           "mismatches": res.mismatches, "elapsedMillis": elapsed_ms}}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        return _csv(res.rows, res.columns)
    if res.text is not None:
        return res.text
    body = _text_table(res.rows, res.columns) if res.rows else "(no rows)\n"
    return body + f"rows: {len(res.rows)}  mismatches: {res.mismatches}\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    if getattr(args, "end", 0) is None:
        args.end = args.start
    t0 = time.perf_counter()
    try:
        res = args.func(args)
    except argparse.ArgumentTypeError as e:
        print(f"cyclodiv: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (EnumerationBudgetExceeded, BudgetError) as e:
        print(f"cyclodiv: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    elapsed = round((time.perf_counter() - t0) * 1000) if args.timing else None
    out = render(res, args.format, elapsed)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    if res.mismatches:
        print(f"cyclodiv: {res.mismatches} mismatch(es)", file=sys.stderr)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
