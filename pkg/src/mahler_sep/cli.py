"""Command-line front end: ``mahler-sep {analyze,family,sweep,lemmas,window}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict

from . import bounds, families
from .measures import discriminant_exact
from .poly import Backing, parse_polynomial_json, parse_roots_json
from .rootfind import RootFindingError, SolverConfig, find_roots
from .sweep import EnsembleSpec, KINDS, rows_to_csv, run_ensemble, summarize

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_NONSEPARABLE = 2
EXIT_SOLVER = 3
EXIT_USAGE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would collide with "non-separable"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def format_float(v: float) -> str:
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Infinity" if v > 0 else "-Infinity"
    s = format(v, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float at 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, complex):
        return dumps([obj.real, obj.imag], indent, _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj):
            return "[" + ", ".join(dumps(x) for x in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item(), indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_input(args):
    """Return ``(polynomial or None, roots or None)`` from whichever flag was given."""
    given = [x for x in (args.input, args.coeffs, args.roots) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --input, --coeffs, --roots")
    try:
        if args.coeffs is not None:
            return parse_polynomial_json({"coeffs": json.loads(args.coeffs)}), None
        if args.roots is not None:
            return None, parse_roots_json(json.loads(args.roots))
        with open(args.input, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(str(exc)) from exc
    if isinstance(obj, dict) and "roots" in obj:
        return None, parse_roots_json(obj["roots"])
    if isinstance(obj, list):
        return parse_polynomial_json({"coeffs": obj}), None
    return parse_polynomial_json(obj), None


def cmd_analyze(args) -> int:
    p, rs = _load_input(args)
    if p is not None and p.degree < 2:
        raise UsageError("degree must be at least 2")
    if rs is not None and len(rs) < 2:
        raise UsageError("need at least two roots")
    if p is not None and p.backing is Backing.EXACT and discriminant_exact(p) == 0:
        print("non-separable: discriminant is zero (repeated root)", file=sys.stderr)
        return EXIT_NONSEPARABLE
    if p is not None:
        try:
            rs = find_roots(p, SolverConfig(precision=args.precision))
        except RootFindingError as exc:
            print(f"solver failure: {exc}", file=sys.stderr)
            return EXIT_SOLVER
    try:
        rep = bounds.check_all(rs, p)
    except bounds.NotSeparableError as exc:
        print(f"non-separable: {exc}", file=sys.stderr)
        return EXIT_NONSEPARABLE

    m = rep.measured
    if args.format == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["bound_id", "side", "value", "applicable", "satisfied", "margin"])
        for e in rep.entries:
            wr.writerow([e.bound_id, e.side,
                         "" if e.value is None else format(e.value, ".17g"),
                         int(e.applicable),
                         "" if e.satisfied is None else int(e.satisfied),
                         "" if e.margin is None else format(e.margin, ".17g")])
        _emit(buf.getvalue(), args.out)
    else:
        doc = rep.to_json()
        doc["signature"] = list(m.signature) if m.signature else None
        doc["log_mahler"] = m.log_mahler
        doc["log_abs_disc"] = m.log_abs_disc
        doc["roots"] = [[z.real, z.imag] for z in rs.roots]
        doc["residual_bound"] = list(rs.residual_bound)
        doc["all_satisfied"] = rep.all_satisfied
        _emit(dumps(doc) + "\n", args.out)
    if not rep.all_satisfied:
        ids = ", ".join(e.bound_id for e in rep.violations)
        print(f"bound violation: {ids}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


_FIXED_DEGREE = {"quartic": 4, "cubic_extremal": 3}


def cmd_family(args) -> int:
    kind = args.kind
    n = args.n if args.n is not None else _FIXED_DEGREE.get(kind)
    if n is None:
        raise UsageError(f"--n is required for family {kind}")
    t = 1.0 if args.t is None else args.t
    try:
        inst = families.build(families.FamilySpec(kind, n, t))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(dumps(families.family_json(inst)) + "\n", args.out)
    return EXIT_OK


def _degree_range(args):
    if args.degrees:
        lo, sep, hi = args.degrees.partition("-")
        try:
            return int(lo), int(hi if sep else lo)
        except ValueError as exc:
            raise UsageError(f"bad --degrees {args.degrees!r}; expected A-B") from exc
    if args.n is not None:
        return args.n, args.n
    raise UsageError("give --degrees A-B or --n")


def cmd_sweep(args) -> int:
    lo, hi = _degree_range(args)
    try:
        spec = EnsembleSpec(args.kind, lo, hi, args.count, args.seed, args.height, args.radius)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.out:
        # fail before the expensive part if the path is unwritable
        try:
            open(args.out, "a").close()
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from exc
    results = run_ensemble(spec, args.workers)
    text = rows_to_csv(results)
    summary = summarize(spec, results)
    if args.out:
        _emit(text, args.out)
        with open(args.out + ".summary.json", "w", encoding="utf-8") as fh:
            fh.write(dumps(summary) + "\n")
        sys.stdout.write(dumps(summary) + "\n")
    else:
        sys.stdout.write(text)
        sys.stderr.write(dumps(summary) + "\n")
    return EXIT_VIOLATION if summary["violations"] else EXIT_OK


def lemma_rows(n_max: int, m_max: int) -> list[dict]:
    rows = []
    for n in range(3, n_max + 1):
        rows.append(("central_binomial", n, bounds.central_binomial_check(n)))
    for m in range(1, m_max + 1):
        rows.append(("wendel", m, bounds.wendel_check(m)))
    for n in range(1, n_max + 1):
        rows.append(("robbins", n, bounds.robbins_check(n)))
    return [{"check": name, "arg": k, "lhs": c.lhs, "rhs": c.rhs, "ok": c.ok} for name, k, c in rows]


def cmd_lemmas(args) -> int:
    if args.n_max < 3:
        raise UsageError("--n-max must be >= 3")
    rows = lemma_rows(args.n_max, args.m_max)
    if args.format == "json":
        _emit(dumps(rows) + "\n", args.out)
    else:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["check", "arg", "lhs", "rhs", "ok"])
        for r in rows:
            wr.writerow([r["check"], r["arg"], format(r["lhs"], ".17g"),
                         format(r["rhs"], ".17g"), int(r["ok"])])
        _emit(buf.getvalue(), args.out)
    bad = [r for r in rows if not r["ok"]]
    for r in bad:
        print(f"failed: {r['check']}({r['arg']})", file=sys.stderr)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_window(args) -> int:
    if args.n is None or args.mu is None:
        raise UsageError("--n and --mu are required")
    try:
        w = bounds.lehmer_window(args.n, args.mu)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(dumps(asdict(w)) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="mahler-sep", description="Root separation vs. Mahler measure toolkit.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt_default="json"):
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--format", choices=("json", "csv"), default=fmt_default)

    a = sub.add_parser("analyze", help="measure one polynomial and check every bound")
    a.add_argument("--input", help="JSON file: {\"coeffs\": [...]}, {\"roots\": [...]} or a list")
    a.add_argument("--coeffs", help="JSON coefficient list, constant term first")
    a.add_argument("--roots", help="JSON root list of [re, im] pairs")
    a.add_argument("--precision", type=int, default=16, help="working digits for root finding")
    common(a)
    a.set_defaults(func=cmd_analyze)

    f = sub.add_parser("family", help="emit an extremal family instance")
    f.add_argument("--kind", required=True, choices=[k.value for k in families.FamilyKind])
    f.add_argument("--n", type=int)
    f.add_argument("--t", type=float, help="scale (r for arithmetic_progression)")
    common(f)
    f.set_defaults(func=cmd_family)

    s = sub.add_parser("sweep", help="randomized ensemble sweep to CSV")
    s.add_argument("--kind", choices=KINDS, default="int_coeff")
    s.add_argument("--degrees", help="degree range A-B")
    s.add_argument("--n", type=int, help="single degree")
    s.add_argument("--count", type=int, default=100, help="samples per degree")
    s.add_argument("--seed", type=int, default=42)
    s.add_argument("--height", type=int, default=10)
    s.add_argument("--radius", type=float, default=1.0)
    s.add_argument("--workers", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    lm = sub.add_parser("lemmas", help="run the analytic inequality checks")
    lm.add_argument("--n-max", type=int, default=400)
    lm.add_argument("--m-max", type=int, default=170)
    common(lm, fmt_default="csv")
    lm.set_defaults(func=cmd_lemmas)

    w = sub.add_parser("window", help="separation window for a Lehmer counterexample")
    w.add_argument("--n", type=int)
    w.add_argument("--mu", type=float)
    common(w)
    w.set_defaults(func=cmd_window)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mahler-sep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # malformed coefficients or roots
        print(f"mahler-sep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
