"""Command-line frontend.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 resource guard exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .kth_prime import d_k_sequence, delta_table, kth_verdict, strip_leading_zeros
from .period_oracle import DEFAULT_PERIOD_LIMIT, PeriodTooLarge, period_counts
from .sequence_analysis import local_extrema
from .verify import run_suites
from .window_density import (
    DEFAULT_GUARD,
    GuardExceeded,
    InvalidWindow,
    Window,
    WindowTooWide,
    delta_sequence,
    density_distribution,
    inclusion_exclusion_delta,
    scan_for_witness,
)

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


def _ratio_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _approx(x: Fraction) -> str:
    return f"{float(x):.12g}"


@contextlib.contextmanager
def _sink(path: Optional[str]):
    if path:
        with open(path, "w", newline="") as fh:
            yield fh
    else:
        yield sys.stdout


def _write_rows(args, header: List[str], rows: List[list], values: List[Fraction]) -> None:
    """CSV rows (with optional approx column) or the JSON records built from them."""
    keys = header[:3]
    records = [dict(zip(keys, row[:3]), value=_ratio_json(v)) for row, v in zip(rows, values)]
    with _sink(args.output) as out:
        if args.format == "json":
            json.dump(records, out, indent=2)
            out.write("\n")
            return
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header + (["approx"] if args.approx else []))
        for row, v in zip(rows, values):
            writer.writerow(row + ([_approx(v)] if args.approx else []))


def _emit_json(args, payload) -> None:
    with _sink(args.output) as out:
        json.dump(payload, out, indent=2)
        out.write("\n")


def cmd_delta(args) -> int:
    w = Window(args.n, args.m)
    if args.engine == "profile":
        value = density_distribution(w, args.guard)[args.r]
    elif args.engine == "ie":
        value = inclusion_exclusion_delta(w, args.r)
    else:
        value = period_counts(w, args.period_limit).ratio(args.r)
    if args.format == "json":
        _emit_json(args, {"n": args.n, "m": args.m, "r": args.r, "engine": args.engine,
                          "value": _ratio_json(value), "approx": _approx(value)})
    else:
        with _sink(args.output) as out:
            out.write(f"{value.numerator}/{value.denominator} {_approx(value)}\n")
    return EXIT_OK


def cmd_sequence(args) -> int:
    seq = delta_sequence(args.n, args.r, args.m_max, args.guard)
    rows = [[args.n, m, args.r, v.numerator, v.denominator] for m, v in seq]
    _write_rows(args, ["n", "m", "r", "numerator", "denominator"], rows, [v for _, v in seq])
    return EXIT_OK


def cmd_extrema(args) -> int:
    if args.m_max is None:
        scan = scan_for_witness(args.n, args.r, args.guard)
        seq, frontier = scan.sequence, scan.frontier
    else:
        seq, frontier = delta_sequence(args.n, args.r, args.m_max, args.guard), None
    labels = [m for m, _ in seq]
    rep = local_extrema([v for _, v in seq])
    payload = {
        "n": args.n,
        "r": args.r,
        "m_range": [labels[0], labels[-1]],
        "maxima": [list(run) for run in rep.maxima],
        "minima": [list(run) for run in rep.minima],
        "maxima_m": [[labels[a], labels[b]] for a, b in rep.maxima],
        "minima_m": [[labels[a], labels[b]] for a, b in rep.minima],
        "unimodal": rep.unimodal,
        "witness": list(rep.witness) if rep.witness else None,
        "witness_m": [labels[j] for j in rep.witness] if rep.witness else None,
    }
    if frontier is not None:
        payload["guard_frontier_m"] = frontier
    _emit_json(args, payload)
    return EXIT_OK


def cmd_kth(args) -> int:
    seq = d_k_sequence(args.k, args.i_max)
    lead, _ = strip_leading_zeros(seq.values)
    entries = seq.entries[lead:]
    rows = [
        [args.k, args.k - 1 + lead + offset, p, v.numerator, v.denominator]
        for offset, (p, v) in enumerate(entries)
    ]
    _write_rows(args, ["k", "i", "p", "numerator", "denominator"], rows, [v for _, v in entries])
    return EXIT_OK


def cmd_kth_verify(args) -> int:
    table = delta_table(args.i_max, max(21, args.k_max))
    verdicts = []
    ok = True
    for k in range(1, args.k_max + 1):
        v = kth_verdict(k, args.i_max, table)
        expected = k <= 3
        ok &= v.report.unimodal == expected
        entry = {"k": k, "unimodal": v.report.unimodal, "expected_unimodal": expected,
                 "maxima_runs": len(v.report.maxima)}
        if v.report.witness:
            values = strip_leading_zeros(d_k_sequence(k, args.i_max, table).values)[1]
            entry["witness_p"] = list(v.witness_primes)
            entry["witness_values"] = [_ratio_json(values[j]) for j in v.report.witness]
        verdicts.append(entry)
    if args.format == "json":
        _emit_json(args, {"i_max": args.i_max, "passed": ok, "verdicts": verdicts})
    else:
        with _sink(args.output) as out:
            for e in verdicts:
                status = "ok" if e["unimodal"] == e["expected_unimodal"] else "MISMATCH"
                label = "unimodal" if e["unimodal"] else "not unimodal"
                wit = f" witness p={tuple(e['witness_p'])}" if "witness_p" in e else ""
                out.write(f"k={e['k']}: {label}{wit} [{status}]\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_verify(args) -> int:
    summary = run_suites(args.profile, args.guard, args.suite or None)
    _emit_json(args, summary)
    return EXIT_OK if summary["passed"] else EXIT_VERIFY


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="profile state-space cap")
    p.add_argument("--period-limit", type=int, default=DEFAULT_PERIOD_LIMIT)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", help="write to this path instead of stdout")
    p.add_argument("--approx", action="store_true", help="append a decimal column to CSV output")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="divisor-density",
        description="Exact divisor-window and k-th prime densities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delta", parents=[common], help="one exact density")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--engine", choices=["profile", "ie", "period"], default="profile")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("sequence", parents=[common], help="delta_r(n, m) for m = n+2..m_max")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--m-max", type=int, required=True)
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("extrema", parents=[common], help="extrema report as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--m-max", type=int, default=None,
                   help="omit to scan until the first witness or the guard")
    p.set_defaults(func=cmd_extrema)

    p = sub.add_parser("kth", parents=[common], help="d_k(p_i) rows")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i-max", type=int, required=True)
    p.set_defaults(func=cmd_kth)

    p = sub.add_parser("kth-verify", parents=[common], help="unimodality verdicts for k = 1..k_max")
    p.add_argument("--k-max", type=int, default=20)
    p.add_argument("--i-max", type=int, default=200)
    p.set_defaults(func=cmd_kth_verify)

    p = sub.add_parser("verify", parents=[common], help="run the verification suites")
    p.add_argument("profile", choices=["quick", "full"], nargs="?", default="quick")
    p.add_argument("--suite", action="append", help="restrict to named suites")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.guard < 1 or args.period_limit < 1:
        parser.error("--guard and --period-limit must be >= 1")
    if getattr(args, "k", 1) < 1:
        parser.error("--k must be >= 1")
    try:
        return args.func(args)
    except (GuardExceeded, PeriodTooLarge, WindowTooWide) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InvalidWindow, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
