"""Command-line front end.

Subcommands: qfib, verify, scan, density, stats, check.  Exit codes:
0 ok, 1 congruence mismatch or failed revalidation, 2 usage or domain
error, 3 inapplicable input, 4 I/O error.  Batch-oriented: reports are
written atomically and are byte-identical for any worker count.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import __version__, congruence, density, report, stats
from .errors import QFibError, TheoremViolation
from .modarith import reduce_rational
from .qfib import qfib_mod_recurrence, qfib_poly

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INAPPLICABLE = 3
EXIT_IO = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfibcong",
        description="q-Fibonacci congruence toolkit: evaluate, verify, scan, estimate densities.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", metavar="FILE",
                        help="flat key = value file supplying defaults; flags win")
    sub = parser.add_subparsers(dest="command", required=True)

    p_qfib = sub.add_parser("qfib", help="evaluate F_n(q) exactly or mod p")
    p_qfib.add_argument("n", type=int)
    p_qfib.add_argument("--poly", action="store_true", default=None,
                        help="print the exact polynomial")
    p_qfib.add_argument("--q", metavar="RAT", help="rational evaluation point")
    p_qfib.add_argument("--p", type=int, help="odd prime modulus")

    p_verify = sub.add_parser("verify", help="check the congruence at one prime")
    p_verify.add_argument("--alpha", metavar="RAT", required=True)
    p_verify.add_argument("--p", type=int, required=True)
    p_verify.add_argument("--paths", help="comma list from: recurrence,andrews,proposition,poly")

    p_scan = sub.add_parser("scan", help="verify the congruence over a prime range")
    p_scan.add_argument("--alpha", metavar="RAT", required=True)
    p_scan.add_argument("--pmin", type=int)
    p_scan.add_argument("--pmax", type=int, required=True)
    p_scan.add_argument("--paths", help="comma list from: recurrence,andrews,proposition,poly")
    p_scan.add_argument("--workers", type=int)
    p_scan.add_argument("--out", metavar="FILE", help="write a JSON report")
    p_scan.add_argument("--csv", metavar="FILE", help="write a flat CSV of records")

    p_density = sub.add_parser("density", help="truncated density with a certified tail bound")
    p_density.add_argument("--g", type=int, required=True)
    p_density.add_argument("--t", type=int, required=True)
    p_density.add_argument("--a", type=int)
    p_density.add_argument("--d", type=int)
    p_density.add_argument("--trunc", type=int, metavar="N")
    p_density.add_argument("--empirical-x", type=int, metavar="X",
                           help="also count matching primes up to X")
    p_density.add_argument("--out", metavar="FILE")

    p_stats = sub.add_parser("stats", help="histogram of predicted Fibonacci indices")
    p_stats.add_argument("--g", type=int, required=True)
    p_stats.add_argument("--x", type=int, required=True)
    p_stats.add_argument("--workers", type=int)
    p_stats.add_argument("--out", metavar="FILE")

    p_check = sub.add_parser("check", help="revalidate a previously written report")
    p_check.add_argument("file")

    return parser


def _load_config(path: str | None) -> dict[str, str]:
    if not path:
        return {}
    config: dict[str, str] = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise QFibError(f"bad config line: {line!r}")
            key, _, value = line.partition("=")
            config[key.strip()] = value.strip()
    return config


def _resolve(args, config, key, convert, default):
    """Flag if given, else config entry, else the hard default."""
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in config:
        return convert(config[key])
    return default


def _default_workers() -> int:
    return int(os.environ.get("QFIB_WORKERS", "1"))


def _parse_paths(text: str | None) -> frozenset[str]:
    if not text:
        return congruence.DEFAULT_PATHS
    return frozenset(part.strip() for part in text.split(",") if part.strip())


def _cmd_qfib(args, config) -> int:
    if _resolve(args, config, "poly", lambda s: s.lower() == "true", False):
        print(qfib_poly(args.n))
        return EXIT_OK
    q = _resolve(args, config, "q", str, None)
    p = _resolve(args, config, "p", int, None)
    if q is None or p is None:
        print("qfib: need --poly, or both --q and --p", file=sys.stderr)
        return EXIT_USAGE
    alpha = reduce_rational(Fraction(q), p)
    print(qfib_mod_recurrence(args.n, alpha).value)
    return EXIT_OK


def _cmd_verify(args, config) -> int:
    paths = _parse_paths(_resolve(args, config, "paths", str, None))
    result = congruence.verify_theorem(Fraction(args.alpha), args.p, paths)
    if isinstance(result, congruence.Inapplicable):
        print(f"inapplicable: {result.reason.value} (alpha = {args.alpha}, p = {args.p})")
        return EXIT_INAPPLICABLE
    rd = result.data
    print(f"alpha = {rd.alpha}, p = {rd.p}")
    print(f"ord = {rd.ord}, index = {rd.index}, lsym = {rd.lsym_ord:+d}")
    print(f"predicted index = {result.predicted_index}")
    print(f"lhs = {result.lhs.value}, rhs = {result.rhs.value} (mod {rd.p})")
    print("match" if result.match else "MISMATCH")
    return EXIT_OK if result.match else EXIT_MISMATCH


def _cmd_scan(args, config) -> int:
    rep = congruence.scan_range(
        Fraction(args.alpha),
        _resolve(args, config, "pmin", int, 3),
        args.pmax,
        paths=_parse_paths(_resolve(args, config, "paths", str, None)),
        workers=_resolve(args, config, "workers", int, _default_workers()),
    )
    payload = report.scan_report_dict(rep)
    summary = payload["summary"]
    print(f"scan alpha = {rep.alpha}, range [{rep.p_min}, {rep.p_max}], paths {','.join(rep.paths)}")
    print(f"checked = {summary['checked']}, matched = {summary['matched']}, "
          f"mismatched = {summary['mismatched']}, skipped = {summary['skipped']}")
    out = _resolve(args, config, "out", str, None)
    if out:
        report.write_json(payload, out)
        print(f"report written to {out}")
    csv_path = _resolve(args, config, "csv", str, None)
    if csv_path:
        report.write_csv(rep, csv_path)
        print(f"records written to {csv_path}")
    return EXIT_OK if rep.all_match else EXIT_MISMATCH


def _cmd_density(args, config) -> int:
    est = density.delta_truncated(
        args.g,
        _resolve(args, config, "a", int, 1),
        _resolve(args, config, "d", int, 5),
        args.t,
        _resolve(args, config, "trunc", int, 200),
    )
    print(f"delta(g = {est.g}, a = {est.a}, d = {est.d}, t = {est.t}) truncated at N = {est.truncation}")
    print(f"partial sum = {est.partial_sum} ~ {float(est.partial_sum):.6g}")
    print(f"tail bound  = {est.tail_bound} ~ {float(est.tail_bound):.6g}")
    print(f"lower bound = {est.lower_bound} ~ {float(est.lower_bound):.6g}"
          f" -> {'POSITIVE' if est.positive else 'not certified positive'}")
    vc = None
    x = _resolve(args, config, "empirical_x", int, None)
    if x is not None:
        vc = density.v_count(est.g, est.a, est.d, est.t, x, collect_witnesses=True)
        print(f"empirical count up to {x}: {vc.count}")
    out = _resolve(args, config, "out", str, None)
    if out:
        report.write_json(report.density_report_dict(est, vc), out)
        print(f"report written to {out}")
    return EXIT_OK


def _cmd_stats(args, config) -> int:
    rep = stats.occurrence_histogram(
        args.g, args.x, workers=_resolve(args, config, "workers", int, _default_workers())
    )
    print(f"stats g = {rep.g}, x = {rep.x}: {rep.primes_checked} primes in "
          f"{len(rep.by_index_counts)} index buckets, skipped {rep.skipped}")
    for n in sorted(rep.by_index_counts):
        print(f"  index {n} (value {stats.value_key(n)}): {rep.by_index_counts[n]}")
    out = _resolve(args, config, "out", str, None)
    if out:
        report.write_json(report.stats_report_dict(rep), out)
        print(f"report written to {out}")
    return EXIT_OK


def _cmd_check(args, config) -> int:
    problems = report.check_report(args.file)
    if not problems:
        print(f"{args.file}: ok")
        return EXIT_OK
    for problem in problems:
        print(f"{args.file}: {problem}", file=sys.stderr)
    if any(p.startswith("unreadable report") for p in problems):
        return EXIT_IO
    return EXIT_MISMATCH


_COMMANDS = {
    "qfib": _cmd_qfib,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
    "density": _cmd_density,
    "stats": _cmd_stats,
    "check": _cmd_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        config = _load_config(args.config)
        return _COMMANDS[args.command](args, config)
    except TheoremViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (QFibError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def entrypoint() -> None:
    sys.exit(main())
