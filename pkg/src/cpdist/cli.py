"""Command-line surface: density, sampling, moments, fitting, comparison, benchmarks.

Every subcommand writes machine-readable data (CSV by default, JSON with
``--format json``) to stdout or ``--output``; diagnostics go to stderr.
Identical invocations with identical inputs and seeds produce byte-identical
output.  Usage errors exit with status 2, computation errors with 1.
"""

import argparse
import csv
import json
import sys
from contextlib import contextmanager

from .alaw import FAMILIES, ALaw
from .bench import bench_bruteforce, bench_density, bench_to_csv, bench_to_dict
from .density import cp_density, density_to_csv, density_to_dict
from .errors import CpdistError, ParameterError
from .estimate import compare_models, mle_fit, mom_fit
from .ingest import CorpusConfig, read_counts, word_counts
from .moments import moment_report_dict, raw_moments
from .sampler import SampleConfig, sample, sample_stopped

_REQUIRED_PARAMS = {
    "poisson": ("lam",),
    "binomial": ("n", "p"),
    "negbinomial": ("r", "p"),
    "geometric": ("p",),
}
_FLAG_NAMES = {"lam": "--lambda", "n": "--n", "r": "--r", "p": "--p"}


def _add_family_args(sub, allow_all=False):
    choices = FAMILIES + ("all",) if allow_all else FAMILIES
    sub.add_argument("--family", required=True, choices=choices)
    sub.add_argument("--lambda", dest="lam", type=float, default=None)
    sub.add_argument("--n", type=int, default=None)
    sub.add_argument("--r", type=int, default=None)
    sub.add_argument("--p", type=float, default=None)


def _add_io_args(sub):
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--output", default="-", help="output path, '-' for stdout")


def _law_from_args(parser, args):
    """Build the multiplier law, rejecting missing or extraneous parameter flags."""
    required = _REQUIRED_PARAMS[args.family]
    given = {k for k in _FLAG_NAMES if getattr(args, k) is not None}
    missing = [k for k in required if k not in given]
    extra = sorted(given - set(required))
    if missing or extra:
        parts = []
        if missing:
            parts.append(f"{args.family} requires {', '.join(_FLAG_NAMES[k] for k in missing)}")
        if extra:
            parts.append(f"{', '.join(_FLAG_NAMES[k] for k in extra)} not accepted for {args.family}")
        parser.error("; ".join(parts))
    try:
        return ALaw.make(args.family, **{k: getattr(args, k) for k in required})
    except ParameterError as exc:
        parser.error(str(exc))


@contextmanager
def _open_out(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as stream:
            yield stream


def _emit_json(payload, stream):
    json.dump(payload, stream, indent=2)
    stream.write("\n")


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _flatten(mapping, prefix=""):
    for key, value in mapping.items():
        if isinstance(value, dict):
            yield from _flatten(value, f"{prefix}{key}.")
        elif isinstance(value, (list, tuple)):
            for i, item in enumerate(value):
                yield f"{prefix}{key}.{i}", item
        else:
            yield f"{prefix}{key}", value


def cmd_density(parser, args):
    law = _law_from_args(parser, args)
    if args.limit < 1:
        parser.error(f"--limit must be >= 1, got {args.limit}")
    result = cp_density(law, args.limit)
    with _open_out(args.output) as stream:
        if args.format == "csv":
            density_to_csv(result, stream)
        else:
            _emit_json(density_to_dict(result), stream)
    return 0


def cmd_sample(parser, args):
    law = _law_from_args(parser, args)
    if args.count < 1:
        parser.error(f"--count must be >= 1, got {args.count}")
    config = SampleConfig(seed=args.seed, max_steps=args.max_steps, overflow_policy=args.overflow_policy)
    draw = sample_stopped if args.stopped else sample
    values = draw(law, config, args.count)
    with _open_out(args.output) as stream:
        if args.format == "csv":
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(["value"])
            for v in values:
                writer.writerow([int(v)])
        else:
            _emit_json(
                {
                    "family": law.family,
                    "params": law.params_dict(),
                    "seed": args.seed,
                    "values": [int(v) for v in values],
                },
                stream,
            )
    return 0


def cmd_moments(parser, args):
    law = _law_from_args(parser, args)
    payload = moment_report_dict(raw_moments(law))
    with _open_out(args.output) as stream:
        if args.format == "csv":
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(["stat", "value"])
            for key, value in _flatten(payload):
                writer.writerow([key, _fmt(value)])
        else:
            _emit_json(payload, stream)
    return 0


def _load_dataset(parser, args):
    if args.text is not None:
        config = CorpusConfig(
            lowercase=not args.no_lowercase,
            min_count=1 if args.min_count is None else args.min_count,
        )
        with open(args.text, encoding="utf-8") as stream:
            return word_counts(stream, config)
    if args.no_lowercase or args.min_count is not None:
        parser.error("--no-lowercase/--min-count only apply to --text input")
    return read_counts(args.input)


def _add_input_args(sub):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", default=None, help="value,count CSV file")
    group.add_argument("--text", default=None, help="raw text corpus (word frequencies)")
    sub.add_argument("--no-lowercase", action="store_true")
    sub.add_argument("--min-count", type=int, default=None)


def _fit_dict(result):
    return {
        "family": result.family,
        "method": result.method,
        "params": result.params,
        "loglik": result.loglik,
        "aic": result.aic,
        "flags": list(result.flags),
    }


def _emit_fits(results, args):
    with _open_out(args.output) as stream:
        if args.format == "csv":
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(["family", "method", "param", "value", "loglik", "aic"])
            for r in results:
                for name, value in r.params.items():
                    writer.writerow(
                        [r.family, r.method, name, _fmt(value), _fmt(r.loglik), _fmt(r.aic)]
                    )
        else:
            _emit_json([_fit_dict(r) for r in results], stream)


def cmd_fit(parser, args):
    if args.family == "all":
        if args.method == "mom":
            parser.error("--method mom fits a single family; use --family <name> or --method paper/mle")
        data = _load_dataset(parser, args)
        results = compare_models(data, method=args.method, int_max=args.int_max, tol=args.tol)
    elif args.method == "paper":
        parser.error("--method paper is a model comparison; use --family all")
    else:
        data = _load_dataset(parser, args)
        if args.method == "mom":
            results = [mom_fit(data, args.family)]
        else:
            results = [mle_fit(data, args.family, int_max=args.int_max, tol=args.tol)]
    _emit_fits(results, args)
    return 0


def cmd_compare(parser, args):
    data = _load_dataset(parser, args)
    results = compare_models(data, method=args.method, int_max=args.int_max, tol=args.tol)
    _emit_fits(results, args)
    return 0


def _parse_limits(parser, text):
    try:
        limits = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        parser.error(f"--limits must be comma-separated integers, got {text!r}")
    if not limits:
        parser.error("--limits must name at least one limit")
    if any(b <= a for a, b in zip(limits, limits[1:])):
        parser.error(f"--limits must be strictly increasing, got {limits}")
    return limits


def cmd_bench(parser, args):
    law = _law_from_args(parser, args)
    limits = _parse_limits(parser, args.limits)
    if args.method == "recursion":
        report = bench_density(law, limits)
    else:
        report = bench_bruteforce(law, limits)
    with _open_out(args.output) as stream:
        if args.format == "csv":
            bench_to_csv(report, stream)
        else:
            _emit_json(bench_to_dict(report), stream)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cpdist",
        description="Compound-product distribution tools: the law of X with X = AX + 1 in distribution.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("density", help="P(X=n) for n = 1..limit")
    _add_family_args(p)
    p.add_argument("--limit", type=int, default=10_000)
    _add_io_args(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("sample", help="seeded draws of X")
    _add_family_args(p)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int, default=1_000_000)
    p.add_argument("--overflow-policy", choices=("error", "saturate"), default="error")
    p.add_argument("--stopped", action="store_true", help="use the stopped-product reference sampler")
    _add_io_args(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("moments", help="raw and standardized moments of X")
    _add_family_args(p)
    _add_io_args(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("fit", help="fit one family (or all) to count data")
    p.add_argument("--family", required=True, choices=FAMILIES + ("all",))
    p.add_argument(
        "--method",
        choices=("mom", "mle", "paper"),
        default="mle",
        help="estimator: moments, maximum likelihood, or per-family defaults "
        "(moments for poisson/geometric, likelihood for the integer families)",
    )
    p.add_argument("--int-max", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-6)
    _add_input_args(p)
    _add_io_args(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("compare", help="rank all four families by AIC")
    p.add_argument(
        "--method",
        choices=("paper", "mle"),
        default="paper",
        help="'paper' uses per-family default estimators "
        "(moments for poisson/geometric, likelihood for the integer families)",
    )
    p.add_argument("--int-max", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-6)
    _add_input_args(p)
    _add_io_args(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bench", help="time the density computation")
    _add_family_args(p)
    p.add_argument("--limits", required=True, help="comma-separated increasing limits")
    p.add_argument("--method", choices=("recursion", "bruteforce"), default="recursion")
    _add_io_args(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except (CpdistError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
