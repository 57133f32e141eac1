# cli.py | command line front end
# Copyright (C) 2019-2021  EraserBird, person_v1.32, hmmm

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

import argparse
import os
import re
import sys
from typing import Dict, List, Optional, Sequence

import sentry_sdk

import fairsum
from fairsum import config
from fairsum.data import GenericError, logger, setup_logging, setup_sentry
from fairsum.fairness import report_to_dict, solve
from fairsum.families import family_names, gen_family
from fairsum.instance import Kind, emit_instance, parse_instance
from fairsum.oracle import check_random, check_theorems
from fairsum.oracle import report_to_dict as oracle_report_to_dict
from fairsum.pof import Criterion, pof_of, record_to_dict
from fairsum.sweep import RANDOM_ALPHA_CAPS, records_to_csv, sweep_family, sweep_random
from fairsum.util import dump_json, write_artifact

# Exit codes:
# 0 - success
# 1 - solver or oracle failure, or a false verdict
# 2 - usage error


class UsageError(Exception):
    pass


def parse_kv(text: Optional[str]) -> Dict[str, str]:
    """Parses "D=100,eps=1/100" into a dict of strings."""
    if not text:
        return {}
    params = {}
    for pair in text.split(","):
        key, sep, value = pair.partition("=")
        if not sep or not key.strip() or not value.strip():
            raise UsageError(f"expected key=value, got {pair!r}")
        params[key.strip()] = value.strip()
    return params


def parse_list(text: Optional[str]) -> List[str]:
    if not text:
        return []
    return [value.strip() for value in text.split(",") if value.strip()]


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r") as f:
            return f.read()
    except OSError as e:
        raise GenericError(f"cannot read {path}: {e.strerror}", 990) from e


def _emit(text: str, out: Optional[str]):
    if out:
        write_artifact(out, text)
    else:
        sys.stdout.write(text)


def _safe_name(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", label) or "instance"


def run_solve(args) -> int:
    inst = parse_instance(_read(args.file))
    report = solve(inst)
    criteria = list(Criterion) if args.criterion == "all" else [Criterion(args.criterion)]

    records = []
    if report.zstar > 0:
        for criterion in criteria:
            record = pof_of(inst, criterion, report=report)
            if record is not None:
                records.append(record)
    else:
        logger.warning("system optimum is zero, no price of fairness")

    payload = report_to_dict(report)
    payload["pof"] = [record_to_dict(record) for record in records]
    text = dump_json(payload)
    if args.out:
        write_artifact(os.path.join(args.out, "report.json"), text)
        write_artifact(os.path.join(args.out, "frontier.csv"), report.frontier.to_csv())
        write_artifact(os.path.join(args.out, "pof.csv"), records_to_csv(records))
    else:
        sys.stdout.write(text)
    return 0


def run_sweep(args) -> int:
    if args.random == bool(args.family):
        raise UsageError("sweep needs exactly one of --family or --random")
    if args.random:
        records = sweep_random(
            args.count,
            alpha_caps=parse_list(args.alpha_cap) or RANDOM_ALPHA_CAPS,
            kind=Kind(args.kind),
            n=args.n,
            c=args.c,
            seed=args.seed,
            workers=args.workers,
        )
    else:
        schedule = parse_list(args.eps_schedule) or ["1/10", "1/100", "1/1000"]
        records = sweep_family(
            args.family,
            parse_kv(args.params),
            alpha_grid=parse_list(args.alpha_grid),
            eps_schedule=schedule,
            workers=args.workers,
        )
    _emit(records_to_csv(records), args.out)
    if not all(record.within_bounds for record in records):
        return 1
    return 0


def run_gen(args) -> int:
    inst = gen_family(args.family, parse_kv(args.params))
    _emit(emit_instance(inst), args.out)
    return 0


def _write_counterexamples(reports, directory: str):
    for report in reports:
        for verdict in report.failures():
            base = os.path.join(directory, f"{_safe_name(report.instance.label)}-{verdict.name}")
            write_artifact(base + ".json", emit_instance(report.instance))
            # the offending utility vectors, next to the instance they came from
            write_artifact(base + ".vectors.json", dump_json(verdict.counterexample))


def run_check(args) -> int:
    if args.random == bool(args.file):
        raise UsageError("check needs exactly one of FILE or --random")
    if args.random:
        reports = check_random(
            args.count,
            kind=Kind(args.kind),
            k=args.k,
            n=args.n,
            c=args.c,
            seed=args.seed,
            workers=args.workers,
        )
    else:
        reports = [check_theorems(parse_instance(_read(args.file)))]

    payload = [oracle_report_to_dict(report) for report in reports]
    text = dump_json(payload if args.random else payload[0])
    if args.out:
        write_artifact(os.path.join(args.out, "oracle.json"), text)
        _write_counterexamples(reports, args.out)
    else:
        sys.stdout.write(text)

    failed = [report for report in reports if not report.holds]
    for report in failed:
        names = ", ".join(verdict.name for verdict in report.failures())
        logger.error(f"{report.instance.label or 'instance'}: {names}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairsum", description="Exact fair subset sum solver and price of fairness harness."
    )
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    parser.add_argument(
        "--workers", type=int, default=None, help="worker processes for sweep and check"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    solve_parser = commands.add_parser("solve", help="solve one instance document")
    solve_parser.add_argument("file", help="instance document, - for stdin")
    solve_parser.add_argument(
        "--criterion", choices=["mm", "ks", "pf", "all"], default="all"
    )
    solve_parser.add_argument("--out", help="directory for report.json, frontier.csv, pof.csv")
    solve_parser.set_defaults(handler=run_solve)

    sweep_parser = commands.add_parser("sweep", help="price of fairness sweep to CSV")
    sweep_parser.add_argument("--family", choices=family_names())
    sweep_parser.add_argument("--params", help="key=value list, integer ranges as lo..hi")
    sweep_parser.add_argument("--alpha-grid", help="comma separated alphas")
    sweep_parser.add_argument("--eps-schedule", help="comma separated decreasing epsilons")
    sweep_parser.add_argument("--random", action="store_true")
    sweep_parser.add_argument("--alpha-cap", help="comma separated alpha caps")
    sweep_parser.add_argument("--count", type=int, default=100)
    sweep_parser.add_argument("--kind", choices=[kind.value for kind in Kind], default="separate")
    sweep_parser.add_argument("--n", type=int, default=8)
    sweep_parser.add_argument("--c", type=int, default=60)
    sweep_parser.add_argument("--seed", type=int, default=0)
    sweep_parser.add_argument("--out", help="CSV file, stdout if omitted")
    sweep_parser.set_defaults(handler=run_sweep)

    gen_parser = commands.add_parser("gen", help="generate a worst case family instance")
    gen_parser.add_argument("--family", choices=family_names(), required=True)
    gen_parser.add_argument("--params", help="key=value list, must include D")
    gen_parser.add_argument("--out", help="instance file, stdout if omitted")
    gen_parser.set_defaults(handler=run_gen)

    check_parser = commands.add_parser("check", help="brute force theorem checks")
    check_parser.add_argument("file", nargs="?", help="instance document, - for stdin")
    check_parser.add_argument("--random", action="store_true")
    check_parser.add_argument("--count", type=int, default=100)
    check_parser.add_argument("--kind", choices=[kind.value for kind in Kind], default="separate")
    check_parser.add_argument("--k", type=int, default=2)
    check_parser.add_argument("--n", type=int, default=None)
    check_parser.add_argument("--c", type=int, default=60)
    check_parser.add_argument("--seed", type=int, default=0)
    check_parser.add_argument("--out", help="directory for oracle.json and counterexamples")
    check_parser.set_defaults(handler=run_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers is not None and args.workers < 1:
        parser.error("--workers must be positive")

    fairsum.setup(verbose=args.verbose)
    setup_logging()
    setup_sentry()

    try:
        return args.handler(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"fairsum: error: {e}\n")
        return 2
    except GenericError as e:
        logger.info(f"failed with code {e.code}")
        sys.stderr.write(dump_json({"error": str(e), "code": e.code}))
        return 1
    except Exception as e:  # pylint: disable=broad-except
        logger.exception("unexpected failure")
        if config.options["sentry"]:
            sentry_sdk.capture_exception(e)
        sys.stderr.write(dump_json({"error": repr(e), "code": 0}))
        return 1
