"""Command-line front end.

Exit codes: 0 success, 1 failed verification check, 2 input/parse error,
3 invalid partition, 4 no baseline correlation, 5 MaxEnt not converged,
6 infeasible constraint.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .dist import Partition
from .errors import (
    InfeasibleConstraint,
    InvalidPartition,
    NoBaselineCorrelation,
    NPInfoError,
)
from .functionals import conditional_mutual_information as cmi
from .functionals import (
    entropy_decomposition,
    mutual_information,
    npartite_information,
    shannon_entropy,
    total_correlation,
)
from .ingest import (
    estimate_from_samples,
    parse_axes,
    parse_constraints,
    parse_distribution,
    parse_statistic,
    read_samples,
    serialize_distribution,
)
from .maxent import maxent_update
from .partitions import parse_partition
from .sufficiency import apply_statistic, sufficiency
from .verify import run_battery

EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_PARTITION = 3
EXIT_NO_BASELINE = 4
EXIT_NOT_CONVERGED = 5
EXIT_INFEASIBLE = 6


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _fmt(x: float) -> str:
    return f"{x:.12f}"


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise _Exit(EXIT_INPUT, f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_bytes(text.encode("utf-8"))
    except OSError as exc:
        raise _Exit(EXIT_INPUT, f"cannot write {path}: {exc.strerror}") from None


def _axis_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise _Exit(EXIT_INPUT, f"bad axis list {text!r}") from None


def cmd_info(args: argparse.Namespace) -> int:
    dist = parse_distribution(_read(args.dist))
    part: Partition | None = None
    if args.partition is not None:
        part = parse_partition(args.partition, dist.n_axes)
    if args.measure in ("npi", "mi") and part is None:
        raise _Exit(EXIT_PARTITION, f"--measure {args.measure} needs --partition")
    if args.measure == "entropy":
        value = shannon_entropy(dist)
    elif args.measure == "tc":
        value = total_correlation(dist)
    elif args.measure == "npi":
        value = npartite_information(dist, part)
    else:
        if len(part) != 2:
            raise InvalidPartition(f"--measure mi needs two blocks, got {len(part)}")
        value = mutual_information(dist, *part.blocks)
    print(_fmt(value))
    if part is not None:
        blocks, joint = entropy_decomposition(dist, part)
        for block, h in zip(part.blocks, blocks):
            print(f"block_entropy {','.join(map(str, block))} {_fmt(h)}")
        print(f"joint_entropy {_fmt(joint)}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    dist = None
    if args.dist is not None:
        dist = parse_distribution(_read(args.dist))
        if dist.n_axes < 2:
            raise _Exit(EXIT_INPUT, "verify needs a distribution with at least two axes")
    if args.trials < 1 or args.max_axes < 2 or args.max_labels < 2:
        raise _Exit(EXIT_INPUT, "--trials must be >= 1, --max-axes and --max-labels >= 2")
    report = run_battery(args.seed, args.trials, args.max_axes, args.max_labels, dist)
    print(json.dumps(report.to_dict(), indent=2))
    return 0 if report.passed else EXIT_CHECK_FAILED


def cmd_suff(args: argparse.Namespace) -> int:
    dist = parse_distribution(_read(args.dist))
    stat = parse_statistic(_read(args.statistic))
    theta = _axis_list(args.theta)
    ratio = sufficiency(dist, stat, theta)
    den = cmi(dist, stat.block, theta)
    pushed = apply_statistic(dist, stat, replace=True)
    theta_after = [i - sum(1 for x in stat.block if x < i) for i in theta]
    num = cmi(pushed, [pushed.n_axes - 1], theta_after)
    print(_fmt(ratio))
    print(f"numerator {_fmt(num)}")
    print(f"denominator {_fmt(den)}")
    return 0


def cmd_maxent(args: argparse.Namespace) -> int:
    raw = _read(args.prior)
    prior = parse_distribution(raw)
    constraints = parse_constraints(_read(args.constraints))
    result = maxent_update(prior, constraints, tolerance=args.tol, max_iterations=args.max_iter)
    if result.posterior is prior:
        # nothing moved: hand back the prior document byte for byte
        doc = raw.decode("utf-8")
    else:
        doc = serialize_distribution(result.posterior)
    summary = sys.stdout
    if args.out:
        _write(args.out, doc)
    else:
        sys.stdout.write(doc)
        summary = sys.stderr
    print("beta " + " ".join(repr(b) for b in result.multipliers), file=summary)
    print("residuals " + " ".join(repr(r) for r in result.residuals), file=summary)
    print(f"iterations {result.iterations}", file=summary)
    print(f"converged {str(result.converged).lower()}", file=summary)
    return 0 if result.converged else EXIT_NOT_CONVERGED


def cmd_estimate(args: argparse.Namespace) -> int:
    try:
        table = read_samples(_read(args.samples))
    except UnicodeDecodeError:
        raise _Exit(EXIT_INPUT, f"{args.samples} is not UTF-8") from None
    axes = parse_axes(_read(args.axes))
    dist = estimate_from_samples(table, axes, args.smoothing)
    doc = serialize_distribution(dist)
    if args.out:
        _write(args.out, doc)
    else:
        sys.stdout.write(doc)
    summary = sys.stdout if args.out else sys.stderr
    print(f"cells {math.prod(dist.shape)}", file=summary)
    print(f"samples {len(table.rows)}", file=summary)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="npinfo",
        description="Total correlation, n-partite information, sufficiency and MaxEnt updating "
        "on discrete joint distributions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="compute an information functional")
    p.add_argument("--dist", required=True)
    p.add_argument("--partition", help='blocks like "0,1|2"')
    p.add_argument("--measure", choices=["entropy", "tc", "npi", "mi"], default="tc")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("verify", help="run the inequality/identity battery")
    p.add_argument("--dist")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-axes", type=int, default=4)
    p.add_argument("--max-labels", type=int, default=4)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("suff", help="sufficiency of a statistic with respect to theta")
    p.add_argument("--dist", required=True)
    p.add_argument("--statistic", required=True)
    p.add_argument("--theta", required=True, help='theta axes like "2" or "2,3"')
    p.set_defaults(func=cmd_suff)

    p = sub.add_parser("maxent", help="entropic update of a prior under moment constraints")
    p.add_argument("--prior", required=True)
    p.add_argument("--constraints", required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=200)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_maxent)

    p = sub.add_parser("estimate", help="plug-in distribution from CSV samples")
    p.add_argument("--samples", required=True)
    p.add_argument("--axes", required=True)
    p.add_argument("--smoothing", type=float, default=0.0)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_estimate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        code, msg = exc.code, str(exc)
    except InvalidPartition as exc:
        code, msg = EXIT_PARTITION, str(exc)
    except NoBaselineCorrelation as exc:
        code, msg = EXIT_NO_BASELINE, str(exc)
    except InfeasibleConstraint as exc:
        code, msg = EXIT_INFEASIBLE, str(exc)
    except NPInfoError as exc:
        code, msg = EXIT_INPUT, f"{type(exc).__name__}: {exc}"
    print(f"npinfo {args.command}: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
