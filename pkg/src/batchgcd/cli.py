"""Command line for the batch GCD toolkit.

Subcommands: ``generate`` writes a dataset and its ground truth, ``run``
executes one algorithm over a dataset file and writes a JSON result,
``verify`` cross-checks the algorithms against each other, the all-pairs
oracle, and any planted truth, ``bench`` times both tree algorithms over a
size sweep, and ``fit`` fits scaling curves to a timing CSV. Exit codes:
0 success, 1 usage error, 2 I/O or parse error, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import bench
from .binary_tree import FactorReport, Status, run_binary_tree_batch_gcd
from .dataset import (
    DatasetParseError,
    generate_dataset,
    load_dataset,
    save_dataset,
    truth_path_for,
)
from .oracle import ExpectedFactors, expected_factor_map, pairwise_gcd_all
from .remainder_tree import run_remainder_tree_batch_gcd
from .verify import diff_report_vs_expected, diff_report_vs_truth, diff_reports

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_MISMATCH = 3

# The all-pairs oracle is quadratic; beyond this many moduli it needs --force.
NAIVE_LIMIT = 5000

_STATUS_NAMES = {
    Status.COPRIME: "coprime",
    Status.FACTORED: "factored",
    Status.UNRESOLVED: "unresolved_duplicate",
}


@dataclass
class RunEntry:
    index: int
    status: str
    factors: list[str] = field(default_factory=list)


@dataclass
class RunResult:
    """JSON-serializable outcome of one ``run`` invocation.

    ``entries`` hold per-modulus statuses with factors as lowercase hex;
    coprime entries are omitted unless the run asked for them. ``count`` is
    the full modulus count either way.
    """

    algorithm: str
    count: int
    entries: list[RunEntry]
    duplicates: list[list[int]] = field(default_factory=list)
    divisor_product: str | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        if self.divisor_product is None:
            del out["divisor_product"]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RunResult":
        return cls(
            algorithm=data["algorithm"],
            count=data["count"],
            entries=[RunEntry(**e) for e in data["entries"]],
            duplicates=[list(p) for p in data.get("duplicates", [])],
            divisor_product=data.get("divisor_product"),
        )


def result_from_report(
    algorithm: str,
    report: FactorReport,
    *,
    include_coprime: bool = False,
    include_divisor_product: bool = False,
) -> RunResult:
    entries = []
    for index, entry in enumerate(report.entries):
        if entry.status is Status.COPRIME and not include_coprime:
            continue
        entries.append(
            RunEntry(
                index,
                _STATUS_NAMES[entry.status],
                [format(f, "x") for f in sorted(entry.factors)],
            )
        )
    return RunResult(
        algorithm=algorithm,
        count=len(report.entries),
        entries=entries,
        duplicates=[list(p) for p in report.unresolved_duplicate_pairs()],
        divisor_product=(
            format(report.divisor_product, "x") if include_divisor_product else None
        ),
    )


def result_from_expected(
    algorithm: str,
    expected: ExpectedFactors,
    count: int,
    *,
    include_coprime: bool = False,
) -> RunResult:
    unresolved = sorted({i for pair in expected.unresolvable_pairs for i in pair})
    entries = []
    for index in range(count):
        if index in expected.factors:
            entries.append(
                RunEntry(
                    index,
                    "factored",
                    [format(f, "x") for f in sorted(expected.factors[index])],
                )
            )
        elif index in unresolved:
            entries.append(RunEntry(index, "unresolved_duplicate"))
        elif include_coprime:
            entries.append(RunEntry(index, "coprime"))
    return RunResult(
        algorithm=algorithm,
        count=count,
        entries=entries,
        duplicates=[list(p) for p in sorted(expected.unresolvable_pairs)],
    )


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags by default; the contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="batchgcd",
        description="Find shared prime factors across RSA modulus sets.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        metavar="N",
        help="worker threads to allow (this build computes sequentially)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="write a synthetic dataset and its truth")
    p_gen.add_argument("--count", type=int, required=True, metavar="M",
                       help="number of moduli")
    p_gen.add_argument("--bits", type=int, required=True,
                       help="modulus size in bits (even, >= 32)")
    p_gen.add_argument("--weak", type=int, required=True,
                       help="number of weak moduli (even; they pair up)")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", type=Path, required=True, metavar="PATH",
                       help="dataset file; ground truth goes to PATH with a .truth suffix")
    p_gen.set_defaults(func=_cmd_generate)

    p_run = sub.add_parser("run", help="run one algorithm over a dataset file")
    p_run.add_argument("--algo", required=True,
                       choices=["binary-tree", "remainder-tree", "naive"])
    p_run.add_argument("--in", dest="in_path", type=Path, required=True,
                       metavar="PATH", help="dataset file")
    p_run.add_argument("--out", type=Path, required=True, metavar="PATH",
                       help="JSON result file")
    p_run.add_argument("--full", action="store_true",
                       help="include coprime entries in the output")
    p_run.add_argument("--emit-divisor-product", action="store_true",
                       help="include the aggregate divisor product (hex) in the output")
    p_run.add_argument("--skip-leaf-divisors", action="store_true",
                       help="binary-tree only: report leaf-pairing divisors directly "
                            "instead of multiplying them into the divisor product")
    p_run.add_argument("--force", action="store_true",
                       help=f"allow the naive algorithm past {NAIVE_LIMIT} moduli")
    p_run.set_defaults(func=_cmd_run)

    p_verify = sub.add_parser(
        "verify", help="cross-check both algorithms, the oracle, and planted truth"
    )
    p_verify.add_argument("--in", dest="in_path", type=Path, required=True,
                          metavar="PATH", help="dataset file")
    p_verify.add_argument("--skip-naive", action="store_true",
                          help="skip the quadratic all-pairs oracle (large sets)")
    p_verify.set_defaults(func=_cmd_verify)

    p_bench = sub.add_parser("bench", help="time both tree algorithms over a size sweep")
    p_bench.add_argument("--sizes", required=True, metavar="M1,M2,...",
                         help="comma-separated modulus counts")
    p_bench.add_argument("--bits", type=int, default=1024)
    p_bench.add_argument("--weak", type=int, default=100)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out", type=Path, required=True, metavar="CSV",
                         help="timing CSV (algorithm,bits,weak,M,cpu_seconds,seed)")
    p_bench.add_argument("--speedup-out", type=Path, metavar="CSV",
                         help="also write the per-M time ratio CSV (M,ratio)")
    p_bench.add_argument("--repeats", type=int, default=1,
                         help="runs per sample; the median is kept")
    p_bench.add_argument("--plot-dir", type=Path, metavar="DIR",
                         help="also render timing and speedup figures here")
    p_bench.set_defaults(func=_cmd_bench)

    p_fit = sub.add_parser("fit", help="fit y = x^a + b*x + c to a timing CSV")
    p_fit.add_argument("--in", dest="in_path", type=Path, required=True,
                       metavar="CSV", help="timing CSV from bench")
    p_fit.add_argument("--min-m", type=int, default=5000,
                       help="drop samples below this M before fitting")
    p_fit.add_argument("--out", type=Path, required=True, metavar="CSV",
                       help="fit CSV (algorithm,bits,weak,a,b,c,rss)")
    p_fit.add_argument("--plot-dir", type=Path, metavar="DIR",
                       help="also render one fitted-curve figure per series here")
    p_fit.set_defaults(func=_cmd_fit)

    return parser


def _load_for_command(path: Path):
    modulus_set, truth = load_dataset(path)
    if len(modulus_set.moduli) < 2:
        raise ValueError(f"{path}: need at least two moduli, found {len(modulus_set.moduli)}")
    return modulus_set, truth


def _cmd_generate(args) -> int:
    modulus_set, truth = generate_dataset(args.count, args.bits, args.weak, args.seed)
    save_dataset(modulus_set, truth, args.out)
    print(
        f"wrote {len(modulus_set.moduli)} moduli to {args.out} "
        f"({len(truth.weak_pairs)} planted pairs in {truth_path_for(args.out)})"
    )
    return EXIT_OK


def _cmd_run(args) -> int:
    modulus_set, _ = _load_for_command(args.in_path)
    if args.skip_leaf_divisors and args.algo != "binary-tree":
        raise ValueError("--skip-leaf-divisors only applies to --algo binary-tree")
    count = len(modulus_set.moduli)
    if args.algo == "naive":
        if count > NAIVE_LIMIT and not args.force:
            raise ValueError(
                f"naive all-pairs on {count} moduli is quadratic; pass --force to insist"
            )
        expected = expected_factor_map(pairwise_gcd_all(modulus_set), modulus_set)
        result = result_from_expected(
            "naive", expected, count, include_coprime=args.full
        )
    else:
        if args.algo == "binary-tree":
            report = run_binary_tree_batch_gcd(
                modulus_set, skip_leaf_divisors=args.skip_leaf_divisors
            )
        else:
            report = run_remainder_tree_batch_gcd(modulus_set)
        result = result_from_report(
            args.algo,
            report,
            include_coprime=args.full,
            include_divisor_product=args.emit_divisor_product,
        )
    args.out.write_text(json.dumps(result.to_dict(), indent=2) + "\n")
    factored = sum(1 for e in result.entries if e.status == "factored")
    print(
        f"{args.algo}: {factored} of {count} moduli factored, "
        f"{len(result.duplicates)} unresolved duplicate pairs -> {args.out}"
    )
    return EXIT_OK


def _cmd_verify(args) -> int:
    modulus_set, truth = _load_for_command(args.in_path)
    count = len(modulus_set.moduli)
    if count > NAIVE_LIMIT and not args.skip_naive:
        raise ValueError(
            f"the all-pairs oracle on {count} moduli is quadratic; "
            "pass --skip-naive for large sets"
        )
    binary_report = run_binary_tree_batch_gcd(modulus_set)
    remainder_report = run_remainder_tree_batch_gcd(modulus_set)
    diffs = diff_reports(
        binary_report, remainder_report, ("binary-tree", "remainder-tree")
    )
    if not args.skip_naive:
        expected = expected_factor_map(pairwise_gcd_all(modulus_set), modulus_set)
        diffs += [
            f"binary-tree vs oracle: {line}"
            for line in diff_report_vs_expected(binary_report, expected)
        ]
        diffs += [
            f"remainder-tree vs oracle: {line}"
            for line in diff_report_vs_expected(remainder_report, expected)
        ]
    if truth is not None:
        diffs += [
            f"binary-tree vs truth: {line}"
            for line in diff_report_vs_truth(binary_report, truth)
        ]
        diffs += [
            f"remainder-tree vs truth: {line}"
            for line in diff_report_vs_truth(remainder_report, truth)
        ]
    if diffs:
        for line in diffs:
            print(line, file=sys.stderr)
        print(f"verify: {len(diffs)} mismatches on {args.in_path}", file=sys.stderr)
        return EXIT_MISMATCH
    checks = ["binary-tree vs remainder-tree"]
    if not args.skip_naive:
        checks.append("both vs all-pairs oracle")
    if truth is not None:
        checks.append("both vs planted truth")
    print(f"verify: {args.in_path} ok ({'; '.join(checks)})")
    return EXIT_OK


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"--sizes must be comma-separated integers, got {text!r}") from None
    if not sizes:
        raise ValueError("--sizes must name at least one modulus count")
    return sizes


def _cmd_bench(args) -> int:
    sizes = _parse_sizes(args.sizes)

    def progress(algorithm: str, m: int, seconds: float) -> None:
        print(f"  {algorithm:>14}  M={m:<7d} {seconds:9.3f}s cpu", file=sys.stderr)

    binary_series, remainder_series = bench.run_sweep(
        sizes,
        args.bits,
        args.weak,
        args.seed,
        repeats=args.repeats,
        progress=progress,
    )
    bench.write_timings_csv(args.out, [binary_series, remainder_series])
    print(f"wrote {2 * len(sizes)} timing rows to {args.out}")
    speedup = bench.speedup_series(binary_series, remainder_series)
    for m, ratio in speedup.points:
        print(f"M={m}: remainder/binary time ratio {ratio:.2f}")
    print(f"mean ratio {speedup.mean_ratio:.2f}")
    if args.speedup_out is not None:
        bench.write_speedup_csv(args.speedup_out, speedup)
        print(f"wrote speedup rows to {args.speedup_out}")
    if args.plot_dir is not None:
        from . import plots

        timing_png = plots.plot_timings(
            [binary_series, remainder_series], args.plot_dir / "timings.png"
        )
        speedup_png = plots.plot_speedup(speedup, args.plot_dir / "speedup.png")
        print(f"rendered {timing_png} and {speedup_png}")
    return EXIT_OK


def _cmd_fit(args) -> int:
    series_list = bench.read_timings_csv(args.in_path)
    fits = []
    for series in series_list:
        kept = [(m, t) for m, t in series.samples if m >= args.min_m]
        if len(kept) < 4:
            print(
                f"skipping {series.algorithm} ({series.bit_size}-bit, "
                f"{series.num_weak} weak): only {len(kept)} samples at "
                f"M >= {args.min_m}, need 4",
                file=sys.stderr,
            )
            continue
        fit = bench.fit_scaling(kept)
        fits.append((series, fit))
        print(
            f"{series.algorithm} ({series.bit_size}-bit, {series.num_weak} weak): "
            f"a={fit.a:.4f} b={fit.b:.3g} c={fit.c:.3g} "
            f"rss={fit.residual_sum_squares:.3g}"
        )
    if not fits:
        raise ValueError(f"{args.in_path}: no series had enough samples at M >= {args.min_m}")
    bench.write_fits_csv(args.out, fits)
    print(f"wrote {len(fits)} fits to {args.out}")
    if args.plot_dir is not None:
        from . import plots

        for series, fit in fits:
            name = f"fit_{series.algorithm}_{series.bit_size}b_{series.num_weak}w.png"
            rendered = plots.plot_fit(series, fit, args.plot_dir / name)
            print(f"rendered {rendered}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads < 1:
            parser.error(f"--threads must be positive, got {args.threads}")
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads > 1:
        print(
            f"note: this build computes sequentially; --threads {args.threads} "
            "changes nothing",
            file=sys.stderr,
        )
    try:
        return args.func(args)
    except DatasetParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except bench.VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
