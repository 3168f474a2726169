"""CPU-time benchmarking and power-law scaling fits for the batch GCD runners.

Timing uses process CPU time and covers exactly one full algorithm run;
dataset generation, verification, and I/O stay outside the measured window.
A sample is only reported after its factor output has been checked against
the planted ground truth. Scaling follows y = x^a + b*x + c: for a fixed
exponent the best (b, c) are a closed-form linear least-squares solve, so
the search reduces to a one-dimensional golden-section minimization of the
profiled residual over the exponent.
"""

from __future__ import annotations

import csv
import math
import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .binary_tree import run_binary_tree_batch_gcd
from .dataset import ModulusSet, PlantedGroundTruth, generate_dataset
from .remainder_tree import run_remainder_tree_batch_gcd
from .verify import diff_report_vs_truth

ALGORITHMS = {
    "binary-tree": run_binary_tree_batch_gcd,
    "remainder-tree": run_remainder_tree_batch_gcd,
}

TIMING_FIELDS = ("algorithm", "bits", "weak", "M", "cpu_seconds", "seed")
FIT_FIELDS = ("algorithm", "bits", "weak", "a", "b", "c", "rss")
SPEEDUP_FIELDS = ("M", "ratio")

DEFAULT_EXPONENT_BOUNDS = (0.5, 2.5)
# Bracket width for the exponent search. The profiled intercept amplifies
# exponent error by roughly the largest sample's x^a * ln(x), so the
# bracket must end up far tighter than the accuracy asked of c.
DEFAULT_EXPONENT_TOL = 1e-14


class VerificationError(RuntimeError):
    """A timed run produced factors that disagree with the planted truth."""


@dataclass
class TimingSeries:
    """CPU-time samples for one algorithm across modulus counts.

    ``samples`` holds (M, cpu_seconds) pairs sorted by M, one per distinct M.
    """

    algorithm: str
    bit_size: int
    num_weak: int
    seed: int
    samples: list[tuple[int, float]]


@dataclass
class ScalingFit:
    """Parameters of y = x^a + b*x + c fitted to a timing series."""

    a: float
    b: float
    c: float
    residual_sum_squares: float

    def evaluate(self, x: float) -> float:
        return x**self.a + self.b * x + self.c


@dataclass
class SpeedupSeries:
    """Per-M ratio of remainder-tree time to binary-tree time, and its mean."""

    points: list[tuple[int, float]]
    mean_ratio: float


def time_algorithm(
    algorithm: str, modulus_set: ModulusSet, truth: PlantedGroundTruth
) -> float:
    """CPU process time of one run, accepted only after truth verification."""
    try:
        runner = ALGORITHMS[algorithm]
    except KeyError:
        raise ValueError(
            f"unknown algorithm {algorithm!r}; pick one of {sorted(ALGORITHMS)}"
        ) from None
    start = time.process_time()
    report = runner(modulus_set)
    elapsed = time.process_time() - start
    diffs = diff_report_vs_truth(report, truth)
    if diffs:
        raise VerificationError(
            f"{algorithm} output failed ground-truth verification: "
            + "; ".join(diffs[:5])
        )
    return elapsed


def run_sweep(
    sizes: Sequence[int],
    bit_size: int,
    num_weak: int,
    seed: int,
    *,
    repeats: int = 1,
    progress: Callable[[str, int, float], None] | None = None,
) -> tuple[TimingSeries, TimingSeries]:
    """Time both algorithms over datasets of each size in ``sizes``.

    Each size gets one freshly generated dataset that both algorithms run
    on. With ``repeats`` > 1 the per-size sample is the median of that many
    runs. Returns the (binary-tree, remainder-tree) series.
    """
    sizes = sorted(set(int(m) for m in sizes))
    if not sizes:
        raise ValueError("sizes must not be empty")
    if repeats < 1:
        raise ValueError(f"repeats must be positive, got {repeats}")
    buckets: dict[str, list[tuple[int, float]]] = {name: [] for name in ALGORITHMS}
    for m in sizes:
        modulus_set, truth = generate_dataset(m, bit_size, num_weak, seed)
        for name in ALGORITHMS:
            times = [time_algorithm(name, modulus_set, truth) for _ in range(repeats)]
            sample = statistics.median(times)
            buckets[name].append((m, sample))
            if progress is not None:
                progress(name, m, sample)
    return (
        TimingSeries("binary-tree", bit_size, num_weak, seed, buckets["binary-tree"]),
        TimingSeries(
            "remainder-tree", bit_size, num_weak, seed, buckets["remainder-tree"]
        ),
    )


def _profile_linear(
    xs: Sequence[float], ys: Sequence[float], a: float
) -> tuple[float, float, float]:
    """Best (b, c) for fixed exponent, by least squares on y - x^a; returns rss too."""
    residuals = [y - x**a for x, y in zip(xs, ys)]
    n = len(xs)
    mean_x = math.fsum(xs) / n
    mean_r = math.fsum(residuals) / n
    sxx = math.fsum((x - mean_x) ** 2 for x in xs)
    sxr = math.fsum(
        (x - mean_x) * (r - mean_r) for x, r in zip(xs, residuals)
    )
    b = sxr / sxx
    c = mean_r - b * mean_x
    rss = math.fsum((b * x + c - r) ** 2 for x, r in zip(xs, residuals))
    return b, c, rss


def golden_section_minimize(
    fn: Callable[[float], float], lo: float, hi: float, tol: float
) -> tuple[float, list[float]]:
    """Minimize a unimodal function on [lo, hi] down to a bracket of width tol.

    Returns the bracket midpoint and the trace of the best value seen after
    each evaluation (non-increasing by construction).
    """
    if not (lo < hi):
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    inv_phi = (math.sqrt(5) - 1) / 2
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    trace = [f1, min(f1, f2)]
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = fn(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = fn(x2)
        trace.append(min(trace[-1], f1, f2))
    return (lo + hi) / 2, trace


def fit_scaling(
    samples: Iterable[tuple[float, float]],
    *,
    bounds: tuple[float, float] = DEFAULT_EXPONENT_BOUNDS,
    tol: float = DEFAULT_EXPONENT_TOL,
) -> ScalingFit:
    """Fit y = x^a + b*x + c to (x, y) samples.

    Needs at least four samples with distinct positive x and positive y.
    The exponent comes from a golden-section search of the profiled
    residual; b and c are exact least squares at that exponent.
    """
    pts = sorted((float(x), float(y)) for x, y in samples)
    if len(pts) < 4:
        raise ValueError(f"need at least 4 samples to fit 3 parameters, got {len(pts)}")
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    if any(x <= 0 for x in xs) or any(y <= 0 for y in ys):
        raise ValueError("samples must have positive x and y")
    if len(set(xs)) != len(xs):
        raise ValueError("sample x values must be distinct")

    def rss_at(a: float) -> float:
        return _profile_linear(xs, ys, a)[2]

    a, _ = golden_section_minimize(rss_at, bounds[0], bounds[1], tol)
    b, c, rss = _profile_linear(xs, ys, a)
    return ScalingFit(a, b, c, rss)


def speedup_series(binary: TimingSeries, remainder: TimingSeries) -> SpeedupSeries:
    """Remainder-tree over binary-tree time at each M, plus the mean ratio.

    Both series must come from the same sweep: identical M grids, bit
    size, weak count, and seed.
    """
    if [m for m, _ in binary.samples] != [m for m, _ in remainder.samples]:
        raise ValueError("timing series cover different M grids")
    same_setup = (
        binary.bit_size == remainder.bit_size
        and binary.num_weak == remainder.num_weak
        and binary.seed == remainder.seed
    )
    if not same_setup:
        raise ValueError("timing series come from different dataset parameters")
    points = [
        (m, rt / bt)
        for (m, bt), (_, rt) in zip(binary.samples, remainder.samples)
    ]
    return SpeedupSeries(points, statistics.fmean(r for _, r in points))


def write_timings_csv(path: Path | str, series: Iterable[TimingSeries]) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(TIMING_FIELDS)
        for ts in series:
            for m, seconds in ts.samples:
                writer.writerow(
                    [ts.algorithm, ts.bit_size, ts.num_weak, m, repr(seconds), ts.seed]
                )


def read_timings_csv(path: Path | str) -> list[TimingSeries]:
    """Group timing rows back into series keyed by (algorithm, bits, weak, seed)."""
    groups: dict[tuple[str, int, int, int], list[tuple[int, float]]] = {}
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        missing = set(TIMING_FIELDS) - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"{path}: missing timing columns {sorted(missing)}")
        for row in reader:
            try:
                key = (
                    row["algorithm"],
                    int(row["bits"]),
                    int(row["weak"]),
                    int(row["seed"]),
                )
                sample = (int(row["M"]), float(row["cpu_seconds"]))
            except (TypeError, ValueError):
                raise ValueError(f"{path}: malformed timing row {row!r}") from None
            groups.setdefault(key, []).append(sample)
    return [
        TimingSeries(alg, bits, weak, seed, sorted(samples))
        for (alg, bits, weak, seed), samples in groups.items()
    ]


def write_fits_csv(
    path: Path | str, fits: Iterable[tuple[TimingSeries, ScalingFit]]
) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(FIT_FIELDS)
        for ts, fit in fits:
            writer.writerow(
                [
                    ts.algorithm,
                    ts.bit_size,
                    ts.num_weak,
                    repr(fit.a),
                    repr(fit.b),
                    repr(fit.c),
                    repr(fit.residual_sum_squares),
                ]
            )


def write_speedup_csv(path: Path | str, speedup: SpeedupSeries) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SPEEDUP_FIELDS)
        for m, ratio in speedup.points:
            writer.writerow([m, repr(ratio)])
