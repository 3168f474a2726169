"""Figure rendering for benchmark results, written as PNG files next to the CSVs."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bench import ScalingFit, SpeedupSeries, TimingSeries

_COLORS = {"binary-tree": "tab:green", "remainder-tree": "tab:blue"}


def _new_axes(xlabel: str, ylabel: str):
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    return fig, ax


def _save(fig, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_timings(series: Sequence[TimingSeries], path: Path | str) -> Path:
    """CPU seconds against modulus count, one line per algorithm."""
    fig, ax = _new_axes("moduli in set", "CPU seconds")
    for ts in series:
        xs = [m for m, _ in ts.samples]
        ys = [t for _, t in ts.samples]
        ax.plot(xs, ys, marker="o", color=_COLORS.get(ts.algorithm), label=ts.algorithm)
    if series:
        ax.set_title(
            f"{series[0].bit_size}-bit moduli, {series[0].num_weak} weak"
        )
    ax.legend()
    return _save(fig, path)


def plot_speedup(speedup: SpeedupSeries, path: Path | str) -> Path:
    """Remainder-tree / binary-tree time ratio against modulus count."""
    fig, ax = _new_axes("moduli in set", "time ratio")
    xs = [m for m, _ in speedup.points]
    ys = [r for _, r in speedup.points]
    ax.plot(xs, ys, marker="o", color="tab:purple")
    ax.axhline(1.0, color="gray", linewidth=0.8, linestyle="--")
    ax.axhline(
        speedup.mean_ratio,
        color="tab:purple",
        linewidth=0.8,
        linestyle=":",
        label=f"mean {speedup.mean_ratio:.2f}",
    )
    ax.legend()
    return _save(fig, path)


def plot_fit(series: TimingSeries, fit: ScalingFit, path: Path | str) -> Path:
    """Timing samples with the fitted x^a + b*x + c curve drawn through them."""
    fig, ax = _new_axes("moduli in set", "CPU seconds")
    xs = [m for m, _ in series.samples]
    ys = [t for _, t in series.samples]
    ax.scatter(xs, ys, color=_COLORS.get(series.algorithm), zorder=3, label="samples")
    lo, hi = min(xs), max(xs)
    grid = [lo + (hi - lo) * k / 256 for k in range(257)]
    ax.plot(
        grid,
        [fit.evaluate(x) for x in grid],
        color="black",
        linewidth=1.0,
        label=f"x^{fit.a:.3f} + {fit.b:.3g}x + {fit.c:.3g}",
    )
    ax.set_title(series.algorithm)
    ax.legend()
    return _save(fig, path)
