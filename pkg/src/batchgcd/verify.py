"""Cross-checks between algorithm reports, the pairwise oracle, and planted truth.

Every helper returns a list of human-readable difference lines, empty when
the two sides agree. Comparisons cover factored indices with their exact
factor sets plus the pairs left unresolved as duplicates.
"""

from __future__ import annotations

from .binary_tree import FactorReport, Status
from .dataset import PlantedGroundTruth
from .oracle import ExpectedFactors


def expected_from_truth(truth: PlantedGroundTruth) -> dict[int, set[int]]:
    """Per-index planted factors implied by the weak pairs."""
    expected: dict[int, set[int]] = {}
    for a, b, prime in truth.weak_pairs:
        expected.setdefault(a, set()).add(prime)
        expected.setdefault(b, set()).add(prime)
    return expected


def diff_report_vs_truth(report: FactorReport, truth: PlantedGroundTruth) -> list[str]:
    """Planted-recovery check: every planted prime reported verbatim at both
    of its indices, and nothing reported factored where nothing was planted."""
    expected = expected_from_truth(truth)
    diffs = []
    for idx in sorted(expected):
        want = expected[idx]
        if idx >= len(report.entries):
            diffs.append(f"index {idx}: planted pair points past the report "
                         f"({len(report.entries)} entries)")
            continue
        entry = report.entries[idx]
        if entry.status is not Status.FACTORED:
            diffs.append(f"index {idx}: expected factors {sorted(want)}, "
                         f"got status {entry.status.value}")
        elif set(entry.factors) != want:
            diffs.append(f"index {idx}: expected factors {sorted(want)}, "
                         f"got {sorted(entry.factors)}")
    for idx, entry in enumerate(report.entries):
        if entry.status is Status.FACTORED and idx not in expected:
            diffs.append(f"index {idx}: reported factors {sorted(entry.factors)} "
                         "but nothing was planted there")
    return diffs


def diff_report_vs_expected(report: FactorReport, expected: ExpectedFactors) -> list[str]:
    """Oracle-equivalence check: exact factor sets and unresolvable pairs."""
    diffs = []
    got = report.factor_map()
    want = dict(expected.factors)
    for idx in sorted(set(got) | set(want)):
        g, w = got.get(idx), want.get(idx)
        if g != w:
            diffs.append(
                f"index {idx}: oracle expects "
                f"{sorted(w) if w else 'no factors'}, report has "
                f"{sorted(g) if g else 'no factors'}"
            )
    got_pairs = set(report.unresolved_duplicate_pairs())
    want_pairs = set(expected.unresolvable_pairs)
    for pair in sorted(want_pairs - got_pairs):
        diffs.append(f"pair {pair}: oracle marks it unresolvable, report does not")
    for pair in sorted(got_pairs - want_pairs):
        diffs.append(f"pair {pair}: report marks it unresolvable, oracle does not")
    return diffs


def diff_reports(
    first: FactorReport,
    second: FactorReport,
    labels: tuple[str, str] = ("first", "second"),
) -> list[str]:
    """Equivalence check between two algorithm reports."""
    diffs = []
    if len(first.entries) != len(second.entries):
        return [
            f"entry counts differ: {labels[0]} has {len(first.entries)}, "
            f"{labels[1]} has {len(second.entries)}"
        ]
    for idx, (a, b) in enumerate(zip(first.entries, second.entries)):
        if a.status is not b.status:
            diffs.append(f"index {idx}: {labels[0]} says {a.status.value}, "
                         f"{labels[1]} says {b.status.value}")
        elif set(a.factors) != set(b.factors):
            diffs.append(f"index {idx}: {labels[0]} factors {sorted(a.factors)}, "
                         f"{labels[1]} factors {sorted(b.factors)}")
    pairs_a = set(first.unresolved_duplicate_pairs())
    pairs_b = set(second.unresolved_duplicate_pairs())
    if pairs_a != pairs_b:
        diffs.append(f"unresolved duplicate pairs differ: {labels[0]} "
                     f"{sorted(pairs_a)}, {labels[1]} {sorted(pairs_b)}")
    return diffs
