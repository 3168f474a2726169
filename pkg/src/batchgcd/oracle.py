"""All-pairs GCD ground truth, kept deliberately naive.

This module shares no code with the tree algorithms so that a bug cannot
hide in both: it loops over every pair of moduli, collects the non-trivial
GCDs, and derives per-modulus factor sets by direct divisibility. Cost is
quadratic in the set size; it exists to check the fast algorithms, never
to be benchmarked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass
class PairwiseResult:
    """Non-trivial pairwise GCDs: (i, j, gcd) triples with i < j, in index order."""

    hits: list[tuple[int, int, int]]


def _values(moduli) -> list[int]:
    # Local copy on purpose: no imports from the algorithm modules.
    vals = moduli.moduli if hasattr(moduli, "moduli") else moduli
    return [int(v) for v in vals]


def pairwise_gcd_all(moduli) -> PairwiseResult:
    """Every pairwise GCD greater than 1, by brute force."""
    values = _values(moduli)
    if len(values) < 2:
        raise ValueError("need at least two moduli to compare")
    hits = []
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            g = math.gcd(values[i], values[j])
            if g > 1:
                hits.append((i, j, g))
    return PairwiseResult(hits)


@dataclass
class ExpectedFactors:
    """Ground-truth factor expectations derived from pairwise GCDs.

    ``factors`` maps each modulus index to the shared divisors any correct
    batch method must report for it. ``unresolvable_pairs`` holds index
    pairs of identical moduli whose primes appear nowhere else; no GCD can
    split those, so they are expected to stay unfactored.
    """

    factors: dict[int, frozenset[int]]
    unresolvable_pairs: frozenset[tuple[int, int]]


def expected_factor_map(result: PairwiseResult, moduli) -> ExpectedFactors:
    """Fold pairwise hits into per-index factor sets.

    A hit equal to both moduli (identical semiprimes) is split by any
    smaller hit value that divides it, plus the cofactor that division
    leaves behind; with no splitter available the pair is unresolvable.
    Assumes semiprime moduli, as the generators produce.
    """
    values = _values(moduli)
    pool = sorted({g for _, _, g in result.hits})
    factors: dict[int, set[int]] = {}
    unresolvable = set()

    for i, j, g in result.hits:
        if g == values[i] and g == values[j]:
            parts = {u for u in pool if u < g and g % u == 0}
            if not parts:
                unresolvable.add((i, j))
                continue
            split = set(parts)
            residual = g
            for u in sorted(parts):
                while residual % u == 0:
                    residual //= u
            if residual > 1:
                split.add(residual)
            factors.setdefault(i, set()).update(split)
            factors.setdefault(j, set()).update(split)
        else:
            factors.setdefault(i, set()).add(g)
            factors.setdefault(j, set()).add(g)

    return ExpectedFactors(
        {i: frozenset(v) for i, v in factors.items()},
        frozenset(unresolvable),
    )
