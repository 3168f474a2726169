"""Batch GCD with per-pairing GCDs taken while the product tree is built.

The tree walk pairs adjacent values, records gcd(left, right) at every
pairing, and multiplies the pair upward for the next level; a trailing
unpaired value is carried up unchanged. The two top-level values are
compared by GCD only, never multiplied, so the full product of the set is
never formed. Every non-trivial pairing GCD is then multiplied into a
single divisor product, and one final GCD per modulus against that product
extracts the per-modulus shared content. For M moduli this costs exactly
M - 1 pairing GCDs plus M enumeration GCDs.

A modulus whose final GCD equals the modulus itself has all of its primes
shared somewhere in the set; those are resolved afterwards by divisibility
against factors recovered from other moduli, cofactor completion, and, for
moduli with no recovered divisor at all, pairwise GCDs among themselves.
A pairwise GCD equal to both moduli marks a duplicated modulus, which no
GCD-based method can factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from .product_tree import product_of


class Status(Enum):
    COPRIME = "coprime"
    FACTORED = "factored"
    UNRESOLVED = "unresolved"


@dataclass
class OpCounter:
    """GCD invocation counts by stage, for instrumented runs."""

    tree_gcds: int = 0
    enumeration_gcds: int = 0
    resolution_gcds: int = 0

    @property
    def total(self) -> int:
        return self.tree_gcds + self.enumeration_gcds + self.resolution_gcds


@dataclass
class GcdTree:
    """Product levels plus the GCD recorded at every pairing.

    ``levels[k][2j]`` and ``levels[k][2j+1]`` pair to produce
    ``levels[k+1][j]``; a trailing odd element is carried up unpaired.
    ``pair_gcds[k][j]`` is the GCD of that pairing. The last level holds
    exactly two values whose product is never formed; their GCD is still
    recorded, so a tree over M leaves stores exactly M - 1 GCDs.
    """

    levels: list[list[int]]
    pair_gcds: list[list[int]]

    def stored_gcds(self) -> list[int]:
        return [g for level in self.pair_gcds for g in level]


@dataclass
class FactorEntry:
    status: Status
    factors: tuple[int, ...] = ()


@dataclass
class FactorReport:
    """Per-modulus outcome of a batch GCD run.

    ``divisor_product`` is the aggregate of non-trivial divisors found by
    the run; it is 1 exactly when every entry is coprime (with the
    leaf-divisor option on, divisors found at leaf pairings are reported
    directly instead of entering the product). ``duplicates`` lists index
    pairs of identical moduli that the run happened to discover; a pair
    whose primes appear nowhere else in the set cannot be factored by any
    GCD and its entries stay UNRESOLVED with no factors.
    """

    divisor_product: int
    entries: list[FactorEntry]
    duplicates: list[tuple[int, int]] = field(default_factory=list)

    def factor_map(self) -> dict[int, frozenset[int]]:
        return {
            i: frozenset(e.factors)
            for i, e in enumerate(self.entries)
            if e.status is Status.FACTORED
        }

    def indices_with_status(self, status: Status) -> list[int]:
        return [i for i, e in enumerate(self.entries) if e.status is status]

    def unresolved_duplicate_pairs(self) -> list[tuple[int, int]]:
        """Duplicate pairs that stayed unfactorable."""
        return [
            (a, b)
            for a, b in self.duplicates
            if self.entries[a].status is Status.UNRESOLVED
            and self.entries[b].status is Status.UNRESOLVED
        ]


def _values(moduli) -> list[int]:
    """Accept a ModulusSet or any iterable of ints."""
    vals = moduli.moduli if hasattr(moduli, "moduli") else moduli
    return [int(v) for v in vals]


def build_gcd_tree(moduli, *, counter: OpCounter | None = None) -> GcdTree:
    """Build product levels bottom-up, taking one GCD per pairing.

    The two top-level values are never multiplied together. Requires at
    least two moduli.
    """
    values = _values(moduli)
    if len(values) < 2:
        raise ValueError("batch GCD needs at least two moduli")
    levels = [values]
    pair_gcds: list[list[int]] = []
    while True:
        level = levels[-1]
        width = len(level)
        gcds = []
        above: list[int] = []
        for j in range(width // 2):
            left, right = level[2 * j], level[2 * j + 1]
            gcds.append(math.gcd(left, right))
            if width > 2:
                above.append(left * right)
        if counter is not None:
            counter.tree_gcds += len(gcds)
        pair_gcds.append(gcds)
        if width == 2:
            return GcdTree(levels, pair_gcds)
        if width % 2:
            above.append(level[-1])
        levels.append(above)


def aggregate_divisors(tree: GcdTree, *, skip_leaf_divisors: bool = False) -> int:
    """Product of every non-trivial pairing GCD in the tree.

    With ``skip_leaf_divisors`` the leaf-level pairings are excluded: their
    GCDs are already usable divisors and need not travel through the
    product.
    """
    start = 1 if skip_leaf_divisors else 0
    return product_of(
        g for level in tree.pair_gcds[start:] for g in level if g > 1
    )


def enumerate_factors(
    moduli, divisor_product: int, *, counter: OpCounter | None = None
) -> FactorReport:
    """One GCD per modulus against the divisor product.

    Entries are COPRIME (gcd 1), FACTORED (a proper divisor), or UNRESOLVED
    (the GCD came back as the whole modulus, meaning every prime of that
    modulus is shared somewhere in the set).
    """
    values = _values(moduli)
    entries = []
    for value in values:
        d = math.gcd(value, divisor_product)
        if d == 1:
            entries.append(FactorEntry(Status.COPRIME))
        elif d == value:
            entries.append(FactorEntry(Status.UNRESOLVED))
        else:
            entries.append(FactorEntry(Status.FACTORED, (d,)))
    if counter is not None:
        counter.enumeration_gcds += len(values)
    return FactorReport(divisor_product, entries)


def resolve_full_modulus(index: int, moduli, recovered: Iterable[int]) -> list[int]:
    """Divisors of the flagged modulus found among factors recovered elsewhere.

    Plain divisibility probes; returns the sorted divisors, possibly empty
    when the shared content only co-occurs within other unresolved moduli.
    """
    value = _values(moduli)[index]
    return sorted({f for f in recovered if 1 < f < value and value % f == 0})


def _complete(value: int, divisors: set[int]) -> tuple[int, ...] | None:
    """Final factor tuple for a fully-shared modulus, or None if no divisor known.

    Every prime of such a modulus divides the divisor product, so the
    residual cofactor left after dividing out the known divisors is itself
    shared content and is included.
    """
    if not divisors:
        return None
    residual = value
    for d in sorted(divisors):
        while residual % d == 0:
            residual //= d
    out = set(divisors)
    if 1 < residual < value:
        out.add(residual)
    return tuple(sorted(out))


def _resolve_report(
    moduli,
    report: FactorReport,
    *,
    seed_factors: dict[int, set[int]] | None = None,
    seed_unresolved: Iterable[int] = (),
    seed_duplicates: Sequence[tuple[int, int]] | None = None,
    counter: OpCounter | None = None,
) -> FactorReport:
    """Settle UNRESOLVED entries and fold in divisors found outside step 3.

    ``seed_factors`` carries divisors discovered directly (the leaf-divisor
    option); ``seed_unresolved`` lists indices known to have all of their
    primes shared (duplicate-pair members and the like), which must go
    through resolution whatever the enumeration step said of them;
    ``seed_duplicates`` carries identical pairs already spotted.
    """
    values = _values(moduli)
    entries = list(report.entries)
    pending = {i: set(fs) for i, fs in (seed_factors or {}).items()}
    duplicates = set(report.duplicates)
    duplicates.update(seed_duplicates or ())

    for i in seed_unresolved:
        entry = entries[i]
        if entry.status is Status.FACTORED:
            pending.setdefault(i, set()).update(entry.factors)
        entries[i] = FactorEntry(Status.UNRESOLVED)

    for i, extra in pending.items():
        entry = entries[i]
        if entry.status is Status.FACTORED:
            entries[i] = FactorEntry(
                Status.FACTORED, tuple(sorted(set(entry.factors) | extra))
            )
        elif entry.status is Status.COPRIME:
            entries[i] = FactorEntry(Status.FACTORED, tuple(sorted(extra)))

    unresolved = [i for i, e in enumerate(entries) if e.status is Status.UNRESOLVED]
    if not unresolved:
        return FactorReport(report.divisor_product, entries, sorted(duplicates))

    recovered = {
        f for e in entries if e.status is Status.FACTORED for f in e.factors
    }
    for i in unresolved:
        recovered.update(pending.get(i, ()))

    # A cofactor completed here may be the missing divisor of another
    # unresolved modulus, so probe to a fixpoint; shared content that only
    # co-occurs among the unresolved moduli is invisible to divisibility
    # probes, so on a stall fall back to pairwise GCDs among them and feed
    # any proper divisor found back into the loop.
    while unresolved:
        progressed = False
        for i in list(unresolved):
            divisors = set(resolve_full_modulus(i, values, recovered))
            factors = _complete(values[i], divisors)
            if factors is None:
                continue
            entries[i] = FactorEntry(Status.FACTORED, factors)
            recovered.update(factors)
            unresolved.remove(i)
            progressed = True
        if progressed:
            continue
        found = False
        for i, j in combinations(unresolved, 2):
            if (i, j) in duplicates:
                continue
            g = math.gcd(values[i], values[j])
            if counter is not None:
                counter.resolution_gcds += 1
            if g == 1:
                continue
            if g == values[i] and g == values[j]:
                duplicates.add((i, j))
                continue
            recovered.add(g)
            found = True
        if not found:
            break

    return FactorReport(report.divisor_product, entries, sorted(duplicates))


def run_binary_tree_batch_gcd(
    moduli,
    *,
    skip_leaf_divisors: bool = False,
    counter: OpCounter | None = None,
) -> FactorReport:
    """Full pipeline: GCD tree, divisor aggregation, enumeration, resolution.

    When the divisor product is 1 the set is mutually coprime and the
    enumeration step is skipped entirely. ``skip_leaf_divisors`` records
    divisors found at leaf pairings directly instead of multiplying them
    into the product; a leaf GCD equal to both leaves marks the pair as
    duplicates. Results are identical either way.
    """
    values = _values(moduli)
    tree = build_gcd_tree(values, counter=counter)

    leaf_factors: dict[int, set[int]] = {}
    leaf_unresolved: list[int] = []
    leaf_duplicates: list[tuple[int, int]] = []
    if skip_leaf_divisors:
        for j, g in enumerate(tree.pair_gcds[0]):
            if g == 1:
                continue
            a, b = 2 * j, 2 * j + 1
            if g == values[a] and g == values[b]:
                leaf_duplicates.append((a, b))
                leaf_unresolved.extend((a, b))
                continue
            for i in (a, b):
                if g < values[i]:
                    leaf_factors.setdefault(i, set()).add(g)
                else:
                    leaf_unresolved.append(i)

    divisor_product = aggregate_divisors(tree, skip_leaf_divisors=skip_leaf_divisors)
    if divisor_product == 1 and not leaf_factors and not leaf_unresolved:
        return FactorReport(1, [FactorEntry(Status.COPRIME) for _ in values])

    report = enumerate_factors(values, divisor_product, counter=counter)
    return _resolve_report(
        values,
        report,
        seed_factors=leaf_factors,
        seed_unresolved=leaf_unresolved,
        seed_duplicates=leaf_duplicates,
        counter=counter,
    )
