"""Baseline batch GCD: one full product, then a top-down remainder descent.

The product tree's root P is reduced level by level, each node receiving
its parent's remainder mod the node's square; at the leaves,
gcd(N_i, (P mod N_i^2) / N_i) equals gcd(N_i, (P / N_i) mod N_i), the
shared content of N_i with the rest of the set. Full-modulus hits are
settled by the same resolution routine the binary-tree algorithm uses, so
the two algorithms report identical factor sets.
"""

from __future__ import annotations

import math

from .binary_tree import (
    FactorEntry,
    FactorReport,
    OpCounter,
    Status,
    _resolve_report,
    _values,
)
from .product_tree import build_product_tree, product_of


def run_remainder_tree_batch_gcd(
    moduli, *, counter: OpCounter | None = None
) -> FactorReport:
    """Factor a modulus set via the remainder-tree descent.

    Requires at least two moduli. The report's divisor product is the
    product of the non-trivial per-leaf divisors, so it stays 1 exactly
    when the set is mutually coprime.
    """
    values = _values(moduli)
    if len(values) < 2:
        raise ValueError("batch GCD needs at least two moduli")

    tree = build_product_tree(values)
    remainders = [tree.root]
    for level in reversed(tree.levels[:-1]):
        remainders = [
            remainders[i // 2] % (node * node) for i, node in enumerate(level)
        ]

    entries = []
    found: list[int] = []
    for value, rem in zip(values, remainders):
        d = math.gcd(value, rem // value)
        if counter is not None:
            counter.enumeration_gcds += 1
        if d == 1:
            entries.append(FactorEntry(Status.COPRIME))
        elif d == value:
            entries.append(FactorEntry(Status.UNRESOLVED))
            found.append(d)
        else:
            entries.append(FactorEntry(Status.FACTORED, (d,)))
            found.append(d)

    report = FactorReport(product_of(found) if found else 1, entries)
    return _resolve_report(values, report, counter=counter)
