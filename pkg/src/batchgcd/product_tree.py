"""Binary product trees over arbitrary-precision integers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass
class ProductTree:
    """Pairwise-product levels of a list of integers.

    ``levels[0]`` holds the input values in order; each higher level holds
    the products of adjacent pairs below it, with a trailing unpaired
    element carried up unchanged. The last level is the single root.
    """

    levels: list[list[int]]

    @property
    def leaves(self) -> list[int]:
        return self.levels[0]

    @property
    def root(self) -> int:
        return self.levels[-1][0]


def build_product_tree(values: Iterable[int]) -> ProductTree:
    """Build the full product tree for ``values``.

    A single value yields a one-level tree whose root is that value.
    Raises ValueError for an empty input.
    """
    leaves = list(values)
    if not leaves:
        raise ValueError("cannot build a product tree from an empty list")
    levels = [leaves]
    while len(levels[-1]) > 1:
        below = levels[-1]
        level = [below[i] * below[i + 1] for i in range(0, len(below) - 1, 2)]
        if len(below) % 2:
            level.append(below[-1])
        levels.append(level)
    return ProductTree(levels)


def product_of(values: Iterable[int]) -> int:
    """Product of ``values`` computed via a balanced tree; 1 for an empty list."""
    vals = list(values)
    if not vals:
        return 1
    return build_product_tree(vals).root
