"""Butterfly-matrix cluster-tree identification and sparse factorization.

Thin wrapper over the C++ core: generate planted butterfly targets, recover
their row/column cluster trees, and compute sparse butterfly factorizations.
"""

from bfly._core import (
    canonical_trees,
    count_trees,
    dft,
    factorize,
    identify,
    make_target,
    random_butterfly,
    random_permutation,
)

__all__ = [
    "canonical_trees",
    "count_trees",
    "dft",
    "factorize",
    "identify",
    "make_target",
    "random_butterfly",
    "random_permutation",
]
