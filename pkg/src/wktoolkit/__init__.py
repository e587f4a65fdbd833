"""Desk-scale computations around weakly Krull semigroup rings: numerical
monoids and their ideals, factorization length invariants, zero-sum block
monoids, class groups of numerical semigroup rings over prime fields,
torsion-free group type tests, and the decision rules tying them together.
"""

__version__ = "0.1.0"

from . import affine, blocks, classgrp, decide, errors, factor, groups, hilbertian, numon

__all__ = [
    "affine",
    "blocks",
    "classgrp",
    "decide",
    "errors",
    "factor",
    "groups",
    "hilbertian",
    "numon",
    "__version__",
]
