"""Constructive matrix-group tools for the affine groups R^n x| G(n).

G(n) is one of GL(n), SL(n), |SL|(n) = {|det| = 1} or GL+(n).  The package
provides the group arithmetic, closed-form centralizers, commutator and
generator factorizations, sphere-sum decompositions and a randomized
verification harness.
"""

from agk.core import (
    AffineElement,
    DetClass,
    DimensionError,
    SingularError,
    act,
    classify,
    commutator,
    inv,
    mul,
)
from agk.factorization import PreconditionError

__all__ = [
    "AffineElement",
    "DetClass",
    "DimensionError",
    "PreconditionError",
    "SingularError",
    "act",
    "classify",
    "commutator",
    "inv",
    "mul",
]

__version__ = "0.1.0"
