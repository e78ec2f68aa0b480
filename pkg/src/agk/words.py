"""Tagged generators and words over them.

A :class:`GeneratorWord` evaluates as the left-to-right product of its
embedded letters.  Reduction words (those that carry a vector to ``e_1``)
list letters in the order they are applied instead; use :meth:`apply` and
:meth:`reducer` for those.

Coordinate indices on letters are 1-based, matching the usual matrix
notation ``E_ij``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Union

import numpy as np

from agk.core import AffineElement, as_matrix, commutator, matrix_to_json


def normalize_angle(theta: float) -> float:
    """Map an angle into (-pi, pi]."""
    t = math.remainder(theta, 2 * math.pi)
    if t <= -math.pi:
        t += 2 * math.pi
    return t


def rotation_2x2(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True)
class PlanarRotation:
    """Identity except ``R(theta)`` in rows/columns ``(i, j)``."""

    i: int
    j: int
    theta: float
    kind = "planar_rotation"

    def __post_init__(self):
        if not (1 <= self.i < self.j):
            raise ValueError(f"planar rotation needs 1 <= i < j, got ({self.i}, {self.j})")

    def matrix(self, n: int) -> np.ndarray:
        if self.j > n:
            raise ValueError(f"plane ({self.i}, {self.j}) does not fit in dimension {n}")
        m = np.eye(n)
        p, q = self.i - 1, self.j - 1
        c, s = math.cos(self.theta), math.sin(self.theta)
        m[p, p], m[p, q], m[q, p], m[q, q] = c, -s, s, c
        return m

    def inverse(self) -> "PlanarRotation":
        return PlanarRotation(self.i, self.j, normalize_angle(-self.theta))

    def params(self) -> dict:
        return {"i": self.i, "j": self.j, "theta": self.theta}


class BlockPosition(enum.Enum):
    UPPER = "UPPER"  # diag(B, 1)
    LOWER = "LOWER"  # diag(1, B)


@dataclass(frozen=True, eq=False)
class BlockGenerator:
    """``diag(B, 1)`` (UPPER) or ``diag(1, B)`` (LOWER) with ``B`` in SL(n-1)."""

    position: BlockPosition
    block: np.ndarray
    kind = "block_generator"

    def __post_init__(self):
        b = as_matrix(self.block)
        b.setflags(write=False)
        object.__setattr__(self, "block", b)

    @property
    def n(self) -> int:
        return self.block.shape[0] + 1

    def matrix(self, n: int | None = None) -> np.ndarray:
        if n is not None and n != self.n:
            raise ValueError(f"block generator lives in dimension {self.n}, not {n}")
        m = np.eye(self.n)
        if self.position is BlockPosition.UPPER:
            m[:-1, :-1] = self.block
        else:
            m[1:, 1:] = self.block
        return m

    def inverse(self) -> "BlockGenerator":
        return BlockGenerator(self.position, np.linalg.inv(self.block))

    def params(self) -> dict:
        return {"position": self.position.value, "block": matrix_to_json(self.block)}


@dataclass(frozen=True)
class Transvection:
    """``I + lam * E_ij`` with ``i != j``."""

    i: int
    j: int
    lam: float
    kind = "transvection"

    def __post_init__(self):
        if self.i == self.j or min(self.i, self.j) < 1:
            raise ValueError(f"transvection needs distinct 1-based indices, got ({self.i}, {self.j})")

    def matrix(self, n: int) -> np.ndarray:
        if max(self.i, self.j) > n:
            raise ValueError(f"E_{self.i}{self.j} does not fit in dimension {n}")
        m = np.eye(n)
        m[self.i - 1, self.j - 1] = self.lam
        return m

    def inverse(self) -> "Transvection":
        return Transvection(self.i, self.j, -self.lam)

    def params(self) -> dict:
        return {"i": self.i, "j": self.j, "lambda": self.lam}


@dataclass(frozen=True)
class ScalarDiagonal:
    lam: float
    kind = "scalar_diagonal"

    def matrix(self, n: int) -> np.ndarray:
        return self.lam * np.eye(n)

    def inverse(self) -> "ScalarDiagonal":
        return ScalarDiagonal(1.0 / self.lam)

    def params(self) -> dict:
        return {"lambda": self.lam}


@dataclass(frozen=True, eq=False)
class CommutatorPair:
    """Two factors ``g, h`` standing for ``g h g^-1 h^-1``.

    Factors are either both square matrices or both affine elements.
    """

    g: Union[np.ndarray, AffineElement]
    h: Union[np.ndarray, AffineElement]
    kind = "commutator_pair"

    def __post_init__(self):
        if isinstance(self.g, AffineElement) != isinstance(self.h, AffineElement):
            raise TypeError("commutator factors must both be matrices or both affine elements")
        if not isinstance(self.g, AffineElement):
            g, h = as_matrix(self.g), as_matrix(self.h)
            if g.shape != h.shape:
                raise ValueError("commutator factors differ in dimension")
            g.setflags(write=False)
            h.setflags(write=False)
            object.__setattr__(self, "g", g)
            object.__setattr__(self, "h", h)

    @property
    def affine(self) -> bool:
        return isinstance(self.g, AffineElement)

    def value(self):
        if self.affine:
            return commutator(self.g, self.h)
        g, h = self.g, self.h
        return g @ h @ np.linalg.inv(g) @ np.linalg.inv(h)

    def matrix(self, n: int | None = None) -> np.ndarray:
        v = self.value()
        return v.linear if self.affine else v

    def inverse(self) -> "CommutatorPair":
        # [g, h]^-1 = [h, g]
        return CommutatorPair(self.h, self.g)

    def params(self) -> dict:
        if self.affine:
            return {"g": self.g.to_json(), "h": self.h.to_json()}
        return {"g": matrix_to_json(self.g), "h": matrix_to_json(self.h)}


Letter = Union[PlanarRotation, BlockGenerator, Transvection, ScalarDiagonal, CommutatorPair]


def letter_to_json(letter: Letter) -> dict:
    return {"kind": letter.kind, "params": letter.params()}


@dataclass
class GeneratorWord:
    target_dim: int
    letters: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def matrices(self) -> list[np.ndarray]:
        return [letter.matrix(self.target_dim) for letter in self.letters]

    def matrix(self) -> np.ndarray:
        """Left-to-right product of the letters."""
        return reduce(np.matmul, self.matrices(), np.eye(self.target_dim))

    def reducer(self) -> np.ndarray:
        """The map obtained by applying the letters in sequence, first letter first."""
        return reduce(lambda acc, m: m @ acc, self.matrices(), np.eye(self.target_dim))

    def apply(self, x) -> np.ndarray:
        v = np.asarray(x, dtype=float)
        for m in self.matrices():
            v = m @ v
        return v

    def inverse(self) -> "GeneratorWord":
        return GeneratorWord(self.target_dim, [letter.inverse() for letter in reversed(self.letters)])

    def to_json(self) -> dict:
        return {"n": self.target_dim, "letters": [letter_to_json(t) for t in self.letters]}


def product_of_commutators(pairs, n: int, affine: bool = False):
    """Multiply ``[g_1, h_1] [g_2, h_2] ...`` left to right."""
    if affine:
        out = AffineElement.identity(n)
        for p in pairs:
            out = out * p.value()
        return out
    out = np.eye(n)
    for p in pairs:
        out = out @ p.value()
    return out
