"""Affine group arithmetic on R^n x| G(n).

Elements are pairs ``(x, A)`` with the multiplication law
``(x, A)(y, B) = (x + A y, A B)``.  Matrices are plain ``numpy`` arrays;
:class:`AffineElement` wraps a translation vector together with its linear
part.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

SINGULAR_RTOL = 1e-12


class DetClass(enum.Enum):
    """The four determinant conditions defining G(n)."""

    GL = "GL"
    SL = "SL"
    ABS_SL = "ABS_SL"
    GL_PLUS = "GL_PLUS"

    @classmethod
    def parse(cls, value: "DetClass | str") -> "DetClass":
        if isinstance(value, cls):
            return value
        key = str(value).strip().upper().replace("-", "_").replace("|SL|", "ABS_SL")
        aliases = {"GLPLUS": "GL_PLUS", "GL+": "GL_PLUS", "ABSSL": "ABS_SL"}
        key = aliases.get(key, key)
        try:
            return cls[key]
        except KeyError:
            raise ValueError(f"unknown determinant class {value!r}") from None


class DimensionError(ValueError):
    """Operands live in different dimensions, or a matrix is not square."""


class SingularError(ValueError):
    """A linear part is not invertible within tolerance."""


def as_matrix(a, n: int | None = None) -> np.ndarray:
    """Coerce ``a`` to a finite square float matrix (optionally of size ``n``)."""
    m = np.array(a, dtype=float)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if n is not None and m.shape[0] != n:
        raise DimensionError(f"expected a {n}x{n} matrix, got {m.shape[0]}x{m.shape[0]}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def as_vector(v, n: int | None = None) -> np.ndarray:
    x = np.array(v, dtype=float).reshape(-1)
    if n is not None and x.shape[0] != n:
        raise DimensionError(f"expected a vector of length {n}, got {x.shape[0]}")
    if not np.all(np.isfinite(x)):
        raise ValueError("vector entries must be finite")
    return x


def det(a: np.ndarray) -> float:
    # LAPACK getrf, i.e. LU with partial pivoting
    return float(np.linalg.det(a))


def is_invertible(a: np.ndarray) -> bool:
    n = a.shape[0]
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if scale == 0.0:
        return False
    return abs(det(a)) > SINGULAR_RTOL * scale**n


@dataclass(frozen=True, eq=False)
class AffineElement:
    """A pair ``(translation, linear)`` in R^n x| GL(n, R)."""

    translation: np.ndarray
    linear: np.ndarray

    def __post_init__(self):
        lin = as_matrix(self.linear)
        x = as_vector(self.translation)
        if x.shape[0] != lin.shape[0]:
            raise DimensionError(
                f"translation has length {x.shape[0]} but linear part is "
                f"{lin.shape[0]}x{lin.shape[0]}"
            )
        if not is_invertible(lin):
            raise SingularError("linear part is singular")
        lin.setflags(write=False)
        x.setflags(write=False)
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "translation", x)

    @classmethod
    def _trusted(cls, translation: np.ndarray, linear: np.ndarray) -> "AffineElement":
        # products and inverses of valid elements are invertible; skip the guard
        obj = object.__new__(cls)
        translation.setflags(write=False)
        linear.setflags(write=False)
        object.__setattr__(obj, "translation", translation)
        object.__setattr__(obj, "linear", linear)
        return obj

    @property
    def n(self) -> int:
        return self.linear.shape[0]

    @classmethod
    def identity(cls, n: int) -> "AffineElement":
        return cls(np.zeros(n), np.eye(n))

    @classmethod
    def pure_linear(cls, a) -> "AffineElement":
        a = as_matrix(a)
        return cls(np.zeros(a.shape[0]), a)

    @classmethod
    def pure_translation(cls, x) -> "AffineElement":
        x = as_vector(x)
        return cls(x, np.eye(x.shape[0]))

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        return mul(self, other)

    def distance(self, other: "AffineElement") -> float:
        """Max of the Euclidean translation gap and Frobenius linear gap."""
        _check_same_dim(self, other)
        return max(
            float(np.linalg.norm(self.translation - other.translation)),
            float(np.linalg.norm(self.linear - other.linear)),
        )

    def to_json(self) -> dict:
        return {"translation": vector_to_json(self.translation), "matrix": matrix_to_json(self.linear)}

    @classmethod
    def from_json(cls, doc: dict) -> "AffineElement":
        try:
            translation = doc["translation"]
            matrix = matrix_from_json(doc["matrix"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed affine element document: {exc}") from None
        return cls(as_vector(translation, matrix.shape[0]), matrix)

    def __repr__(self) -> str:
        return f"AffineElement(translation={self.translation.tolist()}, linear={self.linear.tolist()})"


def _check_same_dim(g: AffineElement, h: AffineElement) -> None:
    if g.n != h.n:
        raise DimensionError(f"dimension mismatch: {g.n} vs {h.n}")


def mul(g: AffineElement, h: AffineElement) -> AffineElement:
    """Group law ``(x, A)(y, B) = (x + A y, A B)``."""
    _check_same_dim(g, h)
    return AffineElement._trusted(g.translation + g.linear @ h.translation, g.linear @ h.linear)


def inv(g: AffineElement) -> AffineElement:
    a_inv = np.linalg.inv(g.linear)
    return AffineElement._trusted(-a_inv @ g.translation, a_inv)


def commutator(g: AffineElement, h: AffineElement) -> AffineElement:
    """``g h g^-1 h^-1``."""
    return mul(mul(g, h), mul(inv(g), inv(h)))


def act(g: AffineElement, p) -> np.ndarray:
    """Affine action ``p -> A p + x``."""
    p = as_vector(p)
    if p.shape[0] != g.n:
        raise DimensionError(f"point has length {p.shape[0]}, element acts on R^{g.n}")
    return g.linear @ p + g.translation


def classify(a, tol: float = 1e-9) -> set[DetClass]:
    """All determinant classes whose condition holds for ``a`` within ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    d = det(as_matrix(a))
    out = set()
    if abs(d) > tol:
        out.add(DetClass.GL)
    if d > tol:
        out.add(DetClass.GL_PLUS)
    if abs(abs(d) - 1.0) <= tol:
        out.add(DetClass.ABS_SL)
    if abs(d - 1.0) <= tol:
        out.add(DetClass.SL)
    return out


def in_class(a, det_class: DetClass, tol: float = 1e-9) -> bool:
    return DetClass.parse(det_class) in classify(a, tol)


def commutes(g: AffineElement, h: AffineElement, tol: float) -> bool:
    return mul(g, h).distance(mul(h, g)) <= tol


# JSON helpers.  Matrices: {"n": 3, "rows": [[...], ...]}


def matrix_to_json(a: np.ndarray) -> dict:
    a = np.asarray(a, dtype=float)
    return {"n": int(a.shape[0]), "rows": [[float(v) for v in row] for row in a]}


def matrix_from_json(doc) -> np.ndarray:
    if isinstance(doc, dict):
        if "rows" not in doc:
            raise ValueError("matrix document needs a 'rows' field")
        rows = doc["rows"]
        n = doc.get("n")
    else:
        rows, n = doc, None
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValueError("matrix rows must be a list of lists")
    if any(len(r) != len(rows) for r in rows):
        raise DimensionError("matrix must be square")
    m = as_matrix(rows)
    if n is not None and int(n) != m.shape[0]:
        raise DimensionError(f"declared n={n} but got {m.shape[0]} rows")
    return m


def vector_to_json(v) -> list[float]:
    return [float(t) for t in np.asarray(v, dtype=float).reshape(-1)]
