"""Order, lattice, and positive-operator arithmetic on R^m with a simplicial cone.

The ambient space is R^m and the cone is generated by the m columns of an
invertible matrix G.  In the coordinates c = G^{-1} x every query becomes
componentwise: membership in the cone is c >= 0, the interior is c > 0, and
lattice infima/suprema are componentwise min/max.  All comparisons share one
tolerance rule, applied in cone coordinates and scaled by the magnitude of
the operands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

__all__ = [
    "ConeVector",
    "LinearMap",
    "OrderedSpace",
    "ShrinkingCertificate",
    "coords_rows",
    "leq_rows",
    "interior_lt_rows",
]

# Invertibility floor: |det| must exceed this times (max column norm)^m.
DET_FLOOR = 1e-12

# Certified shrinking factors must stay below 1 by at least this margin.
STRICT_FACTOR_MARGIN = 1e-12


def _finite_matrix(rows) -> tuple[tuple[float, ...], ...]:
    out = tuple(tuple(float(v) for v in row) for row in rows)
    if not out:
        raise ValueError("matrix must be nonempty")
    width = len(out[0])
    for row in out:
        if len(row) != width:
            raise ValueError("matrix rows must have equal length")
        for v in row:
            if not math.isfinite(v):
                raise ValueError("matrix entries must be finite")
    return out


@dataclass(frozen=True)
class ConeVector:
    """Element of the ambient space, stored in the standard basis."""

    coords: tuple[float, ...]

    def __post_init__(self) -> None:
        coords = tuple(float(v) for v in self.coords)
        if not coords:
            raise ValueError("vector must have at least one coordinate")
        if not all(math.isfinite(v) for v in coords):
            raise ValueError("vector coordinates must be finite")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *coords: float) -> "ConeVector":
        return cls(tuple(coords))

    @classmethod
    def zeros(cls, dim: int) -> "ConeVector":
        return cls((0.0,) * dim)

    @classmethod
    def from_array(cls, arr) -> "ConeVector":
        return cls(tuple(float(v) for v in np.asarray(arr, dtype=float).ravel()))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)

    def __add__(self, other: "ConeVector") -> "ConeVector":
        return ConeVector(tuple(a + b for a, b in zip(self.coords, other.coords, strict=True)))

    def __sub__(self, other: "ConeVector") -> "ConeVector":
        return ConeVector(tuple(a - b for a, b in zip(self.coords, other.coords, strict=True)))

    def __neg__(self) -> "ConeVector":
        return ConeVector(tuple(-a for a in self.coords))

    def __mul__(self, scalar: float) -> "ConeVector":
        return ConeVector(tuple(float(scalar) * a for a in self.coords))

    __rmul__ = __mul__


@dataclass(frozen=True)
class LinearMap:
    """Linear operator on the ambient space, stored as an m x m matrix."""

    matrix: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        matrix = _finite_matrix(self.matrix)
        if len(matrix) != len(matrix[0]):
            raise ValueError("operator matrix must be square")
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def from_array(cls, arr) -> "LinearMap":
        return cls(tuple(tuple(float(v) for v in row) for row in np.asarray(arr, dtype=float)))

    @classmethod
    def identity(cls, dim: int) -> "LinearMap":
        return cls.from_array(np.eye(dim))

    @classmethod
    def zero(cls, dim: int) -> "LinearMap":
        return cls.from_array(np.zeros((dim, dim)))

    @classmethod
    def scaled_identity(cls, dim: int, scalar: float) -> "LinearMap":
        return cls.from_array(float(scalar) * np.eye(dim))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def as_array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=float)

    def apply(self, x: ConeVector) -> ConeVector:
        return ConeVector.from_array(self.as_array() @ x.as_array())

    def compose(self, other: "LinearMap") -> "LinearMap":
        return LinearMap.from_array(self.as_array() @ other.as_array())

    def add(self, other: "LinearMap") -> "LinearMap":
        return LinearMap.from_array(self.as_array() + other.as_array())

    def scale(self, scalar: float) -> "LinearMap":
        return LinearMap.from_array(float(scalar) * self.as_array())


@dataclass(frozen=True)
class ShrinkingCertificate:
    """Positive injective operator M with 0 <= Mx <= factor * x on the cone.

    Produced by ``OrderedSpace.shrinking_factor``; ``factor`` is the minimal
    multiplier and is strictly below 1.
    """

    map: LinearMap
    factor: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.factor < 1.0):
            raise ValueError("certified factor must lie in [0, 1)")


@dataclass(frozen=True)
class OrderedSpace:
    """R^m ordered by the simplicial cone spanned by the columns of ``generators``.

    The generator matrix must be invertible; this is what makes the induced
    order a lattice order and every lattice query componentwise in cone
    coordinates.  ``tol`` is the comparison tolerance, applied in cone
    coordinates relative to the largest coordinate of the operands (absolute
    when everything is below 1).
    """

    dim: int
    generators: tuple[tuple[float, ...], ...]
    tol: float = 1e-9

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dimension must be a positive integer")
        if not (self.tol >= 0.0 and math.isfinite(self.tol)):
            raise ValueError("tolerance must be a finite nonnegative real")
        matrix = _finite_matrix(self.generators)
        if len(matrix) != self.dim or len(matrix[0]) != self.dim:
            raise ValueError("generator matrix must be dim x dim")
        object.__setattr__(self, "generators", matrix)
        arr = np.array(matrix, dtype=float)
        col_norm = float(np.max(np.linalg.norm(arr, axis=0))) if arr.size else 0.0
        if abs(float(np.linalg.det(arr))) <= DET_FLOOR * col_norm**self.dim:
            raise ValueError("generator matrix is singular: cone is not simplicial")

    @classmethod
    def standard(cls, dim: int, tol: float = 1e-9) -> "OrderedSpace":
        """Componentwise order: the cone generated by the standard basis."""
        return cls(dim, tuple(tuple(np.eye(dim)[i]) for i in range(dim)), tol)

    @cached_property
    def gen_matrix(self) -> np.ndarray:
        arr = np.array(self.generators, dtype=float)
        arr.flags.writeable = False
        return arr

    @cached_property
    def gen_inverse(self) -> np.ndarray:
        inv = np.linalg.inv(np.array(self.generators, dtype=float))
        inv.flags.writeable = False
        return inv

    @property
    def zero(self) -> ConeVector:
        return ConeVector.zeros(self.dim)

    # -- coordinates ---------------------------------------------------

    def cone_coords(self, x: ConeVector) -> np.ndarray:
        """Coordinates of x in the generator basis; x is in the cone iff they are >= 0."""
        return self.gen_inverse @ x.as_array()

    def from_cone_coords(self, coords) -> ConeVector:
        return ConeVector.from_array(self.gen_matrix @ np.asarray(coords, dtype=float))

    def _scaled_tol(self, *arrays: np.ndarray) -> float:
        scale = 0.0
        for a in arrays:
            if a.size:
                scale = max(scale, float(np.max(np.abs(a))))
        return self.tol * max(1.0, scale)

    # -- order relations -----------------------------------------------

    def leq(self, x: ConeVector, y: ConeVector) -> bool:
        """x <= y in the cone order: y - x lies in the cone."""
        cx, cy = self.cone_coords(x), self.cone_coords(y)
        return bool(np.all(cy - cx >= -self._scaled_tol(cx, cy)))

    def eq(self, x: ConeVector, y: ConeVector) -> bool:
        cx, cy = self.cone_coords(x), self.cone_coords(y)
        return bool(np.max(np.abs(cy - cx)) <= self._scaled_tol(cx, cy))

    def strictly_less(self, x: ConeVector, y: ConeVector) -> bool:
        """x <= y and x != y (order-strict, not interior)."""
        return self.leq(x, y) and not self.eq(x, y)

    def strictly_interior_less(self, x: ConeVector, y: ConeVector) -> bool:
        """y - x lies in the interior of the cone: strictly positive cone coordinates."""
        cx, cy = self.cone_coords(x), self.cone_coords(y)
        return bool(np.all(cy - cx > self._scaled_tol(cx, cy)))

    def is_zero(self, x: ConeVector) -> bool:
        return self.eq(x, self.zero)

    def in_cone(self, x: ConeVector) -> bool:
        return self.leq(self.zero, x)

    def in_interior(self, x: ConeVector) -> bool:
        return self.strictly_interior_less(self.zero, x)

    # -- lattice operations ----------------------------------------------

    def lattice_inf(self, vectors: Iterable[ConeVector]) -> ConeVector:
        """Greatest lower bound: componentwise min in cone coordinates."""
        rows = [self.cone_coords(v) for v in vectors]
        if not rows:
            raise ValueError("empty lattice operand")
        return self.from_cone_coords(np.min(np.stack(rows), axis=0))

    def lattice_sup(self, vectors: Iterable[ConeVector]) -> ConeVector:
        """Least upper bound: componentwise max in cone coordinates."""
        rows = [self.cone_coords(v) for v in vectors]
        if not rows:
            raise ValueError("empty lattice operand")
        return self.from_cone_coords(np.max(np.stack(rows), axis=0))

    def abs_vector(self, x: ConeVector) -> ConeVector:
        """|x| = sup{x, -x}; componentwise absolute value in cone coordinates."""
        return self.from_cone_coords(np.abs(self.cone_coords(x)))

    # -- positive operators ----------------------------------------------

    def operator_cone_matrix(self, op: LinearMap) -> np.ndarray:
        """The operator expressed in cone coordinates: G^{-1} M G."""
        if op.dim != self.dim:
            raise ValueError("operator dimension does not match the space")
        return self.gen_inverse @ op.as_array() @ self.gen_matrix

    def is_positive_operator(self, op: LinearMap) -> bool:
        """True iff the operator maps the cone into itself (each extreme ray stays in)."""
        mat = self.operator_cone_matrix(op)
        return bool(np.all(mat >= -self._scaled_tol(mat)))

    def _is_injective(self, op: LinearMap) -> bool:
        arr = op.as_array()
        col_norm = float(np.max(np.linalg.norm(arr, axis=0)))
        return abs(float(np.linalg.det(arr))) > DET_FLOOR * col_norm**self.dim

    def shrinking_factor(self, op: LinearMap) -> Optional[ShrinkingCertificate]:
        """Certify 0 <= Mx <= t*x on the cone with minimal t < 1, or None.

        In cone coordinates the condition forces the matrix to be diagonal
        (testing both inequalities on each extreme ray pins every off-diagonal
        entry to zero), with diagonal entries in (0, 1); the minimal factor is
        the largest diagonal entry.  ``shrinking_oracle`` re-derives the same
        verdict by direct sampling and is used to validate this shortcut.
        """
        if not self._is_injective(op):
            return None
        mat = self.operator_cone_matrix(op)
        t_off = self._scaled_tol(mat)
        off = mat - np.diag(np.diag(mat))
        if np.any(np.abs(off) > t_off):
            return None
        diag = np.diag(mat)
        if np.any(diag < -t_off):
            return None
        factor = max(float(np.max(diag)), 0.0)
        if factor >= 1.0 - STRICT_FACTOR_MARGIN:
            return None
        return ShrinkingCertificate(map=op, factor=factor)

    def shrinking_witness(self, op: LinearMap) -> Optional[ConeVector]:
        """An extreme ray on which certification fails, when one exists.

        Returns None both for certified operators and for operators rejected
        only by the injectivity test (which no single ray witnesses).
        """
        mat = self.operator_cone_matrix(op)
        t_off = self._scaled_tol(mat)
        for i in range(self.dim):
            column = mat[:, i]
            off_bad = any(abs(column[j]) > t_off for j in range(self.dim) if j != i)
            if off_bad or column[i] < -t_off or column[i] >= 1.0 - STRICT_FACTOR_MARGIN:
                ray = np.zeros(self.dim)
                ray[i] = 1.0
                return self.from_cone_coords(ray)
        return None

    def shrinking_oracle(
        self, op: LinearMap, rng: np.random.Generator, samples: int = 1000
    ) -> tuple[bool, Optional[float]]:
        """Sampling-based membership check for the shrinking-certificate property.

        Tests 0 <= Mx and Mx <= t*x on every extreme ray plus ``samples``
        random nonnegative combinations (a quarter of the coordinates are
        zeroed to probe the cone boundary), and reports (member, minimal t).
        Independent of the diagonality shortcut in ``shrinking_factor``.
        """
        if not self._is_injective(op):
            return False, None
        mat = self.operator_cone_matrix(op)
        combos = rng.uniform(0.0, 1.0, size=(samples, self.dim))
        combos[rng.random(size=combos.shape) < 0.25] = 0.0
        points = np.vstack([np.eye(self.dim), combos])
        images = points @ mat.T
        t_eff = self.tol * np.maximum(
            1.0, np.maximum(np.max(np.abs(points), axis=1), np.max(np.abs(images), axis=1))
        )
        if np.any(images < -t_eff[:, None]):
            return False, None
        zero_mask = points == 0.0
        if np.any(zero_mask & (images > t_eff[:, None])):
            return False, None
        ratios = np.where(zero_mask, -np.inf, images / np.where(zero_mask, 1.0, points))
        required = max(float(np.max(ratios)), 0.0)
        if required >= 1.0 - STRICT_FACTOR_MARGIN:
            return False, None
        return True, required

    def spectral_radius_estimate(self, op: LinearMap, iters: int = 100) -> float:
        """Power-iteration estimate of the spectral radius of |M| in cone coordinates.

        Consistency check only: for certified shrinking operators the estimate
        must not exceed the certified factor by more than rounding noise.
        """
        if iters < 1:
            raise ValueError("iters must be >= 1")
        mat = np.abs(self.operator_cone_matrix(op))
        v = np.ones(self.dim)
        estimate = 0.0
        for _ in range(iters):
            w = mat @ v
            norm = float(np.max(w))
            if norm == 0.0:
                return 0.0
            estimate = norm / float(np.max(v))
            v = w / norm
        return estimate


# -- bulk forms --------------------------------------------------------------
#
# Row-wise variants of the order relations, used by the randomized property
# suites that sweep large batches of vectors.  They implement the exact same
# scaled-tolerance formula as the scalar methods.


def coords_rows(space: OrderedSpace, ambient_rows: np.ndarray) -> np.ndarray:
    """Cone coordinates of each row of an (k, m) array of ambient vectors."""
    return np.asarray(ambient_rows, dtype=float) @ space.gen_inverse.T


def _row_scale(space: OrderedSpace, cx: np.ndarray, cy: np.ndarray) -> np.ndarray:
    scale = np.maximum(np.max(np.abs(cx), axis=1), np.max(np.abs(cy), axis=1))
    return space.tol * np.maximum(1.0, scale)


def leq_rows(space: OrderedSpace, cx: np.ndarray, cy: np.ndarray) -> np.ndarray:
    """Rowwise x <= y on cone-coordinate arrays of shape (k, m)."""
    return np.all(cy - cx >= -_row_scale(space, cx, cy)[:, None], axis=1)


def interior_lt_rows(space: OrderedSpace, cx: np.ndarray, cy: np.ndarray) -> np.ndarray:
    """Rowwise interior comparison on cone-coordinate arrays of shape (k, m)."""
    return np.all(cy - cx > _row_scale(space, cx, cy)[:, None], axis=1)
