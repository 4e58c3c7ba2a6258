"""Finite cone metric spaces.

A space is n labeled points plus an n x n table of vector-valued distances.
Two axioms are checked: the distance vanishes exactly on the diagonal, and
d(x,y) <= d(x,z) + d(y,z) for all ordered triples.  Symmetry and
nonnegativity follow from these; the validator asserts them rather than
assuming them.  Point-to-set distance and the two-sided set gap use lattice
infima/suprema, so their values need not be attained by any single point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .ordered_space import ConeVector, OrderedSpace

__all__ = [
    "ConeMetricSpace",
    "Potential",
    "ValidationReport",
]

MAX_WITNESSES = 32


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the axiom check, with bounded witness lists per axiom.

    ``identity_witnesses`` holds (i, j) pairs where the diagonal/off-diagonal
    zero pattern is wrong; ``triangle_witnesses`` holds (i, j, k) triples.
    The two derived consequences (symmetry, nonnegativity) are only evaluated
    once the axioms pass; ``derived_status`` records that they were verified.
    """

    identity_witnesses: tuple[tuple[int, int], ...] = ()
    triangle_witnesses: tuple[tuple[int, int, int], ...] = ()
    symmetry_witnesses: tuple[tuple[int, int], ...] = ()
    nonnegativity_witnesses: tuple[tuple[int, int], ...] = ()
    derived_status: str = "not checked"

    @property
    def axioms_passed(self) -> bool:
        return not self.identity_witnesses and not self.triangle_witnesses

    @property
    def passed(self) -> bool:
        return (
            self.axioms_passed
            and not self.symmetry_witnesses
            and not self.nonnegativity_witnesses
        )

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "identity_witnesses": [list(w) for w in self.identity_witnesses],
            "triangle_witnesses": [list(w) for w in self.triangle_witnesses],
            "symmetry_witnesses": [list(w) for w in self.symmetry_witnesses],
            "nonnegativity_witnesses": [list(w) for w in self.nonnegativity_witnesses],
            "derived_status": self.derived_status,
        }


@dataclass(frozen=True)
class Potential:
    """A vector value attached to every point of a finite space."""

    values: tuple[ConeVector, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise ValueError("potential must cover at least one point")

    @classmethod
    def from_rows(cls, rows) -> "Potential":
        return cls(tuple(ConeVector.from_array(r) for r in rows))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> ConeVector:
        return self.values[i]


def _as_index_set(points: Iterable[int], n: int, what: str) -> tuple[int, ...]:
    out = tuple(sorted(set(int(p) for p in points)))
    if not out:
        raise ValueError(f"empty {what} operand")
    if out[0] < 0 or out[-1] >= n:
        raise ValueError(f"{what} contains an out-of-range point index")
    return out


@dataclass(frozen=True)
class ConeMetricSpace:
    space: OrderedSpace
    labels: tuple[str, ...]
    dist: tuple[tuple[ConeVector, ...], ...]

    def __post_init__(self) -> None:
        labels = tuple(str(s) for s in self.labels)
        if not labels:
            raise ValueError("space needs at least one point")
        if len(set(labels)) != len(labels):
            raise ValueError("point labels must be unique")
        object.__setattr__(self, "labels", labels)
        table = tuple(tuple(row) for row in self.dist)
        n = len(labels)
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError("distance table must be n x n")
        for row in table:
            for v in row:
                if v.dim != self.space.dim:
                    raise ValueError("distance entries must match the space dimension")
        object.__setattr__(self, "dist", table)

    @classmethod
    def from_scaled_scalar(
        cls,
        space: OrderedSpace,
        labels: Sequence[str],
        rho: np.ndarray,
        weight: ConeVector,
    ) -> "ConeMetricSpace":
        """Build d(x,y) = rho(x,y) * w from a scalar metric and a cone weight.

        Always satisfies both axioms, since the triangle defect of rho is
        nonnegative and scales a cone element.
        """
        rho = np.asarray(rho, dtype=float)
        n = len(labels)
        if rho.shape != (n, n):
            raise ValueError("scalar metric table must be n x n")
        if not np.all(np.isfinite(rho)):
            raise ValueError("scalar metric entries must be finite")
        rtol = 1e-9 * max(1.0, float(np.max(np.abs(rho))) if rho.size else 0.0)
        if np.any(np.abs(np.diag(rho)) > rtol):
            raise ValueError("scalar metric must vanish on the diagonal")
        off = rho[~np.eye(n, dtype=bool)]
        if off.size and np.any(off <= rtol):
            raise ValueError("scalar metric must be positive off the diagonal")
        if np.any(np.abs(rho - rho.T) > rtol):
            raise ValueError("scalar metric must be symmetric")
        lhs = rho[:, :, None]
        rhs = rho[:, None, :] + rho[None, :, :]
        if np.any(lhs > rhs + rtol):
            raise ValueError("scalar metric violates the triangle inequality")
        if not (space.in_cone(weight) and not space.is_zero(weight)):
            raise ValueError("weight must be a nonzero element of the cone")
        w = weight.as_array()
        table = tuple(
            tuple(ConeVector.from_array(rho[i, j] * w) for j in range(n)) for i in range(n)
        )
        return cls(space, tuple(labels), table)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown point label: {label!r}") from None

    def distance(self, i: int, j: int) -> ConeVector:
        return self.dist[i][j]

    @cached_property
    def _coords(self) -> np.ndarray:
        """Cone coordinates of the whole table, shape (n, n, m)."""
        ambient = np.array(
            [[v.coords for v in row] for row in self.dist], dtype=float
        )
        out = ambient @ self.space.gen_inverse.T
        out.flags.writeable = False
        return out

    # -- axiom validation -------------------------------------------------

    def validate(self, max_witnesses: int = MAX_WITNESSES) -> ValidationReport:
        """Check both axioms; on a passing table also verify the derived facts."""
        n, tol = self.n, self.space.tol
        coords = self._coords
        mags = np.max(np.abs(coords), axis=2)

        identity: list[tuple[int, int]] = []
        zero_mask = mags <= tol * np.maximum(1.0, mags)
        for i in range(n):
            for j in range(n):
                if (i == j) != bool(zero_mask[i, j]):
                    identity.append((i, j))

        lhs = coords[:, :, None, :]
        rhs = coords[:, None, :, :] + coords[None, :, :, :]
        scale = np.maximum(mags[:, :, None], np.max(np.abs(rhs), axis=3))
        slack = tol * np.maximum(1.0, scale)
        triangle_bad = np.any(lhs > rhs + slack[:, :, :, None], axis=3)
        triangle = [tuple(int(v) for v in w) for w in np.argwhere(triangle_bad)]

        if identity or triangle:
            return ValidationReport(
                identity_witnesses=tuple(identity[:max_witnesses]),
                triangle_witnesses=tuple(triangle[:max_witnesses]),
                derived_status="not checked (axioms failed)",
            )

        sym_scale = tol * np.maximum(1.0, np.maximum(mags, mags.T))
        sym_bad = np.max(np.abs(coords - coords.transpose(1, 0, 2)), axis=2) > sym_scale
        symmetry = [tuple(int(v) for v in w) for w in np.argwhere(sym_bad)]
        neg_bad = np.any(coords < -(tol * np.maximum(1.0, mags))[:, :, None], axis=2)
        nonneg = [tuple(int(v) for v in w) for w in np.argwhere(neg_bad)]
        return ValidationReport(
            symmetry_witnesses=tuple(symmetry[:max_witnesses]),
            nonnegativity_witnesses=tuple(nonneg[:max_witnesses]),
            derived_status="derived, verified",
        )

    # -- set distances -----------------------------------------------------

    def dist_to_set(self, x: int, targets: Iterable[int]) -> ConeVector:
        """Lattice infimum of d(x, y) over y in the target set.

        The value can fail to be attained (incomparable distances), and can be
        zero without x belonging to the set.
        """
        idx = _as_index_set(targets, self.n, "set")
        return self.space.from_cone_coords(np.min(self._coords[x, idx, :], axis=0))

    def hausdorff(self, aset: Iterable[int], bset: Iterable[int]) -> ConeVector:
        """Two-sided set gap: sup of the two directed sups of point-to-set distances.

        Symmetric and zero on equal sets, but not a cone metric itself; no
        triangle inequality is claimed for it.
        """
        a = _as_index_set(aset, self.n, "set")
        b = _as_index_set(bset, self.n, "set")
        forward = np.max(np.min(self._coords[np.ix_(a, b)], axis=1), axis=0)
        backward = np.max(np.min(self._coords[np.ix_(b, a)], axis=1), axis=0)
        return self.space.from_cone_coords(np.maximum(forward, backward))

    # -- bound-set membership ----------------------------------------------

    def bounds_into(self, eps: ConeVector, x: int, targets: Iterable[int]) -> bool:
        """True iff eps is strictly positive and dominates some attained d(x, b)."""
        idx = _as_index_set(targets, self.n, "set")
        sp = self.space
        if not (sp.in_cone(eps) and not sp.is_zero(eps)):
            return False
        return any(sp.leq(self.dist[x][b], eps) for b in idx)

    def mutually_bounds(self, eps: ConeVector, aset: Iterable[int], bset: Iterable[int]) -> bool:
        """True iff eps strictly positive, every point of each set has a partner
        in the other set within eps (attained distances, not lattice infima)."""
        a = _as_index_set(aset, self.n, "set")
        b = _as_index_set(bset, self.n, "set")
        sp = self.space
        if not (sp.in_cone(eps) and not sp.is_zero(eps)):
            return False
        for p in a:
            if not any(sp.leq(self.dist[p][q], eps) for q in b):
                return False
        for q in b:
            if not any(sp.leq(self.dist[p][q], eps) for p in a):
                return False
        return True

    # -- potential-induced order --------------------------------------------

    def bronsted_leq(self, phi: Potential, x: int, y: int) -> bool:
        """x precedes y when d(x, y) <= phi(x) - phi(y); a partial order on points."""
        return self.space.leq(self.dist[x][y], phi[x] - phi[y])

    def bronsted_relation(self, phi: Potential) -> np.ndarray:
        """Full n x n boolean table of the potential-induced order."""
        if len(phi) != self.n:
            raise ValueError("potential does not cover every point")
        n = self.n
        rel = np.zeros((n, n), dtype=bool)
        for x in range(n):
            for y in range(n):
                rel[x, y] = self.bronsted_leq(phi, x, y)
        return rel

    def bronsted_maximal(self, phi: Potential, x0: int) -> tuple[int, ...]:
        """All maximal points above x0: exhaustive oracle for the climb solvers."""
        rel = self.bronsted_relation(phi)
        above = [y for y in range(self.n) if rel[x0, y]]
        return tuple(
            x for x in above if not any(rel[x, y] for y in range(self.n) if y != x)
        )
