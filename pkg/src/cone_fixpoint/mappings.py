"""Set-valued mappings on a finite space and their contraction classifiers.

Every classifier scans ordered point pairs in row-major order and returns a
report that either holds or carries the violating pairs together with both
sides of the failed inequality, so runs are reproducible and witness order is
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

from .cone_metric import ConeMetricSpace, Potential
from .errors import PreconditionError
from .ordered_space import ConeVector, LinearMap, ShrinkingCertificate

__all__ = [
    "SetValuedMap",
    "PairWitness",
    "ClassifierReport",
    "displacement_potential",
    "check_weak_contraction",
    "check_contraction",
    "check_pointwise_contraction",
    "check_kannan",
    "check_chatterjea",
    "admissible_selectors",
    "check_caristi_hypothesis",
]


@dataclass(frozen=True)
class SetValuedMap:
    """Maps each point index to a nonempty set of point indices."""

    images: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        images = []
        for i, raw in enumerate(self.images):
            members = tuple(sorted(set(int(p) for p in raw)))
            if not members:
                raise ValueError(f"image of point {i} must be nonempty")
            if members[0] < 0:
                raise ValueError("image indices must be nonnegative")
            images.append(members)
        object.__setattr__(self, "images", tuple(images))

    @classmethod
    def from_lists(cls, lists: Iterable[Iterable[int]]) -> "SetValuedMap":
        return cls(tuple(tuple(xs) for xs in lists))

    @property
    def n(self) -> int:
        return len(self.images)

    def image(self, i: int) -> tuple[int, ...]:
        return self.images[i]


@dataclass(frozen=True)
class PairWitness:
    x: int
    y: int
    lhs: ConeVector
    rhs: ConeVector


@dataclass(frozen=True)
class ClassifierReport:
    condition: str
    holds: bool
    witnesses: tuple[PairWitness, ...]
    params: tuple[tuple[str, object], ...] = ()

    def __post_init__(self) -> None:
        if self.holds != (not self.witnesses):
            raise ValueError("holds must mirror an empty witness list")


def _check_compat(cms: ConeMetricSpace, tmap: SetValuedMap) -> None:
    if tmap.n != cms.n:
        raise ValueError("mapping does not cover every point")
    for i in range(tmap.n):
        if tmap.image(i)[-1] >= cms.n:
            raise ValueError("mapping image contains an out-of-range point index")


def _require_certified(cms: ConeMetricSpace, cert: ShrinkingCertificate, name: str) -> None:
    derived = cms.space.shrinking_factor(cert.map)
    if derived is None or cert.factor < derived.factor - 1e-9:
        raise PreconditionError(
            f"{name} is not a valid shrinking certificate for this space"
        )


def displacement_potential(cms: ConeMetricSpace, tmap: SetValuedMap) -> Potential:
    """Distance from each point to its own image; zero at every fixed point."""
    _check_compat(cms, tmap)
    return Potential(tuple(cms.dist_to_set(x, tmap.image(x)) for x in range(cms.n)))


def _scan_pairs(cms, condition, params, lhs_rhs, pairs=None) -> ClassifierReport:
    witnesses = []
    pairs = pairs if pairs is not None else (
        (x, y) for x in range(cms.n) for y in range(cms.n)
    )
    for x, y in pairs:
        lhs, rhs = lhs_rhs(x, y)
        if not cms.space.leq(lhs, rhs):
            witnesses.append(PairWitness(x, y, lhs, rhs))
    return ClassifierReport(
        condition=condition,
        holds=not witnesses,
        witnesses=tuple(witnesses),
        params=tuple(params),
    )


def check_weak_contraction(
    cms: ConeMetricSpace,
    tmap: SetValuedMap,
    shrink: ShrinkingCertificate,
    slack: LinearMap,
) -> ClassifierReport:
    """Image gap bounded by a shrunk distance plus a positive-operator carry term.

    The right-hand side is asymmetric in (x, y), so both orders of every pair
    are checked.
    """
    _check_compat(cms, tmap)
    _require_certified(cms, shrink, "delta")
    if not cms.space.is_positive_operator(slack):
        raise PreconditionError("L must be a positive linear operator")

    def sides(x: int, y: int):
        lhs = cms.hausdorff(tmap.image(x), tmap.image(y))
        rhs = shrink.map.apply(cms.dist[x][y]) + slack.apply(
            cms.dist_to_set(y, tmap.image(x))
        )
        return lhs, rhs

    return _scan_pairs(
        cms, "weak_contraction", [("delta", shrink), ("L", slack)], sides
    )


def check_contraction(
    cms: ConeMetricSpace, tmap: SetValuedMap, ratio: ShrinkingCertificate
) -> ClassifierReport:
    """Image gap bounded by a certified shrinking of the point distance.

    Equivalent to a scalar bound with multiplier ``ratio.factor``, echoed in
    the report parameters.
    """
    _check_compat(cms, tmap)
    _require_certified(cms, ratio, "k")

    def sides(x: int, y: int):
        return (
            cms.hausdorff(tmap.image(x), tmap.image(y)),
            ratio.map.apply(cms.dist[x][y]),
        )

    return _scan_pairs(
        cms, "contraction", [("k", ratio), ("t", ratio.factor)], sides
    )


def check_pointwise_contraction(
    cms: ConeMetricSpace, tmap: SetValuedMap, ratio: ShrinkingCertificate
) -> ClassifierReport:
    """Stronger contraction: the shrunk distance must dominate attained
    cross-distances from every point of each image into the other.

    Quantified over x != y only: at x = y the bound collapses to the zero
    vector, which is never strictly positive, so the diagonal is exempt.
    Witness sides are the best attained candidate distance vs the bound.
    """
    _check_compat(cms, tmap)
    _require_certified(cms, ratio, "k")
    witnesses = []
    for x in range(cms.n):
        for y in range(cms.n):
            if x == y:
                continue
            bound = ratio.map.apply(cms.dist[x][y])
            if cms.mutually_bounds(bound, tmap.image(x), tmap.image(y)):
                continue
            lhs = _blocking_distance(cms, bound, tmap.image(x), tmap.image(y))
            witnesses.append(PairWitness(x, y, lhs, bound))
    return ClassifierReport(
        condition="pointwise_contraction",
        holds=not witnesses,
        witnesses=tuple(witnesses),
        params=(("k", ratio), ("t", ratio.factor)),
    )


def _blocking_distance(cms, bound, aset, bset) -> ConeVector:
    """Deterministic witness side for a failed two-sided bound membership."""
    sp = cms.space
    if not (sp.in_cone(bound) and not sp.is_zero(bound)):
        return sp.zero
    for p in aset:
        if not any(sp.leq(cms.dist[p][q], bound) for q in bset):
            return min(
                (cms.dist[p][q] for q in bset),
                key=lambda v: tuple(sp.cone_coords(v)),
            )
    for q in bset:
        if not any(sp.leq(cms.dist[p][q], bound) for p in aset):
            return min(
                (cms.dist[p][q] for p in aset),
                key=lambda v: tuple(sp.cone_coords(v)),
            )
    return sp.zero


def _half_certified(cms: ConeMetricSpace, coeff: LinearMap, condition: str) -> ShrinkingCertificate:
    doubled = cms.space.shrinking_factor(coeff.scale(2.0))
    if doubled is None:
        witness = cms.space.shrinking_witness(coeff.scale(2.0))
        detail = (
            f"; witness ray {list(witness.coords)}" if witness is not None else ""
        )
        raise PreconditionError(
            f"{condition} coefficient: doubled operator has no shrinking certificate{detail}"
        )
    return doubled


def check_kannan(cms: ConeMetricSpace, tmap: SetValuedMap, coeff: LinearMap) -> ClassifierReport:
    """Image gap bounded by coeff applied to the sum of both self-displacements."""
    _check_compat(cms, tmap)
    _half_certified(cms, coeff, "Kannan")
    disp = displacement_potential(cms, tmap)

    def sides(x: int, y: int):
        return (
            cms.hausdorff(tmap.image(x), tmap.image(y)),
            coeff.apply(disp[x] + disp[y]),
        )

    return _scan_pairs(cms, "kannan", [("alpha", coeff)], sides)


def check_chatterjea(cms: ConeMetricSpace, tmap: SetValuedMap, coeff: LinearMap) -> ClassifierReport:
    """Image gap bounded by coeff applied to the sum of the crossed displacements."""
    _check_compat(cms, tmap)
    _half_certified(cms, coeff, "Chatterjea")

    def sides(x: int, y: int):
        crossed = cms.dist_to_set(x, tmap.image(y)) + cms.dist_to_set(y, tmap.image(x))
        return cms.hausdorff(tmap.image(x), tmap.image(y)), coeff.apply(crossed)

    return _scan_pairs(cms, "chatterjea", [("alpha", coeff)], sides)


def admissible_selectors(
    cms: ConeMetricSpace, tmap: SetValuedMap, eps: float
) -> tuple[tuple[int, ...], ...]:
    """Per-point successors y in Tx with d(x, y) within (1+eps) of the displacement.

    The displacement is a lattice infimum, so a set here can be empty; the
    near-optimal-selector condition holds at level eps iff none is.
    """
    if not eps > 0.0:
        raise PreconditionError("eps must be positive")
    _check_compat(cms, tmap)
    disp = displacement_potential(cms, tmap)
    out = []
    for x in range(cms.n):
        budget = (1.0 + eps) * disp[x]
        out.append(
            tuple(y for y in tmap.image(x) if cms.space.leq(cms.dist[x][y], budget))
        )
    return tuple(out)


def check_caristi_hypothesis(
    cms: ConeMetricSpace,
    tmap: SetValuedMap,
    phi: Potential,
    mode: Literal["exists", "forall"],
) -> ClassifierReport:
    """Per point, some (or every) image member must absorb the potential drop.

    In ``exists`` mode a point fails only when all of its image members fail,
    and every such pair is listed; in ``forall`` mode each failing pair is a
    witness on its own.
    """
    _check_compat(cms, tmap)
    if len(phi) != cms.n:
        raise ValueError("potential does not cover every point")
    if mode not in ("exists", "forall"):
        raise ValueError("mode must be 'exists' or 'forall'")
    witnesses = []
    for x in range(cms.n):
        failing = [
            y
            for y in tmap.image(x)
            if not cms.space.leq(cms.dist[x][y], phi[x] - phi[y])
        ]
        if mode == "forall" or len(failing) == len(tmap.image(x)):
            witnesses.extend(
                PairWitness(x, y, cms.dist[x][y], phi[x] - phi[y]) for y in failing
            )
    return ClassifierReport(
        condition=f"caristi_{mode}",
        holds=not witnesses,
        witnesses=tuple(witnesses),
        params=(("mode", mode),),
    )
