"""Fixed-point and maximal-element solvers on finite cone metric spaces.

Each solver climbs a potential-induced order with a deterministic tie rule
and emits a trace whose every step carries the inequality that justified it,
plus a terminal certificate.  Traces are re-checkable without any solver
state via ``verify_trace``.  Hypotheses are enforced up front and raise
``PreconditionError``; conclusions guaranteed by the enforced hypotheses are
asserted and raise ``InternalConsistencyError`` if they ever fail, so a wrong
answer can never be returned silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Sequence

import numpy as np

from .cone_metric import ConeMetricSpace, Potential
from .errors import InternalConsistencyError, PreconditionError
from .mappings import (
    SetValuedMap,
    admissible_selectors,
    check_caristi_hypothesis,
    check_weak_contraction,
    displacement_potential,
)
from .ordered_space import ConeVector, LinearMap, ShrinkingCertificate

__all__ = [
    "StepWitness",
    "Certificate",
    "SolveTrace",
    "FixedPointSummary",
    "bishop_phelps_climb",
    "caristi_solve",
    "single_valued_solve",
    "takahashi_solve",
    "weak_contraction_solve",
    "brute_force_fixed_points",
    "verify_trace",
]


@dataclass(frozen=True)
class StepWitness:
    """One accepted move: the step distance and the potential drop that covers it."""

    d_step: ConeVector
    delta_phi: ConeVector


@dataclass(frozen=True)
class Certificate:
    """Terminal claim of a trace.

    kind is one of "maximal" (no strict successor above the start),
    "fixed_point" (point belongs to its image / equals its function value),
    "strict_fixed_point" (image is exactly the singleton), or
    "infimum_attained" (potential value equals the lattice infimum).
    """

    kind: str
    point: int
    phi_value: Optional[ConeVector] = None
    inf_value: Optional[ConeVector] = None


@dataclass(frozen=True)
class SolveTrace:
    method: str
    iterates: tuple[int, ...]
    step_witnesses: tuple[StepWitness, ...]
    certificate: Certificate
    iterations: int

    def __post_init__(self) -> None:
        if self.iterations != len(self.iterates) - 1:
            raise ValueError("iterations must count the moves between iterates")
        if len(self.step_witnesses) != self.iterations:
            raise ValueError("each move needs exactly one step witness")
        if len(set(self.iterates)) != len(self.iterates):
            raise ValueError("iterates must not repeat a point")


@dataclass(frozen=True)
class FixedPointSummary:
    """Exhaustive scan: members with x in Tx, and those with Tx == {x}."""

    members: tuple[int, ...]
    strict: tuple[int, ...]


def _coords_key(cms: ConeMetricSpace, v: ConeVector) -> tuple[float, ...]:
    return tuple(float(c) for c in cms.space.cone_coords(v))


def _climb(cms: ConeMetricSpace, phi: Potential, start: int) -> tuple[list[int], list[StepWitness]]:
    """Greedy ascent of the potential-induced order.

    Successor rule: among strict successors, minimize the successor's
    potential lexicographically in cone coordinates, then the point index.
    Each accepted move strictly decreases the potential in the cone order, so
    no point repeats and the walk stops within n-1 moves.
    """
    iterates = [start]
    witnesses: list[StepWitness] = []
    current = start
    for _ in range(cms.n):
        successors = [
            y for y in range(cms.n) if y != current and cms.bronsted_leq(phi, current, y)
        ]
        if not successors:
            return iterates, witnesses
        nxt = min(successors, key=lambda y: (_coords_key(cms, phi[y]), y))
        witnesses.append(StepWitness(cms.dist[current][nxt], phi[current] - phi[nxt]))
        iterates.append(nxt)
        current = nxt
    raise InternalConsistencyError("order climb exceeded the point count")


def _check_phi(cms: ConeMetricSpace, phi: Potential) -> None:
    if len(phi) != cms.n:
        raise ValueError("potential does not cover every point")


def _check_start(cms: ConeMetricSpace, start: int) -> int:
    start = int(start)
    if not 0 <= start < cms.n:
        raise ValueError("start point index out of range")
    return start


def bishop_phelps_climb(cms: ConeMetricSpace, phi: Potential, start: int) -> SolveTrace:
    """Climb from ``start`` to a point with no strict successor above it."""
    _check_phi(cms, phi)
    start = _check_start(cms, start)
    iterates, witnesses = _climb(cms, phi, start)
    top = iterates[-1]
    return SolveTrace(
        method="bishop_phelps",
        iterates=tuple(iterates),
        step_witnesses=tuple(witnesses),
        certificate=Certificate(kind="maximal", point=top),
        iterations=len(iterates) - 1,
    )


def caristi_solve(
    cms: ConeMetricSpace,
    tmap: SetValuedMap,
    phi: Potential,
    mode: Literal["exists", "forall"] = "exists",
    start: int = 0,
) -> SolveTrace:
    """Find x* in Tx* (mode "exists") or Tx* == {x*} (mode "forall").

    Requires the per-point absorption hypothesis in the given mode; with it,
    any maximal point of the climb is a fixed point, so a single climb
    suffices from any start.
    """
    _check_phi(cms, phi)
    start = _check_start(cms, start)
    report = check_caristi_hypothesis(cms, tmap, phi, mode)
    if not report.holds:
        w = report.witnesses[0]
        raise PreconditionError(
            f"hypothesis ({mode}) fails at point {w.x}: no admissible image member"
            if mode == "exists"
            else f"hypothesis (forall) fails at pair ({w.x}, {w.y})"
        )
    iterates, witnesses = _climb(cms, phi, start)
    top = iterates[-1]
    if top not in tmap.image(top):
        raise InternalConsistencyError("maximal point escaped its own image")
    if mode == "forall":
        if tmap.image(top) != (top,):
            raise InternalConsistencyError("image of the maximal point is not a singleton")
        certificate = Certificate(kind="strict_fixed_point", point=top)
    else:
        certificate = Certificate(kind="fixed_point", point=top)
    return SolveTrace(
        method="caristi",
        iterates=tuple(iterates),
        step_witnesses=tuple(witnesses),
        certificate=certificate,
        iterations=len(iterates) - 1,
    )


def single_valued_solve(
    cms: ConeMetricSpace,
    func: Sequence[int],
    phi: Potential,
    start: int = 0,
) -> SolveTrace:
    """Iterate a single-valued map whose every step is absorbed by the potential drop."""
    _check_phi(cms, phi)
    start = _check_start(cms, start)
    func = tuple(int(v) for v in func)
    if len(func) != cms.n or any(not 0 <= v < cms.n for v in func):
        raise ValueError("function table must map every point to a point")
    for x in range(cms.n):
        if not cms.space.leq(cms.dist[x][func[x]], phi[x] - phi[func[x]]):
            raise PreconditionError(
                f"step inequality fails at point {x}: d(x, f(x)) exceeds the potential drop"
            )
    iterates = [start]
    witnesses: list[StepWitness] = []
    current = start
    for _ in range(cms.n):
        nxt = func[current]
        if nxt == current:
            return SolveTrace(
                method="single_valued",
                iterates=tuple(iterates),
                step_witnesses=tuple(witnesses),
                certificate=Certificate(kind="fixed_point", point=current),
                iterations=len(iterates) - 1,
            )
        witnesses.append(StepWitness(cms.dist[current][nxt], phi[current] - phi[nxt]))
        iterates.append(nxt)
        current = nxt
    raise InternalConsistencyError("single-valued iteration failed to stop within n moves")


def takahashi_solve(cms: ConeMetricSpace, phi: Potential, start: int = 0) -> SolveTrace:
    """Reach a point whose potential equals the lattice infimum of all values.

    Hypothesis (enforced at every point): whenever a point's value sits
    strictly above the infimum, some other point absorbs the drop.  Under it,
    any maximal point of the climb attains the infimum exactly.
    """
    _check_phi(cms, phi)
    start = _check_start(cms, start)
    inf_value = cms.space.lattice_inf(phi.values)
    for x0 in range(cms.n):
        if cms.space.eq(phi[x0], inf_value):
            continue
        if not any(cms.bronsted_leq(phi, x0, x) for x in range(cms.n) if x != x0):
            raise PreconditionError(
                f"descent hypothesis fails at point {x0}: value above the infimum "
                "with no admissible successor"
            )
    iterates, witnesses = _climb(cms, phi, start)
    top = iterates[-1]
    if not cms.space.eq(phi[top], inf_value):
        raise InternalConsistencyError("maximal point does not attain the lattice infimum")
    return SolveTrace(
        method="takahashi",
        iterates=tuple(iterates),
        step_witnesses=tuple(witnesses),
        certificate=Certificate(
            kind="infimum_attained", point=top, phi_value=phi[top], inf_value=inf_value
        ),
        iterations=len(iterates) - 1,
    )


def _inverse_with_positivity(cms: ConeMetricSpace, cone_matrix: np.ndarray) -> np.ndarray:
    """Invert the rescaled-shift operator in cone coordinates and verify positivity.

    For a certified shrinking operator the matrix is diagonal and the inverse
    is taken entrywise; a dense inverse covers anything else, and in both
    paths a non-positive inverse is an internal error, never a silent fallback.
    """
    space = cms.space
    tol = space.tol * max(1.0, float(np.max(np.abs(cone_matrix))))
    off = cone_matrix - np.diag(np.diag(cone_matrix))
    if np.all(np.abs(off) <= tol):
        diag = np.diag(cone_matrix)
        if np.any(diag <= 0.0):
            raise InternalConsistencyError("rescaled shift of a certified operator is singular")
        inverse = np.diag(1.0 / diag)
    else:
        if abs(float(np.linalg.det(cone_matrix))) <= 1e-14:
            raise InternalConsistencyError("rescaled shift of a certified operator is singular")
        inverse = np.linalg.inv(cone_matrix)
    if np.any(inverse < -space.tol * max(1.0, float(np.max(np.abs(inverse))))):
        raise InternalConsistencyError("inverse of the rescaled shift is not positive")
    return inverse


def weak_contraction_solve(
    cms: ConeMetricSpace,
    tmap: SetValuedMap,
    shrink: ShrinkingCertificate,
    slack: LinearMap,
    eps: float,
    start: int = 0,
) -> SolveTrace:
    """Iterate a near-optimal selector of a weak contraction to a fixed point.

    Preconditions (all enforced): the weak-contraction bound holds, every
    point has an admissible selector at level ``eps``, and 1/(1+eps) exceeds
    the certified factor.  The solver builds the potential
    (1/(1+eps) * I - delta)^{-1} applied to the displacement, then repeatedly
    moves to the admissible image member with lexicographically smallest step
    distance (ties by index).  Every step's absorption inequality is a
    theorem consequence and is asserted.
    """
    start = _check_start(cms, start)
    if not eps > 0.0:
        raise PreconditionError("eps must be positive")
    report = check_weak_contraction(cms, tmap, shrink, slack)
    if not report.holds:
        w = report.witnesses[0]
        raise PreconditionError(
            f"weak-contraction bound fails at pair ({w.x}, {w.y})"
        )
    selectors = admissible_selectors(cms, tmap, eps)
    for x, candidates in enumerate(selectors):
        if not candidates:
            raise PreconditionError(f"selector condition fails at point {x} for eps={eps}")
    scale = 1.0 / (1.0 + eps)
    if not scale > shrink.factor:
        raise PreconditionError(
            f"1/(1+eps) = {scale} must exceed the certified factor {shrink.factor}"
        )

    space = cms.space
    shift = scale * np.eye(space.dim) - space.operator_cone_matrix(shrink.map)
    inverse = _inverse_with_positivity(cms, shift)
    disp = displacement_potential(cms, tmap)
    phi = Potential(
        tuple(space.from_cone_coords(inverse @ space.cone_coords(v)) for v in disp.values)
    )

    iterates = [start]
    witnesses: list[StepWitness] = []
    current = start
    for _ in range(cms.n):
        if current in tmap.image(current):
            return SolveTrace(
                method="weak_contraction",
                iterates=tuple(iterates),
                step_witnesses=tuple(witnesses),
                certificate=Certificate(kind="fixed_point", point=current),
                iterations=len(iterates) - 1,
            )
        nxt = min(
            selectors[current],
            key=lambda y: (_coords_key(cms, cms.dist[current][y]), y),
        )
        gap = cms.dist[current][nxt]
        drop = phi[current] - phi[nxt]
        if not space.leq(gap, drop):
            raise InternalConsistencyError(
                f"selector step ({current} -> {nxt}) violates the absorption inequality"
            )
        witnesses.append(StepWitness(gap, drop))
        iterates.append(nxt)
        current = nxt
    raise InternalConsistencyError("selector iteration failed to stop within n moves")


def brute_force_fixed_points(cms: ConeMetricSpace, tmap: SetValuedMap) -> FixedPointSummary:
    """Oracle scan for every fixed-point claim."""
    if tmap.n != cms.n:
        raise ValueError("mapping does not cover every point")
    members = tuple(x for x in range(cms.n) if x in tmap.image(x))
    strict = tuple(x for x in range(cms.n) if tmap.image(x) == (x,))
    return FixedPointSummary(members=members, strict=strict)


def verify_trace(
    trace: SolveTrace,
    cms: ConeMetricSpace,
    phi: Optional[Potential] = None,
    tmap: Optional[SetValuedMap] = None,
    func: Optional[Sequence[int]] = None,
) -> None:
    """Re-check a trace with no solver state; raises ValueError on any mismatch.

    Every step witness must satisfy its recorded inequality and match the
    actual distance between consecutive iterates; the certificate is re-tested
    against whichever of ``phi``/``tmap``/``func`` its kind requires.
    """
    sp = cms.space
    for k, witness in enumerate(trace.step_witnesses):
        a, b = trace.iterates[k], trace.iterates[k + 1]
        if not sp.eq(witness.d_step, cms.dist[a][b]):
            raise ValueError(f"step {k}: recorded distance differs from the table")
        if not sp.leq(witness.d_step, witness.delta_phi):
            raise ValueError(f"step {k}: distance is not absorbed by the potential drop")
        if phi is not None and trace.method != "weak_contraction":
            if not sp.eq(witness.delta_phi, phi[a] - phi[b]):
                raise ValueError(f"step {k}: recorded potential drop differs from the potential")
    cert = trace.certificate
    if cert.point != trace.iterates[-1]:
        raise ValueError("certificate does not name the final iterate")
    if cert.kind == "maximal":
        if phi is None:
            raise ValueError("re-checking a maximality certificate requires the potential")
        if cert.point not in cms.bronsted_maximal(phi, trace.iterates[0]):
            raise ValueError("claimed point is not maximal above the start")
    elif cert.kind == "fixed_point":
        if trace.method == "single_valued":
            if func is None:
                raise ValueError("re-checking a function fixed point requires the function")
            if int(func[cert.point]) != cert.point:
                raise ValueError("claimed point is not fixed by the function")
        else:
            if tmap is None:
                raise ValueError("re-checking a fixed point requires the mapping")
            if cert.point not in brute_force_fixed_points(cms, tmap).members:
                raise ValueError("claimed point does not belong to its image")
    elif cert.kind == "strict_fixed_point":
        if tmap is None:
            raise ValueError("re-checking a strict fixed point requires the mapping")
        if cert.point not in brute_force_fixed_points(cms, tmap).strict:
            raise ValueError("claimed image is not the singleton of the point")
    elif cert.kind == "infimum_attained":
        if phi is None:
            raise ValueError("re-checking an infimum certificate requires the potential")
        inf_value = cms.space.lattice_inf(phi.values)
        if not sp.eq(phi[cert.point], inf_value):
            raise ValueError("claimed point does not attain the lattice infimum")
    else:
        raise ValueError(f"unknown certificate kind: {cert.kind}")
