"""Seeded random instance generation, one kind per solver hypothesis.

Every kind is deterministic in its seed and is verified after construction
with the corresponding classifier; hypotheses are never silently relaxed.
A rejection loop that cannot produce an admissible instance within the
attempt budget raises ``GenerationBudgetError``.
"""

from __future__ import annotations

import numpy as np

from ..cone_metric import Potential
from ..errors import GenerationBudgetError, PreconditionError
from ..mappings import (
    SetValuedMap,
    admissible_selectors,
    check_caristi_hypothesis,
    check_weak_contraction,
)
from ..ordered_space import LinearMap, OrderedSpace
from ..solvers import brute_force_fixed_points
from .instance import Instance, default_tolerance

__all__ = [
    "KINDS",
    "generate_instance",
    "random_images",
    "random_vector_rows",
]

KINDS = ("random_metric", "caristi", "weak_contraction", "takahashi")

BUDGET = 10_000


def _random_space_doc(rng: np.random.Generator, m: int, tol: float) -> dict:
    if rng.random() < 0.3:
        gens = np.eye(m)
    else:
        for _ in range(BUDGET):
            gens = np.eye(m) + 0.4 * rng.uniform(-1.0, 1.0, size=(m, m))
            if (
                abs(np.linalg.det(gens)) > 1e-3
                and np.linalg.cond(gens) < 50.0
            ):
                break
        else:
            raise GenerationBudgetError("generation budget exhausted")
    return {"dim": m, "generators": [list(map(float, row)) for row in gens], "tol": tol}


def _random_cloud(rng: np.random.Generator, n: int, k: int = 3) -> np.ndarray:
    for _ in range(BUDGET):
        pts = rng.uniform(0.0, 10.0, size=(n, k))
        if n == 1:
            return pts
        diff = pts[:, None, :] - pts[None, :, :]
        gaps = np.sqrt(np.sum(diff * diff, axis=2))
        if np.min(gaps[~np.eye(n, dtype=bool)]) > 1e-3:
            return pts
    raise GenerationBudgetError("generation budget exhausted")


def _base_doc(rng: np.random.Generator, n: int, m: int) -> dict:
    """Point cloud metric scaled by an interior weight; always passes the axioms."""
    space_doc = _random_space_doc(rng, m, default_tolerance())
    gens = np.array(space_doc["generators"], dtype=float)
    weight = gens @ rng.uniform(0.3, 2.0, size=m)
    cloud = _random_cloud(rng, n)
    if rng.random() < 0.5:
        rho = {"kind": "euclidean", "coords": [list(map(float, row)) for row in cloud]}
    else:
        diff = cloud[:, None, :] - cloud[None, :, :]
        table = np.sqrt(np.sum(diff * diff, axis=2))
        rho = {"kind": "table", "values": [list(map(float, row)) for row in table]}
    return {
        "version": 1,
        "space": space_doc,
        "points": [f"p{i}" for i in range(n)],
        "metric": {"kind": "scaled_scalar", "rho": rho, "weight": list(map(float, weight))},
    }


def random_images(rng: np.random.Generator, n: int, max_size: int = 3) -> list[list[int]]:
    """A random nonempty image set per point."""
    out = []
    for _ in range(n):
        size = int(rng.integers(1, min(max_size, n) + 1))
        out.append(sorted(int(v) for v in rng.choice(n, size=size, replace=False)))
    return out


def random_vector_rows(
    rng: np.random.Generator, space: OrderedSpace, n: int, low: float = -5.0, high: float = 5.0
) -> list[list[float]]:
    """Random ambient vectors, one row per point."""
    return [list(map(float, rng.uniform(low, high, size=space.dim))) for _ in range(n)]


def _caristi_doc(rng: np.random.Generator, n: int, m: int) -> dict:
    doc = _base_doc(rng, n, m)
    inst = Instance.from_dict(doc)
    cms, space = inst.cms, inst.space

    order = [int(v) for v in rng.permutation(n)]
    coords = np.zeros((n, m))
    parent = {order[0]: order[0]}
    coords[order[0]] = rng.uniform(0.0, 2.0, size=m)
    for pos in range(1, n):
        x = order[pos]
        p = order[int(rng.integers(0, pos))]
        parent[x] = p
        coords[x] = (
            coords[p]
            + space.cone_coords(cms.dist[x][p])
            + rng.uniform(0.05, 1.0, size=m)
        )
    coords += rng.uniform(-5.0, 5.0, size=m)
    rows = [list(map(float, space.gen_matrix @ c)) for c in coords]
    phi = Potential.from_rows(rows)

    images = []
    for x in range(n):
        members = {parent[x]}
        for y in rng.choice(n, size=min(2, n), replace=False):
            y = int(y)
            if cms.space.leq(cms.dist[x][y], phi[x] - phi[y]):
                members.add(y)
        images.append(sorted(members))

    doc["maps"] = {"T": images}
    doc["potentials"] = {"phi": rows}
    return doc


def _takahashi_doc(rng: np.random.Generator, n: int, m: int) -> dict:
    doc = _base_doc(rng, n, m)
    inst = Instance.from_dict(doc)
    cms, space = inst.cms, inst.space

    coords = rng.uniform(0.0, 6.0, size=(n, m))
    attainer = int(rng.integers(n))
    coords[attainer] = coords.min(axis=0)
    coords += rng.uniform(-5.0, 5.0, size=m)

    for _ in range(n + 2):
        rows = [list(map(float, space.gen_matrix @ c)) for c in coords]
        phi = Potential.from_rows(rows)
        inf_value = space.lattice_inf(phi.values)
        stranded = [
            x0
            for x0 in range(n)
            if not space.eq(phi[x0], inf_value)
            and not any(cms.bronsted_leq(phi, x0, x) for x in range(n) if x != x0)
        ]
        if not stranded:
            break
        for x0 in stranded:
            coords[x0] = np.maximum(
                coords[x0], coords[attainer] + space.cone_coords(cms.dist[x0][attainer])
            )

    doc["potentials"] = {"phi": [list(map(float, space.gen_matrix @ c)) for c in coords]}
    return doc


def _weak_contraction_doc(rng: np.random.Generator, n: int, m: int) -> dict:
    doc = _base_doc(rng, n, m)
    inst = Instance.from_dict(doc)
    cms, space = inst.cms, inst.space

    t = float(rng.uniform(0.1, 0.8))
    eps = min((1.0 - t) / (2.0 * t), 0.5)
    delta = LinearMap.scaled_identity(m, t)
    carry = space.gen_matrix @ rng.uniform(0.0, 0.3, size=(m, m)) @ space.gen_inverse
    slack = LinearMap.from_array(carry)
    cert = space.shrinking_factor(delta)
    if cert is None:
        raise GenerationBudgetError("generation budget exhausted")

    anchor = int(rng.integers(n))
    images = [set(img) for img in random_images(rng, n)]
    images[anchor].add(anchor)

    def shrink_toward_anchor(x: int) -> None:
        if anchor not in images[x]:
            images[x].add(anchor)
        elif len(images[x]) > 1:
            images[x].discard(max(p for p in images[x] if p != anchor))

    for _ in range(BUDGET):
        tmap = SetValuedMap.from_lists(sorted(img) for img in images)
        report = check_weak_contraction(cms, tmap, cert, slack)
        if not report.holds:
            first = report.witnesses[0]
            shrink_toward_anchor(first.x)
            shrink_toward_anchor(first.y)
            continue
        selectors = admissible_selectors(cms, tmap, eps)
        starved = [x for x, cands in enumerate(selectors) if not cands]
        if starved:
            shrink_toward_anchor(starved[0])
            continue
        break
    else:
        raise GenerationBudgetError("generation budget exhausted")

    doc["maps"] = {"T": [sorted(img) for img in images]}
    doc["operators"] = {
        "delta": [list(map(float, row)) for row in delta.matrix],
        "L": [list(map(float, row)) for row in slack.matrix],
    }
    doc["meta"] = {"epsilon": eps, "factor": t}
    return doc


def _verify_kind(inst: Instance, kind: str) -> bool:
    if kind == "random_metric":
        return inst.cms.validate().passed
    if kind == "caristi":
        cms, tmap, phi = inst.cms, inst.get_map("T"), inst.get_potential("phi")
        return (
            check_caristi_hypothesis(cms, tmap, phi, "exists").holds
            and check_caristi_hypothesis(cms, tmap, phi, "forall").holds
        )
    if kind == "takahashi":
        cms, phi = inst.cms, inst.get_potential("phi")
        space = cms.space
        inf_value = space.lattice_inf(phi.values)
        return all(
            space.eq(phi[x0], inf_value)
            or any(cms.bronsted_leq(phi, x0, x) for x in range(cms.n) if x != x0)
            for x0 in range(cms.n)
        )
    if kind == "weak_contraction":
        cms, tmap = inst.cms, inst.get_map("T")
        eps = float(inst.meta_dict()["epsilon"])
        cert = cms.space.shrinking_factor(inst.get_operator("delta"))
        if cert is None or not 1.0 / (1.0 + eps) > cert.factor:
            return False
        if not check_weak_contraction(cms, tmap, cert, inst.get_operator("L")).holds:
            return False
        if any(not cands for cands in admissible_selectors(cms, tmap, eps)):
            return False
        return bool(brute_force_fixed_points(cms, tmap).members)
    raise ValueError(f"unknown instance kind: {kind}")


_BUILDERS = {
    "random_metric": lambda rng, n, m: _base_doc(rng, n, m),
    "caristi": _caristi_doc,
    "takahashi": _takahashi_doc,
    "weak_contraction": _weak_contraction_doc,
}


def generate_instance(kind: str, n: int, m: int, seed: int) -> Instance:
    """Deterministically generate an instance whose advertised hypotheses hold."""
    if kind not in KINDS:
        raise ValueError(f"unknown instance kind {kind!r}; available: {', '.join(KINDS)}")
    if n < 1 or m < 1:
        raise PreconditionError("n and m must be at least 1")
    for attempt in range(20):
        rng = np.random.default_rng([int(seed), KINDS.index(kind), attempt])
        doc = _BUILDERS[kind](rng, n, m)
        meta = doc.setdefault("meta", {})
        meta.setdefault("seed", int(seed))
        meta.setdefault("kind", kind)
        meta.setdefault("description", f"generated {kind} instance (n={n}, m={m}, seed={seed})")
        inst = Instance.from_dict(doc)
        if _verify_kind(inst, kind):
            return inst
    raise GenerationBudgetError("generation budget exhausted")
