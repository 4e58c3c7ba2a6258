"""Named property suites over generated instances, with failure shrinking.

Each suite pairs a seeded instance generator with a pure checker
``Instance -> message | None``.  A trial fails when the checker returns a
message; the failing instance is then shrunk (greedy point removal, plus a
rounding rollback for explicit tables) and serialized into the report, so
every failure is re-loadable and re-failing.  Trial sub-seeds are derived as
(seed, trial index), which makes sharding a no-op for results.
"""

from __future__ import annotations

import copy
import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..cone_metric import ConeMetricSpace
from ..errors import ConeFixpointError
from ..mappings import (
    SetValuedMap,
    admissible_selectors,
    check_caristi_hypothesis,
    check_chatterjea,
    check_contraction,
    check_kannan,
    check_pointwise_contraction,
    check_weak_contraction,
    displacement_potential,
)
from ..ordered_space import ConeVector, LinearMap, OrderedSpace
from ..solvers import (
    bishop_phelps_climb,
    brute_force_fixed_points,
    caristi_solve,
    takahashi_solve,
    verify_trace,
    weak_contraction_solve,
)
from .generators import generate_instance, random_images, random_vector_rows
from .instance import Instance

__all__ = ["Suite", "SuiteFailure", "SuiteReport", "SUITES", "run_property_suite"]


@dataclass(frozen=True)
class SuiteFailure:
    trial: int
    message: str
    instance: dict

    def to_dict(self) -> dict:
        return {"trial": self.trial, "message": self.message, "instance": self.instance}


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    trials: int
    seed: int
    failures: tuple[SuiteFailure, ...]
    elapsed_seconds: float

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, include_elapsed: bool = False) -> dict:
        doc = {
            "suite": self.suite,
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed,
            "failures": [f.to_dict() for f in self.failures],
        }
        if include_elapsed:
            doc["elapsed_seconds"] = self.elapsed_seconds
        return doc


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    generate: Callable[[np.random.Generator], Instance]
    check: Callable[[Instance], Optional[str]]


# -- shrinking ----------------------------------------------------------------


def _drop_point_doc(doc: dict, p: int) -> Optional[dict]:
    points = doc["points"]
    if len(points) <= 1:
        return None
    out = copy.deepcopy(doc)
    out["points"] = points[:p] + points[p + 1 :]
    metric = out["metric"]
    if metric["kind"] == "table":
        metric["values"] = [
            [entry for j, entry in enumerate(row) if j != p]
            for i, row in enumerate(metric["values"])
            if i != p
        ]
    else:
        rho = metric["rho"]
        key = "values" if rho["kind"] == "table" else "coords"
        if rho["kind"] == "table":
            rho["values"] = [
                [v for j, v in enumerate(row) if j != p]
                for i, row in enumerate(rho["values"])
                if i != p
            ]
        else:
            rho[key] = [row for i, row in enumerate(rho[key]) if i != p]
    for name, images in list(out.get("maps", {}).items()):
        shrunk = []
        for i, img in enumerate(images):
            if i == p:
                continue
            moved = [q - (1 if q > p else 0) for q in img if q != p]
            if not moved:
                return None
            shrunk.append(moved)
        out["maps"][name] = shrunk
    for name, rows in list(out.get("potentials", {}).items()):
        out["potentials"][name] = [row for i, row in enumerate(rows) if i != p]
    return out


def _round_table_doc(doc: dict) -> Optional[dict]:
    if doc["metric"]["kind"] != "table":
        return None
    out = copy.deepcopy(doc)
    out["metric"]["values"] = [
        [[float(f"{v:.6g}") for v in entry] for entry in row]
        for row in out["metric"]["values"]
    ]
    return out


def shrink_instance(inst: Instance, check: Callable[[Instance], Optional[str]]) -> Instance:
    """Greedy point removal while the failure persists, then a table rounding pass."""
    doc = inst.to_dict()
    improved = True
    while improved:
        improved = False
        for p in reversed(range(len(doc["points"]))):
            candidate = _drop_point_doc(doc, p)
            if candidate is None:
                continue
            try:
                cand_inst = Instance.from_dict(candidate)
            except ConeFixpointError:
                continue
            if check(cand_inst) is not None:
                doc = candidate
                improved = True
                break
    rounded = _round_table_doc(doc)
    if rounded is not None:
        try:
            cand_inst = Instance.from_dict(rounded)
            if check(cand_inst) is not None:
                doc = rounded
        except ConeFixpointError:
            pass
    return Instance.from_dict(doc)


# -- shared generator helpers --------------------------------------------------


def _sub_seed(rng: np.random.Generator) -> int:
    return int(rng.integers(2**31))


def _sizes(rng, n_lo=2, n_hi=8, m_lo=1, m_hi=4) -> tuple[int, int]:
    return int(rng.integers(n_lo, n_hi + 1)), int(rng.integers(m_lo, m_hi + 1))


def _base(rng: np.random.Generator, n_lo=2, n_hi=8, m_lo=1, m_hi=4) -> Instance:
    n, m = _sizes(rng, n_lo, n_hi, m_lo, m_hi)
    return generate_instance("random_metric", n, m, _sub_seed(rng))


def _with_sections(inst: Instance, **sections) -> Instance:
    doc = inst.to_dict()
    for key, value in sections.items():
        merged = dict(doc.get(key, {}))
        merged.update(value)
        doc[key] = merged
    return Instance.from_dict(doc)


def _meta_rng(inst: Instance, salt: int) -> np.random.Generator:
    return np.random.default_rng([int(inst.meta_dict().get("seed", 0)), salt])


def _nonneg_rows(rng, space: OrderedSpace, n, low=0.0, high=2.0, boundary=False):
    rows = []
    for _ in range(n):
        c = rng.uniform(low, high, size=space.dim)
        if boundary and space.dim > 1:
            c[rng.random(size=space.dim) < 0.4] = 0.0
        rows.append(list(map(float, space.gen_matrix @ c)))
    return rows


def _diag_shrinking(rng, space: OrderedSpace, lo=0.05, hi=0.9) -> list[list[float]]:
    diag = rng.uniform(lo, hi, size=space.dim)
    mat = space.gen_matrix @ np.diag(diag) @ space.gen_inverse
    return [list(map(float, row)) for row in mat]


def _random_subset(rng, n: int) -> tuple[int, ...]:
    size = int(rng.integers(1, n + 1))
    return tuple(sorted(int(v) for v in rng.choice(n, size=size, replace=False)))


def _potential(inst: Instance, name: str = "phi"):
    return inst.get_potential(name)


# -- suite generators and checkers ---------------------------------------------


def _gen_order_axioms(rng) -> Instance:
    inst = _base(rng)
    space, n = inst.space, inst.n
    va = random_vector_rows(rng, space, n)
    step1 = _nonneg_rows(rng, space, n)
    step2 = _nonneg_rows(rng, space, n)
    vb = [[a + s for a, s in zip(ra, rs)] for ra, rs in zip(va, step1)]
    vd = [[b + s for b, s in zip(rb, rs)] for rb, rs in zip(vb, step2)]
    vc = random_vector_rows(rng, space, n)
    return _with_sections(inst, potentials={"va": va, "vb": vb, "vc": vc, "vd": vd})


def _check_order_axioms(inst: Instance) -> Optional[str]:
    sp = inst.space
    va, vb = _potential(inst, "va"), _potential(inst, "vb")
    vc, vd = _potential(inst, "vc"), _potential(inst, "vd")
    for i in range(inst.n):
        a, b, c, d = va[i], vb[i], vc[i], vd[i]
        if not sp.leq(a, a):
            return f"row {i}: order is not reflexive"
        if not sp.leq(a, b):
            return f"row {i}: constructed cone step is not accepted"
        if sp.leq(b, a) and not sp.eq(a, b):
            return f"row {i}: antisymmetry fails"
        if not sp.leq(a, vd[i]):
            return f"row {i}: transitivity fails on the constructed chain"
        if sp.leq(b, c) and not sp.leq(a, c):
            return f"row {i}: transitivity fails through a random vector"
    return None


def _gen_interior_chain(rng) -> Instance:
    inst = _base(rng)
    space, n = inst.space, inst.n
    va = random_vector_rows(rng, space, n)
    step = _nonneg_rows(rng, space, n, boundary=True)
    interior = _nonneg_rows(rng, space, n, low=0.1, high=2.0)
    vb = [[a + s for a, s in zip(ra, rs)] for ra, rs in zip(va, step)]
    vc = [[b + s for b, s in zip(rb, rs)] for rb, rs in zip(vb, interior)]
    return _with_sections(inst, potentials={"va": va, "vb": vb, "vc": vc})


def _check_interior_chain(inst: Instance) -> Optional[str]:
    sp = inst.space
    va, vb, vc = _potential(inst, "va"), _potential(inst, "vb"), _potential(inst, "vc")
    for i in range(inst.n):
        a, b, c = va[i], vb[i], vc[i]
        if sp.leq(a, b) and sp.strictly_interior_less(b, c):
            if not sp.strictly_interior_less(a, c):
                return f"row {i}: a <= b << c does not give a << c"
    return None


def _gen_lattice_laws(rng) -> Instance:
    inst = _base(rng)
    return _with_sections(
        inst, potentials={"rows": random_vector_rows(rng, inst.space, inst.n)}
    )


def _check_lattice_laws(inst: Instance) -> Optional[str]:
    sp = inst.space
    rows = _potential(inst, "rows").values
    inf_v, sup_v = sp.lattice_inf(rows), sp.lattice_sup(rows)
    for i, s in enumerate(rows):
        if not (sp.leq(inf_v, s) and sp.leq(s, sup_v)):
            return f"row {i}: inf/sup are not bounds"
    if not (sp.eq(sp.lattice_inf([rows[0]]), rows[0]) and sp.eq(sp.lattice_sup([rows[0]]), rows[0])):
        return "singleton inf/sup is not the identity"
    half = max(1, len(rows) // 2)
    split_inf = sp.lattice_inf([sp.lattice_inf(rows[:half]), sp.lattice_inf(rows[half:] or rows[:1])])
    whole_inf = sp.lattice_inf(rows[:half] + (rows[half:] or rows[:1]))
    if not sp.eq(split_inf, whole_inf):
        return "inf is not associative under set union"
    shift = rows[0]
    shifted_inf = sp.lattice_inf([v + shift for v in rows])
    if not sp.eq(shifted_inf, inf_v + shift):
        return "inf is not translation invariant"
    return None


def _gen_operator_shrinking(rng) -> Instance:
    inst = _base(rng)
    return _with_sections(
        inst,
        operators={
            "d1": _diag_shrinking(rng, inst.space),
            "d2": _diag_shrinking(rng, inst.space),
        },
    )


def _check_operator_shrinking(inst: Instance) -> Optional[str]:
    sp = inst.space
    rng = _meta_rng(inst, 11)
    c1 = sp.shrinking_factor(inst.get_operator("d1"))
    c2 = sp.shrinking_factor(inst.get_operator("d2"))
    if c1 is None or c2 is None:
        return "constructed diagonal operator was not certified"
    composed = c1.map.compose(c2.map)
    cc = sp.shrinking_factor(composed)
    if cc is None:
        return "composition of certified operators was not certified"
    if cc.factor > c1.factor * c2.factor + 1e-9:
        return "composition factor exceeds the product of factors"
    member, _ = sp.shrinking_oracle(composed, rng)
    if not member:
        return "sampling oracle rejects the composition"
    for cert in (c1, c2):
        if sp.spectral_radius_estimate(cert.map) > cert.factor + 1e-6:
            return "spectral radius estimate exceeds the certified factor"
        for _ in range(20):
            x = ConeVector.from_array(rng.uniform(-5.0, 5.0, size=sp.dim))
            if not sp.leq(sp.abs_vector(cert.map.apply(x)), cert.map.apply(sp.abs_vector(x))):
                return "certified operator does not commute with absolute value"
    return None


def _gen_shrinking_oracle(rng) -> Instance:
    inst = _base(rng, n_lo=1, n_hi=3)
    space = inst.space
    m = space.dim
    draw = rng.random()
    if draw < 0.35:
        cone = np.diag(rng.uniform(0.05, 0.95, size=m))
    elif draw < 0.5:
        diag = rng.uniform(0.05, 0.95, size=m)
        diag[int(rng.integers(m))] = 1.0 + float(rng.uniform(0.0, 0.5))
        cone = np.diag(diag)
    elif draw < 0.65:
        cone = np.diag(rng.uniform(0.05, 0.95, size=m))
        i, j = int(rng.integers(m)), int(rng.integers(m))
        if i != j:
            cone[i, j] = float(rng.choice([-1.0, 1.0])) * float(rng.uniform(1e-7, 1e-5))
    elif draw < 0.8:
        cone = np.diag(rng.uniform(0.05, 0.95, size=m))
        i, j = int(rng.integers(m)), int(rng.integers(m))
        if i != j:
            cone[i, j] = float(rng.uniform(0.0, 1e-13))
    elif draw < 0.9:
        cone = rng.uniform(-1.0, 1.0, size=(m, m))
    else:
        cone = rng.uniform(-1.0, 1.0, size=(m, m))
        cone[:, int(rng.integers(m))] = 0.0
    ambient = space.gen_matrix @ cone @ space.gen_inverse
    return _with_sections(inst, operators={"M": [list(map(float, r)) for r in ambient]})


def _check_shrinking_oracle(inst: Instance) -> Optional[str]:
    sp = inst.space
    op = inst.get_operator("M")
    cert = sp.shrinking_factor(op)
    member, oracle_t = sp.shrinking_oracle(op, _meta_rng(inst, 23))
    if (cert is not None) != member:
        return f"verdict mismatch: characterization {cert is not None}, oracle {member}"
    if cert is not None:
        if abs(cert.factor - oracle_t) > 1e-6:
            return "certified factor differs from the oracle minimum"
        if sp.spectral_radius_estimate(op) > cert.factor + 1e-6:
            return "spectral radius estimate exceeds the certified factor"
    return None


def _gen_metric_symmetry(rng) -> Instance:
    return _base(rng, n_lo=1)


def _check_metric_symmetry(inst: Instance) -> Optional[str]:
    cms, sp = inst.cms, inst.space
    report = cms.validate()
    if not report.passed:
        return "generated metric failed validation"
    if report.derived_status != "derived, verified":
        return "derived consequences were not recorded as verified"
    for i in range(cms.n):
        for j in range(cms.n):
            if not sp.eq(cms.dist[i][j], cms.dist[j][i]):
                return f"distance table is not symmetric at ({i}, {j})"
            if not sp.in_cone(cms.dist[i][j]):
                return f"distance at ({i}, {j}) leaves the cone"
    return None


def _table_doc_from(inst: Instance) -> dict:
    doc = inst.to_dict()
    doc["metric"] = {
        "kind": "table",
        "values": [[list(v.coords) for v in row] for row in inst.cms.dist],
    }
    return doc


def _gen_axiom_soundness(rng) -> Instance:
    inst = _base(rng, n_lo=3)
    return Instance.from_dict(_table_doc_from(inst))


def _check_axiom_soundness(inst: Instance) -> Optional[str]:
    cms, sp = inst.cms, inst.space
    n = cms.n
    if n < 3:
        return None  # vacuous: a triangle break needs a third point
    rng = _meta_rng(inst, 37)
    i = int(rng.integers(n))
    j = int((i + 1 + rng.integers(n - 1)) % n)
    break_identity = bool(rng.random() < 0.5)

    table = [list(row) for row in cms.dist]
    if break_identity:
        table[i][j] = sp.zero
    else:
        rho_max = max(
            max(abs(c) for c in sp.cone_coords(v)) for row in cms.dist for v in row
        )
        rho_min = min(
            max(abs(c) for c in sp.cone_coords(table[a][b]))
            for a in range(n)
            for b in range(n)
            if a != b
        )
        factor = 10.0 * max(1.0, rho_max / rho_min)
        table[i][j] = table[i][j] * factor
    broken = ConeMetricSpace(sp, cms.labels, tuple(tuple(row) for row in table))
    report = broken.validate()
    if report.axioms_passed:
        return f"perturbation at ({i}, {j}) was not caught"
    for a, b in report.identity_witnesses:
        zero = sp.is_zero(broken.dist[a][b])
        if (a == b) == zero:
            return f"identity witness ({a}, {b}) does not violate the axiom"
    for a, b, k in report.triangle_witnesses:
        if sp.leq(broken.dist[a][b], broken.dist[a][k] + broken.dist[b][k]):
            return f"triangle witness ({a}, {b}, {k}) does not violate the axiom"
    if break_identity:
        if (i, j) not in report.identity_witnesses:
            return "perturbed pair missing from the identity witnesses"
    else:
        if not any(w[0] == i and w[1] == j for w in report.triangle_witnesses):
            return "perturbed pair missing from the triangle witnesses"
    return None


def _gen_set_distance(rng) -> Instance:
    return _base(rng)


def _check_set_distance_union(inst: Instance) -> Optional[str]:
    cms, sp = inst.cms, inst.space
    rng = _meta_rng(inst, 41)
    for _ in range(5):
        a = _random_subset(rng, cms.n)
        b = _random_subset(rng, cms.n)
        x = int(rng.integers(cms.n))
        joint = cms.dist_to_set(x, set(a) | set(b))
        split = sp.lattice_inf([cms.dist_to_set(x, a), cms.dist_to_set(x, b)])
        if not sp.eq(joint, split):
            return f"d({x}, A|B) differs from the lattice inf of the parts"
    return None


def _check_hausdorff_laws(inst: Instance) -> Optional[str]:
    cms, sp = inst.cms, inst.space
    rng = _meta_rng(inst, 43)
    for _ in range(5):
        a = _random_subset(rng, cms.n)
        b = _random_subset(rng, cms.n)
        if not sp.eq(cms.hausdorff(a, b), cms.hausdorff(b, a)):
            return "set gap is not symmetric"
        if not sp.is_zero(cms.hausdorff(a, a)):
            return "set gap of a set with itself is not zero"
        x, y = int(rng.integers(cms.n)), int(rng.integers(cms.n))
        if not sp.eq(cms.hausdorff((x,), (y,)), cms.dist[x][y]):
            return "singleton set gap differs from the metric"
    return None


def _gen_bronsted(rng) -> Instance:
    inst = _base(rng, n_lo=1)
    return _with_sections(
        inst, potentials={"phi": random_vector_rows(rng, inst.space, inst.n)}
    )


def _check_bronsted_order(inst: Instance) -> Optional[str]:
    cms, sp = inst.cms, inst.space
    phi = _potential(inst)
    rel = cms.bronsted_relation(phi)
    n = cms.n
    for x in range(n):
        if not rel[x, x]:
            return f"order is not reflexive at {x}"
        for y in range(n):
            if x != y and rel[x, y] and rel[y, x]:
                return f"order is not antisymmetric at ({x}, {y})"
            if rel[x, y] and not sp.leq(phi[y], phi[x]):
                return f"potential increases along the order at ({x}, {y})"
            for z in range(n):
                if rel[x, y] and rel[y, z] and not rel[x, z]:
                    return f"order is not transitive at ({x}, {y}, {z})"
    return None


def _check_mutual_bound(inst: Instance) -> Optional[str]:
    cms, sp = inst.cms, inst.space
    rng = _meta_rng(inst, 47)
    for _ in range(6):
        a = _random_subset(rng, cms.n)
        b = _random_subset(rng, cms.n)
        pool = [cms.dist[p][q] for p in a for q in b]
        eps = sp.lattice_sup(pool)
        if rng.random() < 0.4:
            eps = eps * float(rng.uniform(0.2, 0.9))
        if not cms.mutually_bounds(eps, a, b):
            continue
        forward = []
        for p in a:
            forward.append(next(cms.dist[p][q] for q in b if sp.leq(cms.dist[p][q], eps)))
        backward = []
        for q in b:
            backward.append(next(cms.dist[p][q] for p in a if sp.leq(cms.dist[p][q], eps)))
        witness_sup = sp.lattice_sup(forward + backward)
        if not sp.leq(witness_sup, eps):
            return "witness-based directed sups escape the bound"
    return None


def _gen_displacement(rng) -> Instance:
    inst = _base(rng)
    return _with_sections(inst, maps={"T": random_images(rng, inst.n)})


def _check_displacement_lipschitz(inst: Instance) -> Optional[str]:
    cms, sp = inst.cms, inst.space
    tmap = inst.get_map("T")
    disp = displacement_potential(cms, tmap)
    for u in range(cms.n):
        for v in range(cms.n):
            bound = disp[v] + cms.dist[u][v] + cms.hausdorff(tmap.image(u), tmap.image(v))
            if not sp.leq(disp[u], bound):
                return f"displacement bound fails at ({u}, {v})"
    return None


def _gen_weak_zero_slack(rng) -> Instance:
    inst = _base(rng)
    return _with_sections(
        inst,
        maps={"T": random_images(rng, inst.n)},
        operators={"k": _diag_shrinking(rng, inst.space)},
    )


def _check_weak_zero_slack(inst: Instance) -> Optional[str]:
    cms, sp = inst.cms, inst.space
    tmap = inst.get_map("T")
    cert = sp.shrinking_factor(inst.get_operator("k"))
    if cert is None:
        return "constructed operator was not certified"
    weak = check_weak_contraction(cms, tmap, cert, LinearMap.zero(sp.dim))
    plain = check_contraction(cms, tmap, cert)
    if weak.holds != plain.holds:
        return "verdicts differ between zero-slack weak form and plain contraction"
    pairs_weak = [(w.x, w.y) for w in weak.witnesses]
    pairs_plain = [(w.x, w.y) for w in plain.witnesses]
    if pairs_weak != pairs_plain:
        return "witness pairs differ between zero-slack weak form and plain contraction"
    for ww, wp in zip(weak.witnesses, plain.witnesses):
        if not (sp.eq(ww.lhs, wp.lhs) and sp.eq(ww.rhs, wp.rhs)):
            return "witness sides differ between zero-slack weak form and plain contraction"
    return None


def _gen_pointwise(rng) -> Instance:
    inst = _base(rng)
    cms, space, n = inst.cms, inst.space, inst.n
    ratio_rows = _diag_shrinking(rng, space, lo=0.3, hi=0.9)
    cert = space.shrinking_factor(LinearMap(tuple(tuple(r) for r in ratio_rows)))
    anchor = int(rng.integers(n))
    images = [set(img) for img in random_images(rng, n, max_size=2)]
    images[anchor].add(anchor)
    for _ in range(3 * n + 5):
        tmap = SetValuedMap.from_lists(sorted(img) for img in images)
        report = check_pointwise_contraction(cms, tmap, cert)
        if report.holds:
            break
        w = report.witnesses[0]
        for u in (w.x, w.y):
            if anchor not in images[u]:
                images[u].add(anchor)
            elif len(images[u]) > 1:
                images[u].discard(max(p for p in images[u] if p != anchor))
    return _with_sections(
        inst,
        maps={"T": [sorted(img) for img in images]},
        operators={"k": ratio_rows},
    )


def _check_pointwise_implies(inst: Instance) -> Optional[str]:
    cms, sp = inst.cms, inst.space
    tmap = inst.get_map("T")
    cert = sp.shrinking_factor(inst.get_operator("k"))
    if cert is None:
        return "constructed operator was not certified"
    if not check_pointwise_contraction(cms, tmap, cert).holds:
        return None  # vacuous: generator failed to land an accepted mapping
    if not check_contraction(cms, tmap, cert).holds:
        return "pointwise-accepted mapping fails the plain contraction bound"
    return None


def _gen_reflexive_images(rng) -> Instance:
    inst = _base(rng)
    images = [sorted(set(img) | {x}) for x, img in enumerate(random_images(rng, inst.n))]
    return _with_sections(inst, maps={"T": images})


def _check_reflexive_images(inst: Instance) -> Optional[str]:
    cms, sp = inst.cms, inst.space
    tmap = inst.get_map("T")
    disp = displacement_potential(cms, tmap)
    if any(not sp.is_zero(disp[x]) for x in range(cms.n)):
        return "displacement is nonzero despite every point fixing itself"
    for eps in (0.01, 0.5, 3.0):
        if any(not cands for cands in admissible_selectors(cms, tmap, eps)):
            return f"selector condition fails at eps={eps}"
    return None


def _gen_classifier_determinism(rng) -> Instance:
    inst = _base(rng)
    return _with_sections(
        inst,
        maps={"T": random_images(rng, inst.n)},
        operators={
            "k": _diag_shrinking(rng, inst.space),
            "delta": _diag_shrinking(rng, inst.space),
            "L": [
                list(map(float, row))
                for row in inst.space.gen_matrix
                @ np.diag(np.abs(rng.uniform(0.0, 0.3, size=inst.space.dim)))
                @ inst.space.gen_inverse
            ],
            "alpha": _diag_shrinking(rng, inst.space, lo=0.05, hi=0.45),
        },
    )


def _check_classifier_determinism(inst: Instance) -> Optional[str]:
    cms, sp = inst.cms, inst.space
    tmap = inst.get_map("T")
    k = sp.shrinking_factor(inst.get_operator("k"))
    delta = sp.shrinking_factor(inst.get_operator("delta"))
    if k is None or delta is None:
        return "constructed operator was not certified"
    slack = inst.get_operator("L")
    alpha = inst.get_operator("alpha")
    runs = [
        lambda: check_contraction(cms, tmap, k),
        lambda: check_weak_contraction(cms, tmap, delta, slack),
        lambda: check_pointwise_contraction(cms, tmap, k),
        lambda: check_kannan(cms, tmap, alpha),
        lambda: check_chatterjea(cms, tmap, alpha),
    ]
    for run in runs:
        if run() != run():
            return "classifier report differs between identical runs"
    return None


def _gen_maximal_climb(rng) -> Instance:
    inst = _gen_bronsted(rng)
    doc = inst.to_dict()
    doc.setdefault("meta", {})["start"] = int(rng.integers(inst.n))
    return Instance.from_dict(doc)


def _check_maximal_climb(inst: Instance) -> Optional[str]:
    cms = inst.cms
    phi = _potential(inst)
    start = int(inst.meta_dict().get("start", 0))
    trace = bishop_phelps_climb(cms, phi, start)
    top = trace.certificate.point
    if not cms.bronsted_leq(phi, start, top):
        return "climb result is not above the start"
    if top not in cms.bronsted_maximal(phi, start):
        return "climb result is not maximal per the exhaustive oracle"
    if trace.iterations > cms.n:
        return "climb exceeded the iteration bound"
    try:
        verify_trace(trace, cms, phi=phi)
    except ValueError as exc:
        return f"trace replay failed: {exc}"
    return None


def _gen_caristi(rng) -> Instance:
    n, m = _sizes(rng, n_lo=1)
    return generate_instance("caristi", n, m, _sub_seed(rng))


def _check_caristi(inst: Instance) -> Optional[str]:
    cms, sp = inst.cms, inst.space
    tmap = inst.get_map("T")
    phi = _potential(inst)
    if not check_caristi_hypothesis(cms, tmap, phi, "exists").holds:
        return None  # vacuous: hypothesis lost (possible after shrinking)
    summary = brute_force_fixed_points(cms, tmap)
    trace = caristi_solve(cms, tmap, phi, "exists")
    if trace.certificate.point not in summary.members:
        return "claimed fixed point is not in the brute-force set"
    if trace.iterations > cms.n:
        return "solver exceeded the iteration bound"
    try:
        verify_trace(trace, cms, phi=phi, tmap=tmap)
    except ValueError as exc:
        return f"trace replay failed: {exc}"
    for k in range(trace.iterations):
        a, b = trace.iterates[k], trace.iterates[k + 1]
        if not sp.strictly_less(phi[b], phi[a]):
            return "potential does not strictly decrease along the trace"
    if check_caristi_hypothesis(cms, tmap, phi, "forall").holds:
        strict = caristi_solve(cms, tmap, phi, "forall")
        if strict.certificate.point not in summary.strict:
            return "claimed strict fixed point does not have a singleton image"
    return None


def _gen_takahashi(rng) -> Instance:
    n, m = _sizes(rng, n_lo=1)
    return generate_instance("takahashi", n, m, _sub_seed(rng))


def _check_takahashi(inst: Instance) -> Optional[str]:
    cms, sp = inst.cms, inst.space
    phi = _potential(inst)
    inf_value = sp.lattice_inf(phi.values)
    for x0 in range(cms.n):
        if not sp.eq(phi[x0], inf_value) and not any(
            cms.bronsted_leq(phi, x0, x) for x in range(cms.n) if x != x0
        ):
            return None  # vacuous: hypothesis lost (possible after shrinking)
    trace = takahashi_solve(cms, phi)
    if not sp.eq(phi[trace.certificate.point], inf_value):
        return "solver did not attain the lattice infimum"
    try:
        verify_trace(trace, cms, phi=phi)
    except ValueError as exc:
        return f"trace replay failed: {exc}"
    return None


def _gen_weak_solve(rng) -> Instance:
    n, m = _sizes(rng, n_lo=1)
    return generate_instance("weak_contraction", n, m, _sub_seed(rng))


def _check_weak_solve(inst: Instance) -> Optional[str]:
    cms, sp = inst.cms, inst.space
    tmap = inst.get_map("T")
    eps = float(inst.meta_dict()["epsilon"])
    cert = sp.shrinking_factor(inst.get_operator("delta"))
    slack = inst.get_operator("L")
    if cert is None:
        return "delta operator lost its certificate"
    if not check_weak_contraction(cms, tmap, cert, slack).holds:
        return None  # vacuous: bound lost (possible after shrinking)
    if any(not cands for cands in admissible_selectors(cms, tmap, eps)):
        return None  # vacuous: selector condition lost
    trace = weak_contraction_solve(cms, tmap, cert, slack, eps)
    if trace.certificate.point not in brute_force_fixed_points(cms, tmap).members:
        return "claimed fixed point is not in the brute-force set"
    if trace.iterations > cms.n:
        return "solver exceeded the iteration bound"
    for w in trace.step_witnesses:
        if not sp.leq(w.d_step, w.delta_phi):
            return "a step distance escapes its recorded potential drop"
    try:
        verify_trace(trace, cms, tmap=tmap)
    except ValueError as exc:
        return f"trace replay failed: {exc}"
    return None


def _gen_scaled_weight_family(rng) -> Instance:
    n = int(rng.integers(2, 9))
    inst = generate_instance("random_metric", n, 2, _sub_seed(rng))
    doc = inst.to_dict()
    doc["space"] = {"dim": 2, "generators": [[1.0, 0.0], [0.0, 1.0]], "tol": inst.space.tol}
    doc["metric"]["weight"] = [1.0, 0.5]
    return Instance.from_dict(doc)


def _check_scaled_weight_family(inst: Instance) -> Optional[str]:
    rho = inst.metric.scalar_table()
    for alpha in (0.5, 1.0, 2.0):
        cms = ConeMetricSpace.from_scaled_scalar(
            inst.space, inst.labels, rho, ConeVector.of(1.0, alpha)
        )
        if not cms.validate().passed:
            return f"weight (1, {alpha}) fails validation"
    return None


def _gen_trace_replay(rng) -> Instance:
    kind = "caristi" if rng.random() < 0.5 else "weak_contraction"
    n, m = _sizes(rng, n_lo=1)
    return generate_instance(kind, n, m, _sub_seed(rng))


def _check_trace_replay(inst: Instance) -> Optional[str]:
    cms = inst.cms
    tmap = inst.get_map("T")
    kind = inst.meta_dict().get("kind")
    if kind == "caristi":
        phi = _potential(inst)
        if not check_caristi_hypothesis(cms, tmap, phi, "exists").holds:
            return None
        first = caristi_solve(cms, tmap, phi, "exists")
        second = caristi_solve(cms, tmap, phi, "exists")
    else:
        eps = float(inst.meta_dict()["epsilon"])
        cert = cms.space.shrinking_factor(inst.get_operator("delta"))
        slack = inst.get_operator("L")
        if cert is None or not check_weak_contraction(cms, tmap, cert, slack).holds:
            return None
        if any(not c for c in admissible_selectors(cms, tmap, eps)):
            return None
        first = weak_contraction_solve(cms, tmap, cert, slack, eps)
        second = weak_contraction_solve(cms, tmap, cert, slack, eps)
    if first != second:
        return "identical inputs produced different traces"
    return None


def _gen_selftest(rng) -> Instance:
    return _base(rng, n_lo=3)


def _check_selftest(inst: Instance) -> Optional[str]:
    if inst.n >= 3:
        return "intentional self-test failure: instance has three or more points"
    return None


SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("order_axioms", "reflexivity, antisymmetry, transitivity of the cone order",
              _gen_order_axioms, _check_order_axioms),
        Suite("order_interior_chain", "a <= b << c forces a << c",
              _gen_interior_chain, _check_interior_chain),
        Suite("lattice_laws", "inf/sup bounds, idempotence, union-splitting, translation invariance",
              _gen_lattice_laws, _check_lattice_laws),
        Suite("operator_shrinking", "certified operators: composition, absolute value, spectral radius",
              _gen_operator_shrinking, _check_operator_shrinking),
        Suite("shrinking_oracle", "diagonal characterization agrees with the sampling oracle",
              _gen_shrinking_oracle, _check_shrinking_oracle),
        Suite("metric_symmetry", "axioms imply symmetry and nonnegativity of the table",
              _gen_metric_symmetry, _check_metric_symmetry),
        Suite("axiom_soundness", "a broken table entry is always caught with a sound witness",
              _gen_axiom_soundness, _check_axiom_soundness),
        Suite("set_distance_union", "point-to-set distance splits over unions via the lattice inf",
              _gen_set_distance, _check_set_distance_union),
        Suite("hausdorff_laws", "set gap symmetry, zero on equal sets, singleton reduction",
              _gen_set_distance, _check_hausdorff_laws),
        Suite("bronsted_order", "the potential-induced relation is a partial order, potential non-increasing",
              _gen_bronsted, _check_bronsted_order),
        Suite("mutual_bound_consistency", "accepted bounds dominate the witness-built directed sups",
              _gen_set_distance, _check_mutual_bound),
        Suite("displacement_lipschitz", "displacement changes are bounded by distance plus image gap",
              _gen_displacement, _check_displacement_lipschitz),
        Suite("weak_zero_slack", "zero-slack weak contraction coincides with plain contraction",
              _gen_weak_zero_slack, _check_weak_zero_slack),
        Suite("pointwise_implies_contraction", "pointwise-accepted mappings satisfy the plain bound",
              _gen_pointwise, _check_pointwise_implies),
        Suite("reflexive_images", "self-fixing mappings have zero displacement and selectors at every level",
              _gen_reflexive_images, _check_reflexive_images),
        Suite("classifier_determinism", "identical inputs yield identical reports",
              _gen_classifier_determinism, _check_classifier_determinism),
        Suite("maximal_climb", "climb output is above the start and maximal per the oracle",
              _gen_maximal_climb, _check_maximal_climb),
        Suite("caristi_fixed_point", "solved points are brute-force fixed points (both modes)",
              _gen_caristi, _check_caristi),
        Suite("takahashi_minimization", "solver attains the exact lattice infimum",
              _gen_takahashi, _check_takahashi),
        Suite("weak_contraction_solve", "selector iteration lands on a brute-force fixed point",
              _gen_weak_solve, _check_weak_solve),
        Suite("scaled_weight_family", "scaled scalar metrics with weights (1, alpha) validate",
              _gen_scaled_weight_family, _check_scaled_weight_family),
        Suite("trace_replay", "solvers are deterministic and their traces replay",
              _gen_trace_replay, _check_trace_replay),
        Suite("selftest_broken", "intentionally failing suite exercising the failure pipeline",
              _gen_selftest, _check_selftest),
    ]
}


def run_property_suite(suite: str, trials: int, seed: int) -> SuiteReport:
    """Run a named suite; failures are shrunk and serialized into the report."""
    if suite not in SUITES:
        known = ", ".join(sorted(SUITES))
        raise ValueError(f"unknown suite {suite!r}; available: {known}")
    spec = SUITES[suite]
    failures = []
    started = time.monotonic()
    for trial in range(trials):
        rng = np.random.default_rng([int(seed), trial])
        inst = spec.generate(rng)
        message = spec.check(inst)
        if message is None:
            continue
        shrunk = shrink_instance(inst, spec.check)
        final_message = spec.check(shrunk) or message
        failures.append(
            SuiteFailure(trial=trial, message=final_message, instance=shrunk.to_dict())
        )
    return SuiteReport(
        suite=suite,
        trials=trials,
        seed=seed,
        failures=tuple(failures),
        elapsed_seconds=time.monotonic() - started,
    )
