"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Every tolerance is pinned here; nothing is deferred to calibration.
"""

import json
import time

import numpy as np

from cone_fixpoint import (
    ConeMetricSpace,
    ConeVector,
    brute_force_fixed_points,
    caristi_solve,
    check_contraction,
    check_pointwise_contraction,
    weak_contraction_solve,
)
from cone_fixpoint.harness import generate_instance, load_instance, run_property_suite
from cone_fixpoint.harness.cli import main as cli_main
from cone_fixpoint.harness.suites import SUITES
from cone_fixpoint.ordered_space import (
    OrderedSpace,
    coords_rows,
    interior_lt_rows,
    leq_rows,
)

def report(number: int, name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {number:02d} {name}: {status}{suffix}")
    assert ok, f"criterion {number} ({name}) failed{suffix}"


def test_criterion_01_metric_consequences_suite():
    started = time.monotonic()
    suite_report = run_property_suite("metric_symmetry", 500, seed=101)
    elapsed = time.monotonic() - started
    ok = suite_report.passed and elapsed < 5.0
    report(1, "symmetry and nonnegativity on 500 generated spaces", ok,
           f"failures={len(suite_report.failures)}, {elapsed:.2f}s")


def test_criterion_02_interior_chain_bulk():
    # 50 random spaces x 10^4 random triples; half the triples are built with
    # the premise true.  The sweep runs through the bulk relation forms (unit
    # tests pin them to the scalar API); a 200-triple subsample per space is
    # re-verified through the scalar API directly.
    total_violations = 0
    scalar_checked = 0
    for s in range(50):
        rng = np.random.default_rng([202, s])
        m = int(rng.integers(1, 5))
        space = generate_instance("random_metric", 2, m, int(rng.integers(2**31))).space
        k = 10_000
        a = rng.uniform(-10.0, 10.0, size=(k, m))
        cone_step = rng.uniform(0.0, 2.0, size=(k, m))
        cone_step[rng.random(size=(k, m)) < 0.3] = 0.0
        interior_step = rng.uniform(0.05, 2.0, size=(k, m))
        b = a.copy()
        c = a.copy()
        half = k // 2
        b[:half] = a[:half] + cone_step[:half] @ space.gen_matrix.T
        c[:half] = b[:half] + interior_step[:half] @ space.gen_matrix.T
        b[half:] = rng.uniform(-10.0, 10.0, size=(k - half, m))
        c[half:] = rng.uniform(-10.0, 10.0, size=(k - half, m))

        ca, cb, cc = (coords_rows(space, x) for x in (a, b, c))
        premise = leq_rows(space, ca, cb) & interior_lt_rows(space, cb, cc)
        conclusion = interior_lt_rows(space, ca, cc)
        total_violations += int(np.sum(premise & ~conclusion))

        for idx in np.flatnonzero(premise)[:200]:
            va = ConeVector.from_array(a[idx])
            vb = ConeVector.from_array(b[idx])
            vc = ConeVector.from_array(c[idx])
            assert space.leq(va, vb) and space.strictly_interior_less(vb, vc)
            assert space.strictly_interior_less(va, vc)
            scalar_checked += 1
    report(2, "a <= b << c forces a << c on 50 x 10^4 triples",
           total_violations == 0, f"violations={total_violations}, scalar-rechecked={scalar_checked}")


def test_criterion_03_bronsted_order_suite():
    suite_report = run_property_suite("bronsted_order", 200, seed=303)
    report(3, "potential-induced order laws on 200 (space, potential) pairs",
           suite_report.passed, f"failures={len(suite_report.failures)}")


def test_criterion_04_maximal_climb_suite():
    suite_report = run_property_suite("maximal_climb", 200, seed=404)
    report(4, "climb reaches a maximal point above the start (oracle-checked)",
           suite_report.passed, f"failures={len(suite_report.failures)}")


def test_criterion_05_caristi_solver():
    suite_report = run_property_suite("caristi_fixed_point", 200, seed=505)
    forall_checked = 0
    for s in range(50):
        rng = np.random.default_rng([505, 1, s])
        n, m = int(rng.integers(1, 9)), int(rng.integers(1, 5))
        inst = generate_instance("caristi", n, m, int(rng.integers(2**31)))
        tmap = inst.get_map("T")
        trace = caristi_solve(inst.cms, tmap, inst.get_potential("phi"), "forall")
        assert trace.certificate.point in brute_force_fixed_points(inst.cms, tmap).strict
        forall_checked += 1
    report(5, "fixed points on 200 exists-mode and 50 forall-mode instances",
           suite_report.passed and forall_checked == 50,
           f"failures={len(suite_report.failures)}, forall={forall_checked}")


def test_criterion_06_takahashi_suite():
    suite_report = run_property_suite("takahashi_minimization", 100, seed=606)
    report(6, "lattice infimum attained exactly on 100 instances",
           suite_report.passed, f"failures={len(suite_report.failures)}")


def test_criterion_07_weak_contraction_solver():
    suite_report = run_property_suite("weak_contraction_solve", 100, seed=707)
    report(7, "preconditions, iteration bound, and step inequalities on 100 instances",
           suite_report.passed, f"failures={len(suite_report.failures)}")


def test_criterion_08_displacement_bound_suite():
    suite_report = run_property_suite("displacement_lipschitz", 100, seed=808)
    report(8, "displacement bound holds on all pairs of 100 instances",
           suite_report.passed, f"failures={len(suite_report.failures)}")


def test_criterion_09_pointwise_implies_contraction():
    accepted = 0
    counterexamples = 0
    attempts = 0
    rng = np.random.default_rng(909)
    while accepted < 100 and attempts < 2000:
        attempts += 1
        inst = SUITES["pointwise_implies_contraction"].generate(rng)
        cms = inst.cms
        tmap = inst.get_map("T")
        cert = cms.space.shrinking_factor(inst.get_operator("k"))
        if cert is None or not check_pointwise_contraction(cms, tmap, cert).holds:
            continue
        accepted += 1
        if not check_contraction(cms, tmap, cert).holds:
            counterexamples += 1
    report(9, "100 pointwise-accepted mappings all satisfy the plain bound",
           accepted == 100 and counterexamples == 0,
           f"accepted={accepted}, counterexamples={counterexamples}")


def test_criterion_10_shrinking_oracle_equivalence():
    suite_report = run_property_suite("shrinking_oracle", 1000, seed=1010)
    report(10, "characterization vs sampling oracle on 1000 matrices",
           suite_report.passed, f"failures={len(suite_report.failures)}")


def test_criterion_11_scaled_weight_family():
    failures = 0
    clouds = 0
    for s in range(10):
        rng = np.random.default_rng([1111, s])
        n = int(rng.integers(2, 9))
        pts = rng.uniform(0.0, 10.0, size=(n, 2))
        rho = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
        if np.min(rho[~np.eye(n, dtype=bool)]) <= 1e-6:
            continue
        clouds += 1
        space = OrderedSpace.standard(2)
        for alpha in (0.5, 1.0, 2.0):
            cms = ConeMetricSpace.from_scaled_scalar(
                space, tuple(f"q{i}" for i in range(n)), rho, ConeVector.of(1.0, alpha)
            )
            if not cms.validate().passed:
                failures += 1
    report(11, "weight (1, alpha) family validates over 10 point clouds",
           clouds == 10 and failures == 0, f"clouds={clouds}, failures={failures}")


def test_criterion_12_line_fixture_trace(line_fixture_path, capsys):
    inst = load_instance(line_fixture_path)
    cms = inst.cms
    tmap = inst.get_map("T")
    shrink = cms.space.shrinking_factor(inst.get_operator("delta"))
    trace = weak_contraction_solve(
        cms, tmap, shrink, inst.get_operator("L"), 0.1, start=cms.index("p2")
    )
    labels = tuple(inst.labels[i] for i in trace.iterates)
    solver_ok = (
        labels == ("p2", "p1", "p0")
        and trace.certificate.kind == "fixed_point"
        and inst.labels[trace.certificate.point] == "p0"
        and trace.certificate.point in tmap.image(trace.certificate.point)
    )

    code = cli_main(
        ["solve", str(line_fixture_path), "--method", "weak", "--map", "T",
         "--epsilon", "0.1", "--x0", "p2"]
    )
    out = capsys.readouterr().out
    lines = [json.loads(line) for line in out.strip().splitlines()]
    cli_ok = (
        code == 0
        and [line["point"] for line in lines[:-1]] == ["p2", "p1", "p0"]
        and lines[-1]["certificate"] == {"kind": "fixed_point", "point": "p0"}
    )
    with capsys.disabled():
        report(12, "hand-worked line fixture trace [p2, p1, p0]",
               solver_ok and cli_ok)
