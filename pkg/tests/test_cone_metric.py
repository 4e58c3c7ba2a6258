import numpy as np
import pytest

from cone_fixpoint import ConeMetricSpace, ConeVector, Potential


def v(*coords):
    return ConeVector.of(*(float(c) for c in coords))


class TestValidation:
    def test_line_fixture_passes(self, line_cms):
        report = line_cms.validate()
        assert report.passed
        assert report.derived_status == "derived, verified"

    def test_incomparable_fixture_passes(self, incomparable_cms):
        assert incomparable_cms.validate().passed

    def test_boundary_fixture_passes(self, boundary_cms):
        assert boundary_cms.validate().passed

    def test_zero_off_diagonal_caught(self, std2):
        table = (
            (v(0, 0), v(0, 0)),
            (v(0, 0), v(0, 0)),
        )
        report = ConeMetricSpace(std2, ("a", "b"), table).validate()
        assert not report.passed
        assert (0, 1) in report.identity_witnesses

    def test_nonzero_diagonal_caught(self, std2):
        table = (
            (v(1, 1), v(1, 2)),
            (v(1, 2), v(0, 0)),
        )
        report = ConeMetricSpace(std2, ("a", "b"), table).validate()
        assert (0, 0) in report.identity_witnesses

    def test_broken_triangle_caught_with_witness(self, line_cms, std2):
        table = [list(row) for row in line_cms.dist]
        table[0][1] = v(100, 200)
        report = ConeMetricSpace(std2, line_cms.labels, tuple(tuple(r) for r in table)).validate()
        assert not report.passed
        assert any(w[:2] == (0, 1) for w in report.triangle_witnesses)

    def test_witness_cap(self, std2):
        n = 8
        table = tuple(tuple(v(0, 0) for _ in range(n)) for _ in range(n))
        report = ConeMetricSpace(std2, tuple(f"q{i}" for i in range(n)), table).validate()
        assert len(report.identity_witnesses) <= 32

    def test_duplicate_labels_rejected(self, std2):
        with pytest.raises(ValueError, match="unique"):
            ConeMetricSpace(std2, ("a", "a"), ((v(0, 0), v(1, 1)), (v(1, 1), v(0, 0))))


class TestScaledScalar:
    def test_always_valid(self, std2):
        rng = np.random.default_rng(0)
        for _ in range(20):
            pts = rng.uniform(0, 10, size=(5, 2))
            rho = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
            cms = ConeMetricSpace.from_scaled_scalar(
                std2, tuple(f"q{i}" for i in range(5)), rho, v(1, 0.5)
            )
            assert cms.validate().passed

    def test_zero_weight_rejected(self, std2):
        rho = np.array([[0.0, 1.0], [1.0, 0.0]])
        with pytest.raises(ValueError, match="weight"):
            ConeMetricSpace.from_scaled_scalar(std2, ("a", "b"), rho, v(0, 0))

    def test_weight_outside_cone_rejected(self, std2):
        rho = np.array([[0.0, 1.0], [1.0, 0.0]])
        with pytest.raises(ValueError, match="weight"):
            ConeMetricSpace.from_scaled_scalar(std2, ("a", "b"), rho, v(1, -1))

    def test_asymmetric_rho_rejected(self, std2):
        rho = np.array([[0.0, 1.0], [2.0, 0.0]])
        with pytest.raises(ValueError, match="symmetric"):
            ConeMetricSpace.from_scaled_scalar(std2, ("a", "b"), rho, v(1, 1))

    def test_triangle_violating_rho_rejected(self, std2):
        rho = np.array([[0.0, 1.0, 9.0], [1.0, 0.0, 1.0], [9.0, 1.0, 0.0]])
        with pytest.raises(ValueError, match="triangle"):
            ConeMetricSpace.from_scaled_scalar(std2, ("a", "b", "c"), rho, v(1, 1))


class TestSetDistance:
    def test_line_example(self, line_cms):
        assert line_cms.dist_to_set(0, (1, 2)).coords == (1.0, 2.0)

    def test_member_gives_zero(self, line_cms):
        assert line_cms.space.is_zero(line_cms.dist_to_set(1, (0, 1)))

    def test_unattained_infimum(self, incomparable_cms):
        got = incomparable_cms.dist_to_set(0, (1, 2))
        assert got.coords == (1.0, 1.0)
        assert all(got.coords != incomparable_cms.dist[0][y].coords for y in (1, 2))

    def test_zero_without_membership(self, boundary_cms):
        # the lattice infimum hits zero although the point is in neither target
        got = boundary_cms.dist_to_set(0, (1, 2))
        assert boundary_cms.space.is_zero(got)

    def test_empty_set_rejected(self, line_cms):
        with pytest.raises(ValueError, match="empty"):
            line_cms.dist_to_set(0, ())

    def test_union_splits(self, incomparable_cms):
        sp = incomparable_cms.space
        joint = incomparable_cms.dist_to_set(0, (1, 2))
        split = sp.lattice_inf(
            [incomparable_cms.dist_to_set(0, (1,)), incomparable_cms.dist_to_set(0, (2,))]
        )
        assert sp.eq(joint, split)


class TestHausdorff:
    def test_line_example(self, line_cms):
        assert line_cms.hausdorff((0,), (1, 2)).coords == (3.0, 6.0)

    def test_self_gap_zero(self, line_cms):
        for subset in [(0,), (0, 1), (0, 1, 2)]:
            assert line_cms.space.is_zero(line_cms.hausdorff(subset, subset))

    def test_singletons_reduce_to_metric(self, line_cms):
        assert line_cms.hausdorff((0,), (1,)).coords == line_cms.dist[0][1].coords

    def test_symmetric(self, incomparable_cms):
        sp = incomparable_cms.space
        assert sp.eq(
            incomparable_cms.hausdorff((0,), (1, 2)), incomparable_cms.hausdorff((1, 2), (0,))
        )


class TestMutualBounds:
    def test_line_example_false(self, line_cms):
        # one direction works but p2 has no partner within (1, 2)
        assert not line_cms.mutually_bounds(v(1, 2), (0,), (1, 2))

    def test_zero_bound_false(self, line_cms):
        assert not line_cms.mutually_bounds(v(0, 0), (0,), (1,))

    def test_singleton_pair_true(self, line_cms):
        assert line_cms.mutually_bounds(v(0.1, 0.1), (1,), (1,))

    def test_single_point_entrypoint(self, line_cms):
        assert line_cms.bounds_into(v(1, 2), 0, (1, 2))
        assert not line_cms.bounds_into(v(0.5, 0.5), 0, (1, 2))


class TestBronsted:
    def test_line_example(self, line_cms, line_phi):
        assert line_cms.bronsted_leq(line_phi, 0, 1)

    def test_reflexive(self, line_cms, line_phi):
        assert all(line_cms.bronsted_leq(line_phi, x, x) for x in range(3))

    def test_negative_drop_rejected(self, line_cms, line_phi):
        assert not line_cms.bronsted_leq(line_phi, 2, 0)

    def test_maximal_from_start(self, line_cms, line_phi):
        assert line_cms.bronsted_maximal(line_phi, 0) == (2,)

    def test_constant_potential_isolates_start(self, line_cms):
        phi = Potential.from_rows([[1.0, 1.0]] * 3)
        assert line_cms.bronsted_maximal(phi, 1) == (1,)

    def test_single_point(self, std2):
        cms = ConeMetricSpace(std2, ("only",), ((v(0, 0),),))
        phi = Potential.from_rows([[3.0, 4.0]])
        assert cms.bronsted_maximal(phi, 0) == (0,)

    def test_potential_non_increasing_along_order(self, line_cms, line_phi):
        sp = line_cms.space
        for x in range(3):
            for y in range(3):
                if line_cms.bronsted_leq(line_phi, x, y):
                    assert sp.leq(line_phi[y], line_phi[x])
