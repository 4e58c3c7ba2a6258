import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cone_fixpoint.ordered_space import (
    ConeVector,
    LinearMap,
    OrderedSpace,
    coords_rows,
    interior_lt_rows,
    leq_rows,
)

finite = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False)
nonneg = st.floats(min_value=0.0, max_value=50.0, allow_nan=False)

# immutable, shared across hypothesis examples
SKEW = OrderedSpace(2, ((1.0, 1.0), (0.0, 1.0)))


def vec2(a, b):
    return ConeVector.of(float(a), float(b))


class TestConstruction:
    def test_vector_rejects_nan(self):
        with pytest.raises(ValueError):
            ConeVector.of(float("nan"), 1.0)

    def test_vector_rejects_infinity(self):
        with pytest.raises(ValueError):
            ConeVector.of(float("inf"), 1.0)

    def test_singular_generators_rejected(self):
        with pytest.raises(ValueError, match="singular"):
            OrderedSpace(2, ((1.0, 2.0), (2.0, 4.0)))

    def test_negative_tolerance_rejected(self):
        with pytest.raises(ValueError):
            OrderedSpace.standard(2, tol=-1.0)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            OrderedSpace(3, ((1.0, 0.0), (0.0, 1.0)))


class TestConeCoords:
    def test_identity_basis(self, std2):
        assert np.allclose(std2.cone_coords(vec2(3, -1)), [3.0, -1.0])

    def test_skew_basis(self, skew2):
        # solve G c = (2, 1) with columns (1,0) and (1,1)
        assert np.allclose(skew2.cone_coords(vec2(2, 1)), [1.0, 1.0])

    def test_zero_vector(self, skew2):
        assert np.allclose(skew2.cone_coords(skew2.zero), [0.0, 0.0])

    def test_roundtrip_residual(self, skew2):
        rng = np.random.default_rng(0)
        for _ in range(200):
            x = ConeVector.from_array(rng.uniform(-100, 100, size=2))
            back = skew2.from_cone_coords(skew2.cone_coords(x))
            scale = max(1.0, float(np.max(np.abs(x.as_array()))))
            assert np.max(np.abs(back.as_array() - x.as_array())) <= 1e-10 * scale


class TestOrderRelations:
    def test_leq_componentwise(self, std2):
        assert std2.leq(vec2(1, 2), vec2(2, 3))

    def test_incomparable(self, std2):
        assert not std2.leq(vec2(1, 2), vec2(2, 1))
        assert not std2.leq(vec2(2, 1), vec2(1, 2))

    def test_reflexive(self, std2):
        assert std2.leq(vec2(5, 5), vec2(5, 5))

    def test_interior_strict(self, std2):
        assert std2.strictly_interior_less(std2.zero, vec2(1, 1))
        assert not std2.strictly_interior_less(std2.zero, vec2(1, 0))
        assert std2.strictly_interior_less(vec2(0, 0), vec2(3, 6))

    def test_strictly_less_excludes_equal(self, std2):
        assert std2.strictly_less(vec2(0, 0), vec2(0, 1))
        assert not std2.strictly_less(vec2(5, 5), vec2(5, 5))

    @given(a=finite, b=finite, s=nonneg, t=nonneg)
    @settings(max_examples=60)
    def test_adding_cone_elements_preserves_order(self, a, b, s, t):
        x = ConeVector.of(a, b)
        y = x + SKEW.from_cone_coords([s, t])
        assert SKEW.leq(x, y)

    @given(a=finite, b=finite, s=nonneg, t=nonneg, u=nonneg, v=nonneg)
    @settings(max_examples=60)
    def test_transitive_on_constructed_chain(self, a, b, s, t, u, v):
        x = ConeVector.of(a, b)
        y = x + SKEW.from_cone_coords([s, t])
        z = y + SKEW.from_cone_coords([u, v])
        assert SKEW.leq(x, z)

    @given(a=finite, b=finite, s=nonneg, t=nonneg)
    @settings(max_examples=60)
    def test_mixed_chain_reaches_interior(self, a, b, s, t):
        x = ConeVector.of(a, b)
        y = x + SKEW.from_cone_coords([s, t])
        z = y + SKEW.from_cone_coords([0.5, 0.5])
        assert SKEW.strictly_interior_less(x, z)

    def test_antisymmetry_within_tolerance(self, std2):
        x, y = vec2(1, 1), vec2(1 + 1e-12, 1 - 1e-12)
        assert std2.leq(x, y) and std2.leq(y, x)
        assert std2.eq(x, y)


class TestLattice:
    def test_inf_sup_componentwise(self, std2):
        s = [vec2(1, 2), vec2(2, 1)]
        assert std2.lattice_inf(s).coords == (1.0, 1.0)
        assert std2.lattice_sup(s).coords == (2.0, 2.0)

    def test_singleton(self, skew2):
        v = vec2(3, -2)
        assert skew2.lattice_inf([v]).coords == v.coords
        assert skew2.lattice_sup([v]).coords == v.coords

    def test_skew_infimum(self, skew2):
        # cone coords are (1,1) and (0,1); the componentwise min maps back to (1,1)
        got = skew2.lattice_inf([vec2(2, 1), vec2(1, 1)])
        assert np.allclose(got.as_array(), [1.0, 1.0])

    def test_empty_operand(self, std2):
        with pytest.raises(ValueError, match="empty lattice operand"):
            std2.lattice_inf([])

    @given(rows=st.lists(st.tuples(finite, finite), min_size=1, max_size=6))
    @settings(max_examples=60)
    def test_bounds(self, rows):
        vs = [ConeVector.of(*r) for r in rows]
        lo, hi = SKEW.lattice_inf(vs), SKEW.lattice_sup(vs)
        for v in vs:
            assert SKEW.leq(lo, v)
            assert SKEW.leq(v, hi)

    @given(rows=st.lists(st.tuples(finite, finite), min_size=1, max_size=6), shift=st.tuples(finite, finite))
    @settings(max_examples=60)
    def test_translation_invariance(self, rows, shift):
        vs = [ConeVector.of(*r) for r in rows]
        offset = ConeVector.of(*shift)
        moved = SKEW.lattice_inf([v + offset for v in vs])
        assert SKEW.eq(moved, SKEW.lattice_inf(vs) + offset)


class TestAbsVector:
    def test_componentwise(self, std2):
        assert std2.abs_vector(vec2(-1, 2)).coords == (1.0, 2.0)

    def test_cone_member_unchanged(self, std2):
        assert std2.abs_vector(vec2(3, 0)).coords == (3.0, 0.0)

    def test_skew(self, skew2):
        # (0,1) has cone coords (-1,1); |.| gives (1,1), ambient (2,1)
        assert np.allclose(skew2.abs_vector(vec2(0, 1)).as_array(), [2.0, 1.0])

    def test_dominates_plus_minus(self, skew2):
        rng = np.random.default_rng(7)
        for _ in range(100):
            x = ConeVector.from_array(rng.uniform(-10, 10, size=2))
            a = skew2.abs_vector(x)
            assert skew2.leq(x, a) and skew2.leq(-x, a) and skew2.in_cone(a)


class TestPositiveOperators:
    def test_diagonal_positive(self, std2):
        assert std2.is_positive_operator(LinearMap(((1.0, 0.0), (0.0, 2.0))))

    def test_negative_entry_not_positive(self, std2):
        assert not std2.is_positive_operator(LinearMap(((1.0, -1.0), (0.0, 1.0))))

    def test_zero_operator_positive(self, std2):
        assert std2.is_positive_operator(LinearMap.zero(2))


class TestShrinkingFactor:
    def test_diagonal_member(self, std2):
        cert = std2.shrinking_factor(LinearMap(((0.5, 0.0), (0.0, 0.25))))
        assert cert is not None and cert.factor == pytest.approx(0.5)

    def test_offdiagonal_rejected_with_witness(self, std2):
        op = LinearMap(((0.5, 0.1), (0.0, 0.5)))
        assert std2.shrinking_factor(op) is None
        witness = std2.shrinking_witness(op)
        assert witness is not None and witness.coords == (0.0, 1.0)

    def test_zero_rejected_by_injectivity(self, std2):
        assert std2.shrinking_factor(LinearMap.zero(2)) is None
        assert std2.shrinking_witness(LinearMap.zero(2)) is None

    def test_identity_rejected(self, std2):
        assert std2.shrinking_factor(LinearMap.identity(2)) is None

    def test_near_one_rejected(self, std2):
        assert std2.shrinking_factor(LinearMap.scaled_identity(2, 1.0 - 1e-13)) is None

    def test_skew_space_member(self, skew2):
        mat = skew2.gen_matrix @ np.diag([0.3, 0.7]) @ skew2.gen_inverse
        cert = skew2.shrinking_factor(LinearMap.from_array(mat))
        assert cert is not None and cert.factor == pytest.approx(0.7)

    def test_oracle_agreement(self, skew2):
        rng = np.random.default_rng(11)
        agree = 0
        for trial in range(100):
            if trial % 2 == 0:
                cone = np.diag(rng.uniform(0.05, 1.3, size=2))
            else:
                cone = rng.uniform(-1.0, 1.0, size=(2, 2))
            op = LinearMap.from_array(skew2.gen_matrix @ cone @ skew2.gen_inverse)
            cert = skew2.shrinking_factor(op)
            member, oracle_t = skew2.shrinking_oracle(op, np.random.default_rng(trial), samples=400)
            assert (cert is not None) == member
            if cert is not None:
                assert abs(cert.factor - oracle_t) <= 1e-6
                agree += 1
        assert agree > 10  # the mixture must actually exercise accepts

    def test_composition_factor(self, std2):
        a = std2.shrinking_factor(LinearMap(((0.5, 0.0), (0.0, 0.3))))
        b = std2.shrinking_factor(LinearMap(((0.4, 0.0), (0.0, 0.9))))
        composed = std2.shrinking_factor(a.map.compose(b.map))
        assert composed is not None
        assert composed.factor <= a.factor * b.factor + 1e-9

    def test_abs_commutes(self, skew2):
        mat = skew2.gen_matrix @ np.diag([0.2, 0.8]) @ skew2.gen_inverse
        cert = skew2.shrinking_factor(LinearMap.from_array(mat))
        rng = np.random.default_rng(3)
        for _ in range(200):
            x = ConeVector.from_array(rng.uniform(-10, 10, size=2))
            assert skew2.leq(
                skew2.abs_vector(cert.map.apply(x)), cert.map.apply(skew2.abs_vector(x))
            )


class TestSpectralRadius:
    def test_diagonal(self, std2):
        got = std2.spectral_radius_estimate(LinearMap(((0.5, 0.0), (0.0, 0.25))))
        assert got == pytest.approx(0.5, abs=1e-6)

    def test_zero(self, std2):
        assert std2.spectral_radius_estimate(LinearMap.zero(2)) == 0.0

    def test_identity(self, std2):
        assert std2.spectral_radius_estimate(LinearMap.identity(2)) == pytest.approx(1.0, abs=1e-6)

    def test_iters_validated(self, std2):
        with pytest.raises(ValueError):
            std2.spectral_radius_estimate(LinearMap.identity(2), iters=0)

    def test_bounded_by_certified_factor(self, skew2):
        mat = skew2.gen_matrix @ np.diag([0.45, 0.1]) @ skew2.gen_inverse
        cert = skew2.shrinking_factor(LinearMap.from_array(mat))
        assert skew2.spectral_radius_estimate(cert.map) <= cert.factor + 1e-6


class TestBulkForms:
    def test_agree_with_scalar(self, skew2):
        rng = np.random.default_rng(5)
        xs = rng.uniform(-5, 5, size=(300, 2))
        ys = xs + (rng.uniform(-0.5, 2.0, size=(300, 2)) @ skew2.gen_matrix.T)
        cx, cy = coords_rows(skew2, xs), coords_rows(skew2, ys)
        bulk_leq = leq_rows(skew2, cx, cy)
        bulk_int = interior_lt_rows(skew2, cx, cy)
        for i in range(xs.shape[0]):
            x, y = ConeVector.from_array(xs[i]), ConeVector.from_array(ys[i])
            assert bool(bulk_leq[i]) == skew2.leq(x, y)
            assert bool(bulk_int[i]) == skew2.strictly_interior_less(x, y)


class TestLatticeExtremality:
    def test_inf_dominates_every_lower_bound(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            vs = [ConeVector.from_array(rng.uniform(-5, 5, size=2)) for _ in range(4)]
            inf_v = SKEW.lattice_inf(vs)
            bound = SKEW.from_cone_coords(
                np.min([SKEW.cone_coords(v) for v in vs], axis=0) - rng.uniform(0, 3, size=2)
            )
            assert all(SKEW.leq(bound, v) for v in vs)
            assert SKEW.leq(bound, inf_v)

    def test_sup_below_every_upper_bound(self):
        rng = np.random.default_rng(22)
        for _ in range(50):
            vs = [ConeVector.from_array(rng.uniform(-5, 5, size=2)) for _ in range(4)]
            sup_v = SKEW.lattice_sup(vs)
            bound = SKEW.from_cone_coords(
                np.max([SKEW.cone_coords(v) for v in vs], axis=0) + rng.uniform(0, 3, size=2)
            )
            assert all(SKEW.leq(v, bound) for v in vs)
            assert SKEW.leq(sup_v, bound)


class TestDegenerateLine:
    def test_one_dimensional_space_reduces_to_reals(self):
        sp = OrderedSpace.standard(1)
        assert sp.leq(ConeVector.of(1.0), ConeVector.of(2.0))
        assert not sp.leq(ConeVector.of(2.0), ConeVector.of(1.0))
        assert sp.lattice_inf([ConeVector.of(3.0), ConeVector.of(-1.0)]).coords == (-1.0,)
        cert = sp.shrinking_factor(LinearMap(((0.75,),)))
        assert cert is not None and cert.factor == pytest.approx(0.75)
