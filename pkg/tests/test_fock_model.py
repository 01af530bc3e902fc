import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from meaningfock.dataset import MembershipTriple
from meaningfock.fock_model import (DegenerateInterferenceError, FixedM2, FixedTheta,
                                    FockFit, MinSector2, NotRepresentableError,
                                    audit_published_example, feasible_region, fit,
                                    interference_term, predict_disjunction)

DONKEY = MembershipTriple("pets_farm", "Donkey", 0.5, 0.9, 0.7)

weights = st.floats(0, 1, allow_nan=False)
angles = st.floats(0, math.pi, allow_nan=False)


def make_triple(mu_a, mu_b, mu_or):
    return MembershipTriple("p", "x", mu_a, mu_b, mu_or)


class TestInterferenceTerm:
    def test_right_angle_kills_interference(self):
        assert interference_term(0.5, 0.9, math.pi / 2) == pytest.approx(0.0, abs=1e-12)

    def test_certain_weight_kills_interference(self):
        assert interference_term(1.0, 0.3, 0.7) == 0.0
        assert interference_term(0.3, 1.0, 2.1) == 0.0

    def test_published_angle(self):
        # frozen from direct evaluation sqrt(0.5)*sqrt(0.1)*cos(radians(77.34))
        assert interference_term(0.5, 0.9, math.radians(77.34)) == pytest.approx(
            0.0490068060201994, abs=1e-15)

    def test_rejects_out_of_range_weight(self):
        with pytest.raises(ValueError, match="mu_a"):
            interference_term(1.1, 0.5, 0.0)


class TestPredictDisjunction:
    def test_pure_sector2_is_classical_union(self):
        assert predict_disjunction(0.5, 0.9, 1.0, 0.123) == pytest.approx(0.95, abs=1e-12)

    def test_pure_average_at_right_angle(self):
        assert predict_disjunction(0.5, 0.9, 0.0, math.pi / 2) == pytest.approx(0.7, abs=1e-12)

    def test_published_parameters(self):
        # frozen from direct evaluation; see also audit_published_example
        value = predict_disjunction(0.5, 0.9, 0.26, math.radians(77.34))
        assert value == pytest.approx(0.8012650364549475, abs=1e-15)

    @given(weights, weights, angles)
    def test_m2_one_reproduces_union_formula(self, mu_a, mu_b, theta):
        expected = mu_a + mu_b - mu_a * mu_b
        assert predict_disjunction(mu_a, mu_b, 1.0, theta) == pytest.approx(expected, abs=1e-12)

    @given(weights, weights, weights, angles)
    def test_stays_in_feasible_interval(self, mu_a, mu_b, m2, theta):
        region = feasible_region(mu_a, mu_b)
        value = predict_disjunction(mu_a, mu_b, m2, theta)
        assert region.mu_min - 1e-12 <= value <= region.mu_max + 1e-12

    @given(weights, weights, st.floats(0, 1, exclude_max=True, allow_nan=False),
           angles, angles)
    def test_strictly_decreasing_in_theta(self, mu_a, mu_b, m2, t1, t2):
        region = feasible_region(mu_a, mu_b)
        assume((1 - m2) * region.sector1_halfwidth > 1e-6)
        assume(abs(math.cos(t1) - math.cos(t2)) > 1e-9)
        lo, hi = min(t1, t2), max(t1, t2)
        assert predict_disjunction(mu_a, mu_b, m2, lo) > predict_disjunction(mu_a, mu_b, m2, hi)


class TestFeasibleRegion:
    def test_donkey_weights(self):
        r = feasible_region(0.5, 0.9)
        assert r.sector2_value == pytest.approx(0.95, abs=1e-15)
        assert r.sector1_center == pytest.approx(0.7, abs=1e-15)
        assert r.sector1_halfwidth == pytest.approx(math.sqrt(0.05), abs=1e-15)
        assert r.mu_min == pytest.approx(0.7 - math.sqrt(0.05), abs=1e-12)
        assert r.mu_max == pytest.approx(0.95, abs=1e-15)

    def test_certain_memberships(self):
        r = feasible_region(1.0, 1.0)
        assert (r.sector2_value, r.sector1_center, r.sector1_halfwidth) == (1.0, 1.0, 0.0)
        assert (r.mu_min, r.mu_max) == (1.0, 1.0)

    def test_zero_weights_clamp(self):
        r = feasible_region(0.0, 0.0)
        assert (r.sector2_value, r.sector1_center, r.sector1_halfwidth) == (0.0, 0.0, 1.0)
        assert (r.mu_min, r.mu_max) == (-1.0, 1.0)
        assert r.clamped == (0.0, 1.0)

    @given(weights, weights)
    def test_interval_is_ordered(self, mu_a, mu_b):
        r = feasible_region(mu_a, mu_b)
        assert r.mu_min <= r.mu_max
        assert r.mu_min == min(r.sector2_value, r.sector1_center - r.sector1_halfwidth)
        assert r.mu_max == max(r.sector2_value, r.sector1_center + r.sector1_halfwidth)


class TestFitMinSector2:
    def test_donkey_is_pure_interference(self):
        f = fit(DONKEY, MinSector2())
        assert f.m2 == 0.0
        assert f.n2 == 1.0
        assert f.theta == math.pi / 2
        assert f.residual <= 1e-12

    def test_not_representable(self):
        t = make_triple(0.9, 0.9, 0.05)
        region = feasible_region(0.9, 0.9)  # derived: [0.8, 1.0] excludes 0.05
        assert not region.contains(0.05)
        with pytest.raises(NotRepresentableError):
            fit(t, MinSector2())

    def test_above_interference_reach_mixes_in_sector2(self):
        t = make_triple(0.95, 0.15, 0.95)
        f = fit(t, MinSector2())
        assert f.theta == 0.0
        assert 0.0 < f.m2 <= 1.0
        assert f.residual <= 1e-12

    def test_default_strategy_is_min_sector2(self):
        assert fit(DONKEY) == fit(DONKEY, MinSector2())

    @given(weights, weights, st.floats(0, 1, allow_nan=False))
    def test_round_trip_inside_region(self, mu_a, mu_b, frac):
        region = feasible_region(mu_a, mu_b)
        lo, hi = region.clamped
        assume(lo <= hi)
        mu_or = lo + frac * (hi - lo)
        t = make_triple(mu_a, mu_b, min(1.0, max(0.0, mu_or)))
        f = fit(t, MinSector2())
        assert f.residual <= 1e-9
        assert predict_disjunction(mu_a, mu_b, f.m2, f.theta) == pytest.approx(
            t.mu_or, abs=1e-9)

    @given(weights, weights, st.floats(0, 1, allow_nan=False))
    def test_outside_region_raises(self, mu_a, mu_b, mu_or):
        region = feasible_region(mu_a, mu_b)
        assume(not region.contains(mu_or, slack=1e-9))
        with pytest.raises(NotRepresentableError):
            fit(make_triple(mu_a, mu_b, mu_or), MinSector2())


class TestFitFixedTheta:
    def test_zero_interference_forces_sector2(self):
        f = fit(make_triple(0.5, 0.9, 0.95), FixedTheta(math.pi / 2))
        assert f.m2 == 1.0

    def test_round_trip(self):
        f = fit(DONKEY, FixedTheta(2 * math.pi / 3))
        assert f.theta == 2 * math.pi / 3
        assert 0.0 < f.m2 < 1.0
        assert f.residual <= 1e-9

    def test_slice_unreachable(self):
        # mu_or inside the global region but below what theta=0 can reach
        t = make_triple(0.5, 0.9, 0.5)
        assert feasible_region(0.5, 0.9).contains(0.5)
        with pytest.raises(NotRepresentableError):
            fit(t, FixedTheta(0.0))

    def test_validates_theta(self):
        with pytest.raises(ValueError, match="theta"):
            FixedTheta(-0.1)


class TestFitFixedM2:
    def test_solves_theta(self):
        f = fit(DONKEY, FixedM2(0.1))
        assert f.m2 == 0.1
        assert f.residual <= 1e-9

    def test_degenerate_when_m2_is_one(self):
        with pytest.raises(DegenerateInterferenceError):
            fit(make_triple(0.5, 0.9, 0.7), FixedM2(1.0))

    def test_degenerate_when_halfwidth_is_zero(self):
        with pytest.raises(DegenerateInterferenceError):
            fit(make_triple(1.0, 0.4, 0.8), FixedM2(0.5))

    def test_degenerate_point_match_allowed(self):
        f = fit(make_triple(0.5, 0.9, 0.95), FixedM2(1.0))
        assert f.theta == 0.0
        assert f.residual <= 1e-12

    def test_slice_unreachable(self):
        # m2=0 restricts to [Y-Z, Y+Z]; 0.95 needs sector 2
        with pytest.raises(NotRepresentableError):
            fit(make_triple(0.5, 0.9, 0.95), FixedM2(0.0))

    def test_validates_m2(self):
        with pytest.raises(ValueError, match="m2"):
            FixedM2(1.5)


class TestFockFitInvariants:
    def test_rejects_inconsistent_sector_weights(self):
        with pytest.raises(ValueError, match="m2 \\+ n2"):
            FockFit(m2=0.3, n2=0.3, theta=0.0, residual=0.0)

    def test_rejects_out_of_range_theta(self):
        with pytest.raises(ValueError, match="theta"):
            FockFit(m2=0.5, n2=0.5, theta=4.0, residual=0.0)

    def test_theta_degrees(self):
        f = FockFit(m2=0.0, n2=1.0, theta=math.pi / 2, residual=0.0)
        assert f.theta_degrees == pytest.approx(90.0)


class TestPublishedExampleAudit:
    def test_reports_discrepancy_without_asserting_equality(self):
        audit = audit_published_example()
        assert audit.computed_mu_or == pytest.approx(0.8012650364549475, abs=1e-15)
        assert audit.claimed_mu_or == 0.7
        assert audit.discrepancy == pytest.approx(0.10126503645494755, abs=1e-15)
