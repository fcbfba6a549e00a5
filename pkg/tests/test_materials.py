import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wallfire import materials as m
from wallfire.materials import (
    Aggregate,
    ConcreteLaw,
    SteelLaw,
    TemperatureRangeError,
)

TEMPS = st.floats(min_value=20.0, max_value=1200.0)


class TestConcreteStrength:
    def test_ambient_anchor(self, concrete_law):
        assert m.concrete_strength(20.0, concrete_law) == concrete_law.f_ck

    def test_fully_degraded(self, concrete_law):
        assert m.concrete_strength(1200.0, concrete_law) == 0.0

    @given(t1=TEMPS, t2=TEMPS)
    def test_monotone_nonincreasing(self, t1, t2):
        law = ConcreteLaw(f_ck=25e6)
        lo, hi = min(t1, t2), max(t1, t2)
        assert m.concrete_strength(lo, law) >= m.concrete_strength(hi, law)

    def test_calcareous_stronger_at_temperature(self):
        sil = ConcreteLaw(f_ck=25e6, aggregate=Aggregate.SILICEOUS)
        cal = ConcreteLaw(f_ck=25e6, aggregate=Aggregate.CALCAREOUS)
        assert m.concrete_strength(600.0, cal) > m.concrete_strength(600.0, sil)

    def test_out_of_range(self, concrete_law):
        with pytest.raises(TemperatureRangeError):
            m.concrete_strength(10.0, concrete_law)
        with pytest.raises(TemperatureRangeError):
            m.concrete_strength(1250.0, concrete_law)


class TestPeakStrain:
    def test_ambient(self):
        assert m.concrete_peak_strain(20.0) == pytest.approx(0.0025)

    @given(t1=TEMPS, t2=TEMPS)
    def test_nondecreasing(self, t1, t2):
        lo, hi = min(t1, t2), max(t1, t2)
        assert m.concrete_peak_strain(lo) <= m.concrete_peak_strain(hi)

    @given(t=TEMPS)
    def test_positive(self, t):
        assert m.concrete_peak_strain(t) > 0
        assert m.concrete_ultimate_strain(t) > m.concrete_peak_strain(t)


class TestStressStrainCurve:
    def test_peak_identity_at_all_fixture_temperatures(self, concrete_law):
        # the normalised curve equals 1 exactly at the peak strain
        for t in np.arange(20.0, 1100.0, 20.0):
            fc = m.concrete_strength(t, concrete_law)
            e1 = m.concrete_peak_strain(t)
            assert m.concrete_stress(e1, t, concrete_law) == fc

    def test_half_peak_ratio(self, concrete_law):
        # direct evaluation of the ascending branch: 3*0.5/(2+0.125)
        expected = 1.5 / 2.125
        e1 = m.concrete_peak_strain(300.0)
        fc = m.concrete_strength(300.0, concrete_law)
        assert m.concrete_stress(0.5 * e1, 300.0, concrete_law) == pytest.approx(
            expected * fc, rel=1e-12
        )

    def test_zero_strain_zero_stress(self, concrete_law):
        assert m.concrete_stress(0.0, 500.0, concrete_law) == 0.0

    def test_ascending_monotonic(self, concrete_law):
        for t in (20.0, 300.0, 600.0, 900.0):
            e1 = m.concrete_peak_strain(t)
            eps = np.linspace(1e-6, e1 * 0.999, 100)
            sig = m.concrete_stress(eps, t, concrete_law)
            assert np.all(np.diff(sig) > 0)

    def test_bounded(self, concrete_law):
        for t in (20.0, 400.0, 800.0):
            fc = m.concrete_strength(t, concrete_law)
            eu = m.concrete_ultimate_strain(t)
            eps = np.linspace(0.0, eu, 200)
            sig = m.concrete_stress(eps, t, concrete_law)
            assert np.all(sig >= 0.0)
            assert np.all(sig <= fc + 1e-9)

    def test_crushed_beyond_ultimate(self, concrete_law):
        eu = m.concrete_ultimate_strain(500.0)
        assert m.concrete_stress(eu * 1.01, 500.0, concrete_law) == 0.0

    def test_tension_zero_by_default(self, concrete_law):
        assert m.concrete_stress(-1e-3, 20.0, concrete_law) == 0.0

    def test_tension_floor(self):
        law = ConcreteLaw(f_ck=25e6, tensile_strength=2e6)
        assert m.concrete_stress(-1e-3, 20.0, law) == -2e6
        # small strains stay on the elastic branch
        e0 = m.concrete_initial_modulus(20.0, law)
        eps = -1e-8
        assert m.concrete_stress(eps, 20.0, law) == pytest.approx(e0 * eps)


class TestConcreteTangent:
    def test_matches_finite_differences(self, concrete_law):
        rng = np.random.default_rng(7)
        h = 1e-8
        for _ in range(100):
            t = rng.uniform(30.0, 1050.0)
            e1 = m.concrete_peak_strain(t)
            eu = m.concrete_ultimate_strain(t)
            # sample away from the curve kinks
            eps = rng.uniform(0.05 * e1, 0.95 * e1)
            if rng.uniform() < 0.3:
                eps = rng.uniform(1.05 * e1, 0.95 * eu)
            fd = (
                m.concrete_stress(eps + h, t, concrete_law)
                - m.concrete_stress(eps - h, t, concrete_law)
            ) / (2 * h)
            an = m.concrete_tangent(eps, t, concrete_law)
            assert an == pytest.approx(fd, rel=1e-6, abs=1e-3)

    def test_initial_modulus_at_zero(self, concrete_law):
        e0 = m.concrete_initial_modulus(20.0, concrete_law)
        assert m.concrete_tangent(0.0, 20.0, concrete_law) == pytest.approx(e0)


class TestStrainDecomposition:
    @given(total=st.floats(-0.02, 0.02), t=TEMPS)
    def test_bookkeeping(self, total, t):
        law = ConcreteLaw(f_ck=25e6)
        eps_m = m.mechanical_strain(total, t, law)
        assert eps_m + m.free_thermal_strain(t, law) == pytest.approx(
            total, abs=1e-15
        )

    def test_definition_cases(self, concrete_law):
        eth = m.free_thermal_strain(500.0, concrete_law)
        assert m.mechanical_strain(eth, 500.0, concrete_law) == pytest.approx(0.0)
        assert m.mechanical_strain(0.0, 20.0, concrete_law) == 0.0
        assert m.mechanical_strain(-0.002, 20.0, concrete_law) == -0.002

    def test_strain_state_invariant(self, concrete_law):
        st_ = m.strain_state(0.004, 300.0, concrete_law)
        assert st_.total == st_.thermal + st_.mechanical


class TestThermalStrain:
    def test_ambient_zero(self, concrete_law):
        assert m.free_thermal_strain(20.0, concrete_law) == 0.0

    @given(t1=TEMPS, t2=TEMPS)
    def test_nondecreasing(self, t1, t2):
        law = ConcreteLaw(f_ck=25e6)
        lo, hi = min(t1, t2), max(t1, t2)
        assert m.free_thermal_strain(lo, law) <= m.free_thermal_strain(hi, law)

    def test_plateau(self, concrete_law):
        assert m.free_thermal_strain(1100.0, concrete_law) == m.free_thermal_strain(
            1200.0, concrete_law
        )
        assert m.free_thermal_strain(1200.0, concrete_law) == pytest.approx(14e-3)

    def test_steel_thermal_strain(self):
        assert m.steel_thermal_strain(20.0) == 0.0
        assert m.steel_thermal_strain(800.0) == pytest.approx(1.1e-2)
        assert m.steel_thermal_strain(1200.0) == pytest.approx(1.78e-2, rel=1e-3)


class TestThermalProperties:
    def test_density_band(self):
        assert 2300.0 <= m.density(20.0) <= 2400.0

    @given(t=TEMPS)
    def test_conductivity_positive_both_bounds(self, t):
        for bound in ("lower", "upper"):
            law = ConcreteLaw(f_ck=25e6, conductivity_bound=bound)
            assert m.conductivity(t, law) > 0

    def test_upper_above_lower(self):
        lo = ConcreteLaw(f_ck=25e6, conductivity_bound="lower")
        up = ConcreteLaw(f_ck=25e6, conductivity_bound="upper")
        for t in (20.0, 500.0, 1200.0):
            assert m.conductivity(t, up) > m.conductivity(t, lo)

    def test_moisture_peak(self):
        assert m.specific_heat(110.0, 1.5) > m.specific_heat(110.0, 0.0)
        assert m.specific_heat(110.0, 3.0) > m.specific_heat(110.0, 1.5)
        assert m.specific_heat(110.0, 1.5) == pytest.approx(1470.0)

    def test_dry_curve_anchors(self):
        assert m.specific_heat(20.0, 0.0) == 900.0
        assert m.specific_heat(400.0, 0.0) == 1100.0
        assert m.specific_heat(1200.0, 0.0) == 1100.0

    def test_moisture_peak_decays_to_dry(self):
        assert m.specific_heat(200.0, 3.0) == pytest.approx(
            m.specific_heat(200.0, 0.0)
        )

    @given(t=TEMPS)
    def test_specific_heat_continuous_in_t(self, t):
        # no jumps bigger than the steepest physical segment
        u = 1.5
        left = m.specific_heat(max(t - 0.01, 20.0), u)
        right = m.specific_heat(min(t + 0.01, 1200.0), u)
        assert abs(right - left) < 1.0


class TestSteel:
    def test_origin(self, steel_law):
        assert m.steel_stress(0.0, 500.0, steel_law) == 0.0

    @given(eps=st.floats(-0.19, 0.19), t=TEMPS)
    def test_odd_symmetry(self, eps, t):
        law = SteelLaw(f_yk=400e6)
        assert m.steel_stress(-eps, t, law) == pytest.approx(
            -m.steel_stress(eps, t, law), rel=1e-12, abs=1e-6
        )

    def test_yield_plateau_ambient(self, steel_law):
        assert m.steel_stress(0.05, 20.0, steel_law) == pytest.approx(400e6)
        assert m.steel_stress(0.12, 20.0, steel_law) == pytest.approx(400e6)

    @given(eps=st.floats(-0.3, 0.3), t=TEMPS)
    def test_bounded_by_yield(self, eps, t):
        law = SteelLaw(f_yk=400e6)
        fy = m.steel_yield_strength(t, law)
        assert abs(m.steel_stress(eps, t, law)) <= fy + 1e-6

    def test_elastic_slope(self, steel_law):
        t = 400.0
        es = m.steel_modulus(t, steel_law)
        eps = 1e-5
        assert m.steel_stress(eps, t, steel_law) == pytest.approx(es * eps)

    def test_tangent_matches_finite_differences(self, steel_law):
        rng = np.random.default_rng(11)
        h = 1e-9
        for _ in range(100):
            t = rng.uniform(30.0, 1050.0)
            fy, fp, es = m._steel_params(t, steel_law)
            ep = fp / es
            # sample inside the elastic and elliptic branches, off the kinks
            if rng.uniform() < 0.5:
                eps = rng.uniform(0.05, 0.9) * ep
            else:
                eps = ep + (0.02 - ep) * rng.uniform(0.05, 0.9)
            eps *= rng.choice([-1.0, 1.0])
            fd = (
                m.steel_stress(eps + h, t, steel_law)
                - m.steel_stress(eps - h, t, steel_law)
            ) / (2 * h)
            an = m.steel_tangent(eps, t, steel_law)
            assert an == pytest.approx(fd, rel=1e-5, abs=10.0)

    def test_ruptured(self, steel_law):
        assert m.steel_stress(0.25, 200.0, steel_law) == 0.0
