import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import wallfire as wf
from wallfire.fire import (
    ConstantFire,
    ExposureConfig,
    FireCurveError,
    Iso834,
    TableFire,
    boundary_flux,
    boundary_flux_derivative,
    gas_temperature,
)


def _cfg(**kw):
    return ExposureConfig.for_exposure(wf.Exposure.ONE_SIDE, **kw)


class TestIso834:
    def test_zero(self):
        assert gas_temperature(Iso834(), 0.0) == 20.0

    def test_one_hour(self):
        # 20 + 345 log10(8*60 + 1), evaluated independently
        expected = 20.0 + 345.0 * np.log10(481.0)
        assert gas_temperature(Iso834(), 3600.0) == pytest.approx(expected, abs=1e-9)
        assert expected == pytest.approx(945.34, abs=5e-3)

    def test_long_duration_bound(self):
        # the curve keeps rising; at 25680 s it upper-bounds the hottest
        # reference surface reading (1222.20 C)
        t = gas_temperature(Iso834(), 25680.0)
        assert t == pytest.approx(1239.5, abs=0.1)
        assert t > 1222.20

    @given(st.floats(min_value=0.0, max_value=8 * 3600.0))
    def test_at_least_ambient(self, t):
        assert gas_temperature(Iso834(), t) >= 20.0

    def test_strictly_increasing(self):
        ts = np.linspace(0.0, 8 * 3600.0, 2000)
        temps = [gas_temperature(Iso834(), t) for t in ts]
        assert np.all(np.diff(temps) > 0)

    def test_negative_time(self):
        with pytest.raises(FireCurveError):
            gas_temperature(Iso834(), -1.0)


class TestOtherCurves:
    def test_constant(self):
        assert gas_temperature(ConstantFire(600.0), 12345.0) == 600.0

    def test_table_interpolates(self):
        curve = TableFire(points=((0.0, 20.0), (600.0, 620.0)))
        assert gas_temperature(curve, 300.0) == pytest.approx(320.0)

    def test_table_must_start_at_zero(self):
        with pytest.raises(FireCurveError):
            TableFire(points=((10.0, 20.0), (600.0, 620.0)))

    def test_table_strictly_increasing_times(self):
        with pytest.raises(FireCurveError):
            TableFire(points=((0.0, 20.0), (0.0, 30.0)))


class TestBoundaryFlux:
    def test_equal_temperatures_no_flux(self):
        cfg = _cfg()
        assert boundary_flux(500.0, 500.0, cfg, exposed=True) == 0.0

    def test_worked_value(self):
        # independent hand evaluation of the convective + radiative terms
        cfg = _cfg(h_exposed=25.0, emissivity=0.7)
        conv = 25.0 * (1000.0 - 20.0)
        rad = 5.67e-8 * 0.7 * ((1000.0 + 273.15) ** 4 - (20.0 + 273.15) ** 4)
        q = boundary_flux(1000.0, 20.0, cfg, exposed=True)
        assert q == pytest.approx(conv + rad, rel=1e-12)
        assert q == pytest.approx(128486.5, abs=1.0)

    @given(a=st.floats(-100.0, 1300.0), b=st.floats(-100.0, 1300.0))
    def test_antisymmetry(self, a, b):
        cfg = _cfg()
        q_ab = boundary_flux(a, b, cfg, exposed=True)
        q_ba = boundary_flux(b, a, cfg, exposed=True)
        assert q_ab == pytest.approx(-q_ba, rel=1e-9, abs=1e-6)

    def test_monotone_in_gas_and_surface(self):
        cfg = _cfg()
        h = 1e-3
        for tg, ts in ((100.0, 20.0), (800.0, 300.0), (1200.0, 1100.0)):
            dq_gas = (
                boundary_flux(tg + h, ts, cfg, True) - boundary_flux(tg - h, ts, cfg, True)
            ) / (2 * h)
            dq_surf = (
                boundary_flux(tg, ts + h, cfg, True) - boundary_flux(tg, ts - h, cfg, True)
            ) / (2 * h)
            assert dq_gas > 0
            assert dq_surf < 0

    def test_derivative_matches_finite_differences(self):
        cfg = _cfg()
        h = 1e-4
        for ts in (20.0, 400.0, 900.0):
            fd = (
                boundary_flux(1000.0, ts + h, cfg, True)
                - boundary_flux(1000.0, ts - h, cfg, True)
            ) / (2 * h)
            assert boundary_flux_derivative(1000.0, ts, cfg, True) == pytest.approx(
                fd, rel=1e-6
            )

    def test_unexposed_is_convective_only(self):
        cfg = _cfg(h_unexposed=9.0)
        assert boundary_flux(20.0, 120.0, cfg, exposed=False) == pytest.approx(
            9.0 * (20.0 - 120.0)
        )

    def test_below_absolute_zero_rejected(self):
        with pytest.raises(ValueError):
            boundary_flux(-300.0, 20.0, _cfg(), exposed=True)


class TestExposureConfig:
    def test_for_exposure_faces(self):
        one = ExposureConfig.for_exposure(wf.Exposure.ONE_SIDE)
        two = ExposureConfig.for_exposure(wf.Exposure.TWO_SIDES)
        assert one.is_exposed(wf.Face.FACE1) and not one.is_exposed(wf.Face.FACE2)
        assert two.is_exposed(wf.Face.FACE1) and two.is_exposed(wf.Face.FACE2)

    def test_validation(self):
        with pytest.raises(ValueError):
            _cfg(emissivity=0.0)
        with pytest.raises(ValueError):
            _cfg(h_exposed=-1.0)
