import numpy as np
import pytest

import wallfire as wf


@pytest.fixture(scope="session")
def walls():
    return {s.name: s for s in wf.builtin_scenarios()}


@pytest.fixture(scope="session")
def concrete_law():
    return wf.ConcreteLaw(f_ck=25e6)


@pytest.fixture(scope="session")
def steel_law():
    return wf.SteelLaw(f_yk=400e6)


def thermal_history(scenario, t_end, **kwargs):
    cfg = kwargs.pop("cfg", None) or wf.ExposureConfig.for_exposure(scenario.exposure)
    return wf.solve_thermal(scenario, wf.Iso834(), cfg, t_end=t_end, **kwargs)


@pytest.fixture(scope="session")
def muf20_history(walls):
    """Two-sided exposure history up to the reference failed time."""
    return thermal_history(walls["MuF 20"], t_end=8940.0)


@pytest.fixture(scope="session")
def mu1220_history(walls):
    """One-sided exposure history up to the reference failed time."""
    return thermal_history(walls["Mu (12)20"], t_end=25680.0)
