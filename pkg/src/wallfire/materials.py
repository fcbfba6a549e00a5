"""Temperature-dependent material models for concrete and reinforcing steel.

Concrete follows the EN 1992-1-2 implicit formulation: stress is a direct
function of the mechanical strain at the current temperature, with the
transient-creep contribution folded into the stress-strain curve rather
than tracked separately. Basic creep is not modelled. Reinforcing steel
uses the hot-rolled elliptic model shared by EN 1992-1-2 3.2.3 and
EN 1993-1-2 3.2.1.

All temperature-dependent coefficients come from plain-text tables in
``wallfire/data/`` (two columns: temperature in Celsius, value) and are
linearly interpolated. Querying outside the tabulated range raises
``TemperatureRangeError``; there is no extrapolation.

Sign conventions differ per function and match the source formulations:
``concrete_stress`` takes compressive strain positive and returns
compressive stress positive; ``free_thermal_strain`` returns expansion
positive; ``steel_stress`` is odd in the strain. Callers that mix them
(the fiber section does) are responsible for the bridging signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources

import numpy as np


class TemperatureRangeError(ValueError):
    """Temperature outside the tabulated material data range."""


class Aggregate(Enum):
    SILICEOUS = "siliceous"
    CALCAREOUS = "calcareous"


@dataclass(frozen=True)
class ConcreteLaw:
    """Concrete parameters. Strengths in Pa, moisture in % by weight."""

    f_ck: float
    aggregate: Aggregate = Aggregate.SILICEOUS
    moisture_pct: float = 1.5
    tensile_strength: float = 0.0
    # EN 1992-1-2 gives two conductivity limit curves; the upper one
    # reproduces the reference interior temperature fields and is the
    # long-standing default of member-scale fire solvers.
    conductivity_bound: str = "upper"

    def __post_init__(self):
        if self.f_ck <= 0:
            raise ValueError("f_ck must be > 0")
        if not 0 <= self.moisture_pct <= 4:
            raise ValueError("moisture_pct must be in [0, 4]")
        if self.tensile_strength < 0:
            raise ValueError("tensile_strength must be >= 0")
        if self.conductivity_bound not in ("lower", "upper"):
            raise ValueError("conductivity_bound must be 'lower' or 'upper'")


@dataclass(frozen=True)
class SteelLaw:
    """Reinforcing steel parameters (hot-rolled class)."""

    f_yk: float
    elastic_modulus_20c: float = 200e9

    def __post_init__(self):
        if self.f_yk <= 0 or self.elastic_modulus_20c <= 0:
            raise ValueError("steel strength and modulus must be > 0")


@dataclass(frozen=True)
class StrainState:
    """Strain decomposition of one fiber: total = thermal + mechanical."""

    total: float
    thermal: float
    mechanical: float

    def __post_init__(self):
        if abs(self.total - (self.thermal + self.mechanical)) > 1e-12 * max(
            1.0, abs(self.total)
        ):
            raise ValueError("strain bookkeeping violated: total != thermal + mechanical")


# ---------------------------------------------------------------------------
# fixture tables
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _table(name: str) -> tuple[np.ndarray, np.ndarray]:
    """Load a two-column (temperature, value) table from package data."""
    text = resources.files("wallfire.data").joinpath(name).read_text()
    temps, values = [], []
    header_seen = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            header_seen = True  # column-name line
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{name}:{lineno}: expected two columns, got {line!r}")
        temps.append(float(parts[0]))
        values.append(float(parts[1]))
    t = np.asarray(temps)
    v = np.asarray(values)
    if len(t) < 2 or np.any(np.diff(t) <= 0):
        raise ValueError(f"{name}: temperatures must be strictly increasing")
    return t, v


def table_range(name: str) -> tuple[float, float]:
    t, _ = _table(name)
    return float(t[0]), float(t[-1])


def _interp(name: str, temperature) -> np.ndarray | float:
    t, v = _table(name)
    temp = np.asarray(temperature, dtype=float)
    if np.any(temp < t[0]) or np.any(temp > t[-1]):
        raise TemperatureRangeError(
            f"temperature outside [{t[0]:g}, {t[-1]:g}] C for table {name}"
        )
    out = np.interp(temp, t, v)
    return float(out) if np.isscalar(temperature) else out


def _strength_table(law: ConcreteLaw) -> str:
    return f"concrete_strength_factor_{law.aggregate.value}.txt"


# ---------------------------------------------------------------------------
# concrete
# ---------------------------------------------------------------------------


def concrete_strength(temperature, law: ConcreteLaw):
    """Compressive strength f_c,T in Pa at the given temperature(s)."""
    return _interp(_strength_table(law), temperature) * law.f_ck


def concrete_peak_strain(temperature):
    """Strain at peak stress, eps_c1(T) (aggregate independent)."""
    return _interp("concrete_peak_strain.txt", temperature)


def concrete_ultimate_strain(temperature):
    """Strain at the end of the descending branch, eps_cu1(T)."""
    return _interp("concrete_ultimate_strain.txt", temperature)


def free_thermal_strain(temperature, law: ConcreteLaw):
    """Free thermal elongation (expansion positive, zero at 20 C)."""
    return _interp(f"concrete_thermal_strain_{law.aggregate.value}.txt", temperature)


def mechanical_strain(total, temperature, law: ConcreteLaw):
    """Strip the free thermal strain off a total strain.

    Expansion-positive convention: a restrained heated fiber (total = 0)
    comes out with negative (compressive) mechanical strain. Basic creep
    is zero in the implicit model, so nothing else is subtracted.
    """
    return total - free_thermal_strain(temperature, law)


def strain_state(total, temperature, law: ConcreteLaw) -> StrainState:
    th = free_thermal_strain(temperature, law)
    return StrainState(total=total, thermal=th, mechanical=total - th)


def concrete_stress(eps_m, temperature, law: ConcreteLaw):
    """Concrete stress, compression positive.

    Ascending branch (0 <= eps <= eps_c1):
        sigma = f_c,T * 3 x / (2 + x^3),   x = eps / eps_c1
    then linear descent to zero at eps_cu1, zero beyond (crushed).
    Tensile response is a constant floor at -tensile_strength once the
    elastic branch reaches it (zero by default).
    """
    fc = np.asarray(concrete_strength(temperature, law), dtype=float)
    e1 = np.asarray(concrete_peak_strain(temperature), dtype=float)
    eu = np.asarray(concrete_ultimate_strain(temperature), dtype=float)
    eps = np.asarray(eps_m, dtype=float)

    x = eps / e1
    # grouping keeps the normalised factor exactly 1.0 at the peak
    ascending = fc * (3.0 * x / (2.0 + x**3))
    with np.errstate(invalid="ignore", divide="ignore"):
        descending = fc * (eu - eps) / (eu - e1)
    e_init = 1.5 * fc / e1
    tension = -np.minimum(e_init * (-eps), law.tensile_strength)

    sigma = np.where(
        eps < 0.0,
        tension,
        np.where(x <= 1.0, ascending, np.maximum(descending, 0.0)),
    )
    return float(sigma) if np.isscalar(eps_m) else sigma


def concrete_tangent(eps_m, temperature, law: ConcreteLaw):
    """d(sigma)/d(eps_m) of ``concrete_stress``.

    At eps_m = 0 the compressive-side initial modulus 1.5 f_c,T / eps_c1
    is returned, which keeps a virgin section's stiffness matrix regular.
    """
    fc = np.asarray(concrete_strength(temperature, law), dtype=float)
    e1 = np.asarray(concrete_peak_strain(temperature), dtype=float)
    eu = np.asarray(concrete_ultimate_strain(temperature), dtype=float)
    eps = np.asarray(eps_m, dtype=float)

    x = eps / e1
    e_init = 1.5 * fc / e1
    dasc = (fc / e1) * 6.0 * (1.0 - x**3) / (2.0 + x**3) ** 2
    ddesc = -fc / (eu - e1)
    elastic_tension = np.where(e_init * (-eps) < law.tensile_strength, e_init, 0.0)

    tangent = np.where(
        eps < 0.0,
        elastic_tension,
        np.where(x <= 1.0, dasc, np.where(eps < eu, ddesc, 0.0)),
    )
    return float(tangent) if np.isscalar(eps_m) else tangent


def concrete_initial_modulus(temperature, law: ConcreteLaw):
    """Initial tangent modulus of the ascending branch, 1.5 f_c,T / eps_c1."""
    fc = concrete_strength(temperature, law)
    e1 = concrete_peak_strain(temperature)
    return 1.5 * fc / e1


def conductivity(temperature, law: ConcreteLaw):
    """Thermal conductivity in W/(m K), lower or upper EN curve per law."""
    return _interp(f"concrete_conductivity_{law.conductivity_bound}.txt", temperature)


def specific_heat(temperature, moisture_pct: float):
    """Specific heat in J/(kg K) including the moisture evaporation peak.

    The dry curve is tabulated; the peak value (900/1470/2020 J/kgK at
    0/1.5/3 % moisture, interpolated and clamped above 3 %) holds between
    100 and 115 C and decays linearly to the dry curve at 200 C.
    """
    dry = _interp("concrete_specific_heat_dry.txt", temperature)
    if moisture_pct <= 0:
        return dry
    c_peak = float(np.interp(moisture_pct, [0.0, 1.5, 3.0], [900.0, 1470.0, 2020.0]))
    temp = np.asarray(temperature, dtype=float)
    wet_line = np.where(
        temp <= 115.0,
        c_peak,
        c_peak + (1000.0 - c_peak) * (temp - 115.0) / 85.0,
    )
    wet = np.where((temp >= 100.0) & (temp <= 200.0), np.maximum(dry, wet_line), dry)
    return float(wet) if np.isscalar(temperature) else wet


def density(temperature):
    """Concrete density in kg/m3 (free-water loss above 115 C)."""
    return _interp("concrete_density.txt", temperature)


def volumetric_heat_capacity(temperature, law: ConcreteLaw):
    """rho(T) * c_p(T, moisture) in J/(m3 K), the capacity the heat solver uses."""
    return density(temperature) * specific_heat(temperature, law.moisture_pct)


# ---------------------------------------------------------------------------
# reinforcing steel
# ---------------------------------------------------------------------------

_EPS_YIELD = 0.02  # strain at which the effective yield plateau starts
_EPS_PLATEAU_END = 0.15
_EPS_RUPTURE = 0.20


def _steel_params(temperature, law: SteelLaw):
    fy = np.asarray(_interp("steel_yield_factor.txt", temperature)) * law.f_yk
    fp = np.asarray(_interp("steel_proportional_factor.txt", temperature)) * law.f_yk
    es = (
        np.asarray(_interp("steel_modulus_factor.txt", temperature))
        * law.elastic_modulus_20c
    )
    return fy, fp, es


def _steel_ellipse(fy, fp, es):
    """Coefficients a, b, c of the elliptic transition branch.

    Degenerates gracefully to the plateau when f_p = f_y (c = b = 0).
    """
    ey = _EPS_YIELD
    with np.errstate(invalid="ignore", divide="ignore"):
        ep = np.where(es > 0, fp / np.maximum(es, 1e-30), 0.0)
        denom = (ey - ep) * es - 2.0 * (fy - fp)
        c = np.where(denom > 0, (fy - fp) ** 2 / np.maximum(denom, 1e-30), 0.0)
        a2 = (ey - ep) * (ey - ep + c / np.maximum(es, 1e-30))
        b2 = c * (ey - ep) * es + c**2
    return ep, np.sqrt(np.maximum(a2, 0.0)), np.sqrt(np.maximum(b2, 0.0)), c


def steel_stress(eps, temperature, law: SteelLaw):
    """Steel stress (odd in eps): elastic, elliptic, plateau, then rupture."""
    fy, fp, es = _steel_params(temperature, law)
    eps_arr = np.asarray(eps, dtype=float)
    s = np.abs(eps_arr)
    sign = np.sign(eps_arr)
    ep, a, b, c = _steel_ellipse(fy, fp, es)

    with np.errstate(invalid="ignore", divide="ignore"):
        root = np.sqrt(np.maximum(a**2 - (_EPS_YIELD - s) ** 2, 0.0))
        elliptic = fp - c + np.where(a > 0, b / np.maximum(a, 1e-30) * root, 0.0)
    descending = fy * (1.0 - (s - _EPS_PLATEAU_END) / (_EPS_RUPTURE - _EPS_PLATEAU_END))

    mag = np.where(
        s <= ep,
        es * s,
        np.where(
            s < _EPS_YIELD,
            elliptic,
            np.where(
                s <= _EPS_PLATEAU_END,
                fy,
                np.where(s < _EPS_RUPTURE, descending, 0.0),
            ),
        ),
    )
    out = sign * mag
    return float(out) if np.isscalar(eps) else out


def steel_tangent(eps, temperature, law: SteelLaw):
    """d(sigma)/d(eps) of ``steel_stress`` (even in eps)."""
    fy, fp, es = _steel_params(temperature, law)
    eps_arr = np.asarray(eps, dtype=float)
    s = np.abs(eps_arr)
    ep, a, b, c = _steel_ellipse(fy, fp, es)

    with np.errstate(invalid="ignore", divide="ignore"):
        root = np.sqrt(np.maximum(a**2 - (_EPS_YIELD - s) ** 2, 1e-30))
        delliptic = np.where(a > 0, b / np.maximum(a, 1e-30) * (_EPS_YIELD - s) / root, 0.0)
    ddesc = -fy / (_EPS_RUPTURE - _EPS_PLATEAU_END)

    tangent = np.where(
        s <= ep,
        es,
        np.where(
            s < _EPS_YIELD,
            delliptic,
            np.where(
                s <= _EPS_PLATEAU_END,
                0.0,
                np.where(s < _EPS_RUPTURE, ddesc, 0.0),
            ),
        ),
    )
    return float(tangent) if np.isscalar(eps) else tangent


def steel_thermal_strain(temperature):
    """Free thermal elongation of steel (expansion positive, zero at 20 C)."""
    return _interp("steel_thermal_strain.txt", temperature)


def steel_yield_strength(temperature, law: SteelLaw):
    """Effective yield strength f_sy,T in Pa."""
    return _interp("steel_yield_factor.txt", temperature) * law.f_yk


def steel_modulus(temperature, law: SteelLaw):
    """Elastic modulus E_s,T in Pa."""
    return _interp("steel_modulus_factor.txt", temperature) * law.elastic_modulus_20c
