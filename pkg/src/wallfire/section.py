"""Fiber discretisation of the strip cross-section.

The section coordinate y runs through the thickness, measured from the
mid-plane, positive toward Face1 (the fire side in one-sided exposure).
Strains are tension positive here: a fiber's total strain under plane
sections is

    eps_tot(y) = axial_strain + curvature * y

and the stress-producing part is eps_tot minus the free thermal strain of
its material. The sign bridge to the compression-positive concrete law
happens in exactly one place (``_concrete_stress_tp``).

Concrete fibers map one-to-one onto the thermal mesh's through-thickness
cells; the two bars sit at cover + diameter/2 from each face and their
area is deducted from the host concrete fiber, so the fiber areas always
sum to the gross strip area.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import materials
from .fire import Face
from .materials import ConcreteLaw, SteelLaw
from .scenarios import WallScenario
from .thermal import SectionMesh, TemperatureField


@dataclass(frozen=True)
class FiberSection:
    """Fiber layout (geometry only; temperatures enter via SectionState)."""

    conc_y: np.ndarray  # (n_fibers,) positions, +y toward Face1
    conc_area: np.ndarray  # (n_fibers,)
    conc_cell: np.ndarray  # through-thickness cell index per fiber
    steel_y: np.ndarray  # (2,)
    steel_area: np.ndarray  # (2,)
    steel_cell: np.ndarray  # rebar cell (i, j) per bar, shape (2, 2)
    concrete: ConcreteLaw
    steel: SteelLaw

    @property
    def gross_area(self) -> float:
        return float(self.conc_area.sum() + self.steel_area.sum())


def build_fiber_section(
    s: WallScenario,
    mesh: SectionMesh,
    concrete: ConcreteLaw | None = None,
    steel: SteelLaw | None = None,
) -> FiberSection:
    if concrete is None:
        concrete = ConcreteLaw(f_ck=s.concrete_strength_char)
    if steel is None:
        steel = SteelLaw(f_yk=s.steel_yield_char)

    half = s.thickness / 2.0
    x = mesh.x_centroids  # x = 0 at Face1
    conc_y = half - x
    conc_area = np.full(mesh.n_through, mesh.dx * s.strip_width)

    d_axis = s.rebar_axis_depth
    bar1 = mesh.rebar_cell(Face.FACE1)
    bar2 = mesh.rebar_cell(Face.FACE2)
    steel_y = np.array([half - d_axis, -(half - d_axis)])
    steel_area = np.array([bar1.area, bar2.area])
    steel_cell = np.array([[bar1.i, bar1.j], [bar2.i, bar2.j]])

    # keep the total section area exact: bars displace concrete
    conc_area = conc_area.copy()
    conc_area[bar1.i] -= bar1.area
    conc_area[bar2.i] -= bar2.area

    return FiberSection(
        conc_y=conc_y,
        conc_area=conc_area,
        conc_cell=np.arange(mesh.n_through),
        steel_y=steel_y,
        steel_area=steel_area,
        steel_cell=steel_cell,
        concrete=concrete,
        steel=steel,
    )


@dataclass(frozen=True)
class SectionState:
    """Per-fiber temperatures and cached thermal strains at one instant.

    Building this once per time step keeps the equilibrium iterations to
    pure strain-to-stress evaluations.
    """

    section: FiberSection
    conc_temp: np.ndarray
    steel_temp: np.ndarray
    conc_eth: np.ndarray
    steel_eth: np.ndarray

    @classmethod
    def at_uniform(cls, section: FiberSection, temperature: float) -> "SectionState":
        n = len(section.conc_y)
        ct = np.full(n, float(temperature))
        st = np.full(2, float(temperature))
        return cls.from_temperatures(section, ct, st)

    @classmethod
    def from_field(cls, section: FiberSection, field: TemperatureField) -> "SectionState":
        profile = field.through_profile()
        conc_t = profile[section.conc_cell]
        steel_t = np.array(
            [field.cells[i, j] for i, j in section.steel_cell]
        )
        return cls.from_temperatures(section, conc_t, steel_t)

    @classmethod
    def from_temperatures(cls, section, conc_t, steel_t) -> "SectionState":
        cap = 1200.0  # property tables stop here; hotter fibers are dead anyway
        conc_tc = np.minimum(conc_t, cap)
        steel_tc = np.minimum(steel_t, cap)
        return cls(
            section=section,
            conc_temp=conc_tc,
            steel_temp=steel_tc,
            conc_eth=np.asarray(
                materials.free_thermal_strain(conc_tc, section.concrete)
            ),
            steel_eth=np.asarray(materials.steel_thermal_strain(steel_tc)),
        )


def _concrete_stress_tp(eps_m_tp, temp, law):
    """Concrete stress/tangent in the tension-positive frame."""
    sigma = -np.asarray(materials.concrete_stress(-eps_m_tp, temp, law))
    tangent = np.asarray(materials.concrete_tangent(-eps_m_tp, temp, law))
    return sigma, tangent


def section_forces(
    state: SectionState, axial_strain: float, curvature: float
) -> tuple[float, float, np.ndarray]:
    """Axial force, moment and consistent 2x2 tangent, tension positive.

    N in newtons, M = sum(sigma A y) in newton metres, tangent rows/cols
    ordered (axial_strain, curvature).
    """
    sec = state.section

    eps_c = axial_strain + curvature * sec.conc_y - state.conc_eth
    sig_c, tan_c = _concrete_stress_tp(eps_c, state.conc_temp, sec.concrete)

    eps_s = axial_strain + curvature * sec.steel_y - state.steel_eth
    sig_s = np.asarray(materials.steel_stress(eps_s, state.steel_temp, sec.steel))
    tan_s = np.asarray(materials.steel_tangent(eps_s, state.steel_temp, sec.steel))

    n = float(np.dot(sig_c, sec.conc_area) + np.dot(sig_s, sec.steel_area))
    m = float(
        np.dot(sig_c * sec.conc_y, sec.conc_area)
        + np.dot(sig_s * sec.steel_y, sec.steel_area)
    )

    ea_c = tan_c * sec.conc_area
    ea_s = tan_s * sec.steel_area
    k00 = float(ea_c.sum() + ea_s.sum())
    k01 = float(np.dot(ea_c, sec.conc_y) + np.dot(ea_s, sec.steel_y))
    k11 = float(np.dot(ea_c, sec.conc_y**2) + np.dot(ea_s, sec.steel_y**2))
    tangent = np.array([[k00, k01], [k01, k11]])
    return n, m, tangent


def section_response(
    section: FiberSection,
    axial_strain: float,
    curvature: float,
    field: TemperatureField,
) -> tuple[float, float, np.ndarray]:
    """One-shot section evaluation against a temperature field."""
    state = SectionState.from_field(section, field)
    return section_forces(state, axial_strain, curvature)


def shear_rigidity(section: FiberSection) -> float:
    """Elastic shear rigidity GA of the gross section at ambient.

    Shear deformation is negligible at wall slenderness; a constant
    ambient value keeps the element formulation shear-flexible without
    affecting the response.
    """
    e0 = materials.concrete_initial_modulus(20.0, section.concrete)
    g = e0 / (2.0 * (1.0 + 0.2))
    return g * (5.0 / 6.0) * section.gross_area
