"""Fire behaviour of load-bearing reinforced-concrete walls.

Thermal analysis (transient conduction under standard fire), structural
analysis (geometrically nonlinear fiber beam-column to collapse), and
prescriptive firewall design-rule checks, with four bundled reference
walls.
"""

from .fire import ConstantFire, ExposureConfig, Face, Iso834, TableFire, gas_temperature
from .materials import Aggregate, ConcreteLaw, SteelLaw
from .rules import CheckStatus, ComplianceReport, WallRole, check_wall
from .scenarios import (
    Exposure,
    StripResultants,
    WallScenario,
    builtin_scenario,
    builtin_scenarios,
    strip_resultants,
)
from .section import FiberSection, SectionState, build_fiber_section, section_response
from .structural import (
    BeamModel,
    Component,
    FailureMode,
    FireResistanceResult,
    SolutionState,
    build_beam_model,
    displacement_history,
    run_to_failure,
    solve_static,
)
from .thermal import (
    Probe,
    SectionMesh,
    TemperatureField,
    TemperatureHistory,
    build_section_mesh,
    sample_temperature,
    solve_thermal,
)
from .units import tonne_to_newton

__all__ = [
    "Aggregate",
    "BeamModel",
    "CheckStatus",
    "ComplianceReport",
    "Component",
    "ConcreteLaw",
    "ConstantFire",
    "Exposure",
    "ExposureConfig",
    "Face",
    "FailureMode",
    "FiberSection",
    "FireResistanceResult",
    "Iso834",
    "Probe",
    "SectionMesh",
    "SectionState",
    "SolutionState",
    "SteelLaw",
    "StripResultants",
    "TableFire",
    "TemperatureField",
    "TemperatureHistory",
    "WallRole",
    "WallScenario",
    "build_beam_model",
    "build_fiber_section",
    "build_section_mesh",
    "builtin_scenario",
    "builtin_scenarios",
    "check_wall",
    "displacement_history",
    "gas_temperature",
    "run_to_failure",
    "sample_temperature",
    "section_response",
    "solve_static",
    "solve_thermal",
    "strip_resultants",
    "tonne_to_newton",
]
