"""Wall scenario definitions and the strip-model load convention.

A wall is analysed as a vertical strip of width ``strip_width`` (0.20 m by
default) cut from the full span. Loads are given as totals for the whole
wall in tonne-force and are scaled down to the strip by ``strip_width /
span`` times the load ratio.

Four built-in walls ship with the package; they are the reference cases
used throughout the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .units import tonne_to_newton


class Exposure(Enum):
    ONE_SIDE = "one_side"
    TWO_SIDES = "two_sides"


@dataclass(frozen=True)
class WallScenario:
    """Geometry, reinforcement, exposure and loading of one wall.

    Lengths in metres except ``rebar_diameter`` (mm, as on drawings);
    loads in tonne-force as given by the cold design. ``cover`` is clear
    cover, measured to the bar surface.
    """

    name: str
    height: float
    span: float
    thickness: float
    rebar_diameter: float  # mm
    rebar_spacing: float
    cover: float
    exposure: Exposure
    axial_load_total: float  # tonne-force
    moment_total: float  # tonne-force * m
    load_ratio: float = 1.0
    strip_width: float = 0.20
    concrete_strength_char: float = 25e6  # Pa
    steel_yield_char: float = 400e6  # Pa

    def __post_init__(self):
        if self.thickness <= 0 or self.span <= 0 or self.height <= 0:
            raise ValueError(f"{self.name}: geometry must be positive")
        if self.strip_width <= 0 or self.strip_width > self.span:
            raise ValueError(
                f"{self.name}: strip_width must be in (0, span={self.span}]"
            )
        if self.cover + self.rebar_diameter / 1000.0 / 2 >= self.thickness / 2:
            raise ValueError(
                f"{self.name}: rebar axis (cover + diameter/2) must lie inside "
                f"the half-thickness"
            )
        if not 0 < self.load_ratio <= 1:
            raise ValueError(f"{self.name}: load_ratio must be in (0, 1]")
        if self.concrete_strength_char <= 0 or self.steel_yield_char <= 0:
            raise ValueError(f"{self.name}: characteristic strengths must be > 0")

    @property
    def rebar_axis_depth(self) -> float:
        """Distance from either face to the bar axis, m (cover + diameter/2)."""
        return self.cover + self.rebar_diameter / 1000.0 / 2

    def with_load_ratio(self, ratio: float) -> "WallScenario":
        return replace(self, load_ratio=ratio)


@dataclass(frozen=True)
class StripResultants:
    """Axial force (N, compression positive) and moment (N*m) on one strip."""

    axial_load: float
    moment: float

    def __post_init__(self):
        if self.axial_load < 0:
            raise ValueError("strip axial load must be >= 0 (compression convention)")


def strip_resultants(s: WallScenario) -> StripResultants:
    """Scale the total wall loads to the analysed strip.

    Both resultants scale by strip_width/span and by the load ratio, so
    the strip carries its tributary share of the factored loads.
    """
    scale = s.strip_width / s.span * s.load_ratio
    return StripResultants(
        axial_load=tonne_to_newton(s.axial_load_total) * scale,
        moment=tonne_to_newton(s.moment_total) * scale,
    )


def builtin_scenarios() -> list[WallScenario]:
    """The four bundled reference walls.

    All share H = 2.86 m and e = 0.20 m. "Mu 20" / "MuF 20" span 4.70 m
    with diameter-10 bars; the "(12)20" pair spans 3.50 m with diameter-12
    bars. "MuCH (12)20" has the (12)20 geometry but carries the Mu 20
    loading; "MuF 20" is Mu 20 heated on both faces instead of one.
    """
    mu20 = WallScenario(
        name="Mu 20",
        height=2.86,
        span=4.70,
        thickness=0.20,
        rebar_diameter=10.0,
        rebar_spacing=0.20,
        cover=0.024,
        exposure=Exposure.ONE_SIDE,
        axial_load_total=41.2,
        moment_total=2.26,
    )
    muf20 = replace(mu20, name="MuF 20", exposure=Exposure.TWO_SIDES)
    mu1220 = WallScenario(
        name="Mu (12)20",
        height=2.86,
        span=3.50,
        thickness=0.20,
        rebar_diameter=12.0,
        rebar_spacing=0.20,
        cover=0.030,
        exposure=Exposure.ONE_SIDE,
        axial_load_total=26.32,
        moment_total=0.14,
    )
    much1220 = replace(
        mu1220, name="MuCH (12)20", axial_load_total=41.2, moment_total=2.26
    )
    return [mu20, muf20, mu1220, much1220]


def builtin_scenario(name: str) -> WallScenario:
    """Look up a bundled wall by name (exact match)."""
    for s in builtin_scenarios():
        if s.name == name:
            return s
    names = ", ".join(repr(s.name) for s in builtin_scenarios())
    raise KeyError(f"unknown built-in scenario {name!r}; available: {names}")
