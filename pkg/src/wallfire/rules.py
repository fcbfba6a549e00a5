"""Prescriptive firewall checks.

Covers the simplified pre-cast panel rating table (norm P 92-701 family),
the cellular-concrete height limits, the EN 1992-1-2 5.4.3 minimum
thicknesses, the slenderness cap of 50, and the span-segmentation
recommendation: firewalls longer than 3.5 m should be subdivided by
columns so that each segment stays within [1.5, 3.5] m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .scenarios import WallScenario

SLENDERNESS_LIMIT = 50.0
SPAN_LIMIT = 3.5  # m
SEGMENT_MIN = 1.5  # m


class WallRole(Enum):
    BEARING = "bearing"
    SEPARATING = "separating"
    UNREINFORCED_PANEL = "unreinforced_panel"
    REINFORCED_LOAD_BEARING = "reinforced_load_bearing"
    REINFORCED_NON_LOAD_BEARING = "reinforced_non_load_bearing"


class CheckStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not_applicable"


# rating -> minimum depth in cm, in increasing-rating order
DEGREE_TABLE = {
    WallRole.BEARING: (
        ("1/2h", 10.0),
        ("1h", 11.0),
        ("1h30", 12.0),
        ("2h", 15.0),
        ("3h", 20.0),
        ("4h", 25.0),
    ),
    WallRole.SEPARATING: (
        ("1/2h", 6.0),
        ("1h", 7.0),
        ("1h30", 9.0),
        ("2h", 11.0),
        ("3h", 15.0),
        ("4h", 17.5),
    ),
}

MIN_THICKNESS_MM = {
    WallRole.UNREINFORCED_PANEL: 200.0,
    WallRole.REINFORCED_LOAD_BEARING: 140.0,
    WallRole.REINFORCED_NON_LOAD_BEARING: 120.0,
}

# (thickness cm, height limit m) anchor points for cellular-concrete walls
CELLULAR_HEIGHT_LIMITS = ((15.0, 17.0), (20.0, 22.0), (25.0, 28.0))


def firewall_degree(depth_cm: float, role: WallRole) -> str:
    """Highest rating whose required depth is met; 'none' below the table."""
    if depth_cm <= 0:
        raise ValueError("depth must be > 0")
    if role not in DEGREE_TABLE:
        raise ValueError("degree table covers bearing and separating walls only")
    rating = "none"
    for name, required in DEGREE_TABLE[role]:
        if depth_cm >= required:
            rating = name
    return rating


def cellular_height_limit(thickness_cm: float) -> float:
    """Height limit in m; linear between the tabulated thicknesses."""
    points = CELLULAR_HEIGHT_LIMITS
    if not points[0][0] <= thickness_cm <= points[-1][0]:
        raise ValueError(
            f"thickness {thickness_cm} cm outside tabulated range "
            f"[{points[0][0]}, {points[-1][0]}]"
        )
    for (t0, h0), (t1, h1) in zip(points, points[1:]):
        if t0 <= thickness_cm <= t1:
            return h0 + (h1 - h0) * (thickness_cm - t0) / (t1 - t0)
    raise AssertionError("unreachable")


def min_thickness_check(thickness_mm: float, role: WallRole) -> CheckStatus:
    """EN 1992-1-2 5.4.3 minimum thickness for fire walls."""
    if thickness_mm <= 0:
        raise ValueError("thickness must be > 0")
    if role not in MIN_THICKNESS_MM:
        return CheckStatus.NOT_APPLICABLE
    return (
        CheckStatus.PASS
        if thickness_mm >= MIN_THICKNESS_MM[role]
        else CheckStatus.FAIL
    )


@dataclass(frozen=True)
class SlendernessResult:
    slenderness: float
    status: CheckStatus


def slenderness_check(s: WallScenario) -> SlendernessResult:
    """Mechanical slenderness of the gross strip section, cap 50.

    Effective length equals the storey height (pinned-pinned, matching
    the structural model's supports); radius of gyration e/sqrt(12).
    """
    radius = s.thickness / math.sqrt(12.0)
    lam = s.height / radius
    status = CheckStatus.PASS if lam <= SLENDERNESS_LIMIT else CheckStatus.FAIL
    return SlendernessResult(slenderness=lam, status=status)


@dataclass(frozen=True)
class SpanRuleResult:
    """Outputs of the span-segmentation recommendation.

    reduction_factor and reduced_span are the literal rule outputs (for
    spans above the limit the reduced span is identically 3.5 m, which is
    the point of the rule: cap segments at 3.5 m). columns_to_add and
    segment_length are the practical subdivision achieving that cap.
    """

    reduction_factor: float
    reduced_span: float
    columns_to_add: int
    segment_length: float


def span_reduction(span: float) -> SpanRuleResult:
    if span <= 0:
        raise ValueError("span must be > 0")
    if span <= SPAN_LIMIT:
        return SpanRuleResult(1.0, span, 0, span)
    k_r = SPAN_LIMIT / span
    segments = math.ceil(span / SPAN_LIMIT)
    segment_length = span / segments
    if span >= SEGMENT_MIN:
        assert SEGMENT_MIN <= segment_length <= SPAN_LIMIT
    return SpanRuleResult(
        reduction_factor=k_r,
        reduced_span=k_r * span,
        columns_to_add=segments - 1,
        segment_length=segment_length,
    )


@dataclass(frozen=True)
class ComplianceReport:
    """Outcome of every prescriptive check for one wall."""

    scenario_name: str
    degree_rating: str
    min_thickness: CheckStatus
    slenderness: SlendernessResult
    cellular_height: CheckStatus
    cellular_height_limit_m: float | None
    span_rule: SpanRuleResult
    span_rule_status: CheckStatus

    @property
    def all_applicable_pass(self) -> bool:
        statuses = (
            self.min_thickness,
            self.slenderness.status,
            self.cellular_height,
            self.span_rule_status,
        )
        return all(st is not CheckStatus.FAIL for st in statuses)


def check_wall(
    s: WallScenario, role: WallRole = WallRole.REINFORCED_LOAD_BEARING
) -> ComplianceReport:
    """Run every check against one scenario.

    The rating lookup treats a loaded wall as bearing. The cellular-height
    limit only applies inside its tabulated thickness range; outside it
    the check reports not-applicable. The span rule fails when columns
    would be required, since the as-built wall exceeds the recommended
    segment cap.
    """
    thickness_cm = s.thickness * 100.0
    degree = firewall_degree(thickness_cm, WallRole.BEARING)
    min_t = min_thickness_check(s.thickness * 1000.0, role)
    slender = slenderness_check(s)

    try:
        limit = cellular_height_limit(thickness_cm)
        cellular = CheckStatus.PASS if s.height <= limit else CheckStatus.FAIL
    except ValueError:
        limit = None
        cellular = CheckStatus.NOT_APPLICABLE

    span = span_reduction(s.span)
    span_status = CheckStatus.PASS if span.columns_to_add == 0 else CheckStatus.FAIL

    return ComplianceReport(
        scenario_name=s.name,
        degree_rating=degree,
        min_thickness=min_t,
        slenderness=slender,
        cellular_height=cellular,
        cellular_height_limit_m=limit,
        span_rule=span,
        span_rule_status=span_status,
    )
