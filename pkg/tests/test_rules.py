import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import wallfire as wf
from wallfire.rules import (
    CheckStatus,
    SpanRuleResult,
    WallRole,
    cellular_height_limit,
    check_wall,
    firewall_degree,
    min_thickness_check,
    slenderness_check,
    span_reduction,
)

# the full published rating table: (depth cm, role) -> rating
DEGREE_ANCHORS = [
    (10.0, WallRole.BEARING, "1/2h"),
    (11.0, WallRole.BEARING, "1h"),
    (12.0, WallRole.BEARING, "1h30"),
    (15.0, WallRole.BEARING, "2h"),
    (20.0, WallRole.BEARING, "3h"),
    (25.0, WallRole.BEARING, "4h"),
    (6.0, WallRole.SEPARATING, "1/2h"),
    (7.0, WallRole.SEPARATING, "1h"),
    (9.0, WallRole.SEPARATING, "1h30"),
    (11.0, WallRole.SEPARATING, "2h"),
    (15.0, WallRole.SEPARATING, "3h"),
    (17.5, WallRole.SEPARATING, "4h"),
]


class TestFirewallDegree:
    @pytest.mark.parametrize("depth,role,rating", DEGREE_ANCHORS)
    def test_tabulated_anchors(self, depth, role, rating):
        assert firewall_degree(depth, role) == rating

    def test_fifteen_cm_differs_by_role(self):
        assert firewall_degree(15.0, WallRole.BEARING) == "2h"
        assert firewall_degree(15.0, WallRole.SEPARATING) == "3h"

    def test_below_table(self):
        assert firewall_degree(5.0, WallRole.SEPARATING) == "none"
        assert firewall_degree(9.9, WallRole.BEARING) == "none"

    @given(
        d1=st.floats(0.1, 40.0),
        d2=st.floats(0.1, 40.0),
        role=st.sampled_from([WallRole.BEARING, WallRole.SEPARATING]),
    )
    def test_nondecreasing_in_depth(self, d1, d2, role):
        order = ["none", "1/2h", "1h", "1h30", "2h", "3h", "4h"]
        lo, hi = min(d1, d2), max(d1, d2)
        assert order.index(firewall_degree(lo, role)) <= order.index(
            firewall_degree(hi, role)
        )

    def test_invalid(self):
        with pytest.raises(ValueError):
            firewall_degree(0.0, WallRole.BEARING)
        with pytest.raises(ValueError):
            firewall_degree(15.0, WallRole.UNREINFORCED_PANEL)


class TestCellularHeightLimit:
    @pytest.mark.parametrize("t,h", [(15.0, 17.0), (20.0, 22.0), (25.0, 28.0)])
    def test_tabulated(self, t, h):
        assert cellular_height_limit(t) == pytest.approx(h)

    def test_interpolates(self):
        assert 17.0 < cellular_height_limit(17.5) < 22.0

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            cellular_height_limit(14.0)
        with pytest.raises(ValueError):
            cellular_height_limit(26.0)


class TestMinThickness:
    def test_thresholds(self):
        assert min_thickness_check(200.0, WallRole.UNREINFORCED_PANEL) is CheckStatus.PASS
        assert min_thickness_check(199.0, WallRole.UNREINFORCED_PANEL) is CheckStatus.FAIL
        assert (
            min_thickness_check(140.0, WallRole.REINFORCED_LOAD_BEARING)
            is CheckStatus.PASS
        )
        assert (
            min_thickness_check(139.0, WallRole.REINFORCED_LOAD_BEARING)
            is CheckStatus.FAIL
        )
        assert (
            min_thickness_check(120.0, WallRole.REINFORCED_NON_LOAD_BEARING)
            is CheckStatus.PASS
        )

    def test_two_hundred_passes_load_bearing(self):
        assert (
            min_thickness_check(200.0, WallRole.REINFORCED_LOAD_BEARING)
            is CheckStatus.PASS
        )

    def test_roles_without_threshold(self):
        assert min_thickness_check(150.0, WallRole.BEARING) is CheckStatus.NOT_APPLICABLE

    def test_invalid(self):
        with pytest.raises(ValueError):
            min_thickness_check(0.0, WallRole.REINFORCED_LOAD_BEARING)


class TestSlenderness:
    def test_reference_wall(self, walls):
        res = slenderness_check(walls["Mu 20"])
        # 2.86 / (0.20 / sqrt(12))
        assert res.slenderness == pytest.approx(2.86 * math.sqrt(12.0) / 0.20, rel=1e-12)
        assert res.slenderness == pytest.approx(49.53, abs=0.01)
        assert res.status is CheckStatus.PASS

    def test_taller_wall_fails(self, walls):
        import dataclasses

        s = dataclasses.replace(walls["Mu 20"], height=3.0)
        res = slenderness_check(s)
        assert res.slenderness == pytest.approx(51.96, abs=0.01)
        assert res.status is CheckStatus.FAIL

    def test_doubling_thickness_halves_slenderness(self, walls):
        import dataclasses

        s = walls["Mu 20"]
        s2 = dataclasses.replace(s, thickness=2 * s.thickness)
        assert slenderness_check(s2).slenderness == pytest.approx(
            slenderness_check(s).slenderness / 2.0, rel=1e-12
        )


class TestSpanReduction:
    def test_at_limit(self):
        r = span_reduction(3.5)
        assert r == SpanRuleResult(1.0, 3.5, 0, 3.5)

    def test_reference_span(self):
        r = span_reduction(4.7)
        assert r.reduction_factor == pytest.approx(0.74468, abs=1e-5)
        assert r.reduced_span == pytest.approx(3.5, rel=1e-12)
        assert r.columns_to_add == 1
        assert r.segment_length == pytest.approx(2.35)

    def test_long_span(self):
        r = span_reduction(7.2)
        assert r.reduction_factor == pytest.approx(0.48611, abs=1e-5)
        assert r.reduced_span == pytest.approx(3.5, rel=1e-12)
        assert r.columns_to_add == 2
        assert r.segment_length == pytest.approx(2.4)

    @given(span=st.floats(3.5001, 60.0))
    def test_reduced_span_is_constant_cap(self, span):
        # algebraic consequence of the rule: K_r * L == 3.5 identically
        assert span_reduction(span).reduced_span == pytest.approx(3.5, rel=1e-9)

    @given(span=st.floats(1.5, 60.0))
    def test_segment_band(self, span):
        r = span_reduction(span)
        assert 1.5 - 1e-9 <= r.segment_length <= 3.5 + 1e-9

    def test_invalid(self):
        with pytest.raises(ValueError):
            span_reduction(0.0)


class TestCheckWall:
    def test_all_builtins_pass_thickness_and_slenderness(self, walls):
        for s in walls.values():
            rep = check_wall(s)
            assert rep.min_thickness is CheckStatus.PASS
            assert rep.slenderness.status is CheckStatus.PASS

    def test_mu20_span_rule(self, walls):
        rep = check_wall(walls["Mu 20"])
        assert rep.span_rule.columns_to_add == 1
        assert rep.span_rule.segment_length == pytest.approx(2.35)
        assert rep.span_rule_status is CheckStatus.FAIL
        assert not rep.all_applicable_pass

    def test_mu1220_span_rule(self, walls):
        rep = check_wall(walls["Mu (12)20"])
        assert rep.span_rule.columns_to_add == 0
        assert rep.span_rule_status is CheckStatus.PASS
        assert rep.all_applicable_pass

    def test_degree_of_builtins(self, walls):
        # 20 cm bearing wall rates 3h
        assert check_wall(walls["Mu 20"]).degree_rating == "3h"

    def test_cellular_height(self, walls):
        rep = check_wall(walls["Mu 20"])
        assert rep.cellular_height_limit_m == pytest.approx(22.0)
        assert rep.cellular_height is CheckStatus.PASS
