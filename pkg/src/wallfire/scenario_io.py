"""Flat key = value scenario files.

The format is deliberately dumb: one ``key = value`` pair per line, ``#``
comments, keys carrying their unit in the name. Unknown keys are
rejected so typos fail loudly. Serialising uses repr() for floats, which
makes write-then-parse an exact round trip.

    name = Mu 20
    height_m = 2.86
    span_m = 4.7
    thickness_m = 0.2
    rebar_diameter_mm = 10.0
    rebar_spacing_m = 0.2
    cover_m = 0.024
    exposure = one_side
    n_ult_tf = 41.2
    m_ult_tfm = 2.26
    load_ratio = 1.0
    strip_width_m = 0.2
    f_ck_mpa = 25.0
    f_yk_mpa = 400.0
"""

from __future__ import annotations

from pathlib import Path

from .scenarios import Exposure, WallScenario


class ScenarioParseError(ValueError):
    pass


_REQUIRED = (
    "name",
    "height_m",
    "span_m",
    "thickness_m",
    "rebar_diameter_mm",
    "rebar_spacing_m",
    "cover_m",
    "exposure",
    "n_ult_tf",
    "m_ult_tfm",
)
_OPTIONAL = {
    "load_ratio": 1.0,
    "strip_width_m": 0.20,
    "f_ck_mpa": 25.0,
    "f_yk_mpa": 400.0,
}
_KNOWN = set(_REQUIRED) | set(_OPTIONAL)


def parse_scenario_text(text: str, source: str = "<string>") -> WallScenario:
    pairs: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ScenarioParseError(f"{source}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KNOWN:
            raise ScenarioParseError(f"{source}:{lineno}: unknown key {key!r}")
        if key in pairs:
            raise ScenarioParseError(f"{source}:{lineno}: duplicate key {key!r}")
        pairs[key] = value

    missing = [k for k in _REQUIRED if k not in pairs]
    if missing:
        raise ScenarioParseError(f"{source}: missing keys: {', '.join(missing)}")

    def fnum(key: str, default: float | None = None) -> float:
        if key not in pairs:
            return float(default)
        try:
            return float(pairs[key])
        except ValueError:
            raise ScenarioParseError(
                f"{source}: field {key!r}: not a number: {pairs[key]!r}"
            ) from None

    exposure_raw = pairs["exposure"]
    try:
        exposure = Exposure(exposure_raw)
    except ValueError:
        raise ScenarioParseError(
            f"{source}: field 'exposure': must be 'one_side' or 'two_sides', "
            f"got {exposure_raw!r}"
        ) from None

    try:
        return WallScenario(
            name=pairs["name"],
            height=fnum("height_m"),
            span=fnum("span_m"),
            thickness=fnum("thickness_m"),
            rebar_diameter=fnum("rebar_diameter_mm"),
            rebar_spacing=fnum("rebar_spacing_m"),
            cover=fnum("cover_m"),
            exposure=exposure,
            axial_load_total=fnum("n_ult_tf"),
            moment_total=fnum("m_ult_tfm"),
            load_ratio=fnum("load_ratio", _OPTIONAL["load_ratio"]),
            strip_width=fnum("strip_width_m", _OPTIONAL["strip_width_m"]),
            concrete_strength_char=fnum("f_ck_mpa", _OPTIONAL["f_ck_mpa"]) * 1e6,
            steel_yield_char=fnum("f_yk_mpa", _OPTIONAL["f_yk_mpa"]) * 1e6,
        )
    except ValueError as exc:
        raise ScenarioParseError(f"{source}: {exc}") from None


def parse_scenario_file(path: str | Path) -> WallScenario:
    path = Path(path)
    return parse_scenario_text(path.read_text(), source=str(path))


def scenario_to_text(s: WallScenario) -> str:
    lines = [
        f"name = {s.name}",
        f"height_m = {s.height!r}",
        f"span_m = {s.span!r}",
        f"thickness_m = {s.thickness!r}",
        f"rebar_diameter_mm = {s.rebar_diameter!r}",
        f"rebar_spacing_m = {s.rebar_spacing!r}",
        f"cover_m = {s.cover!r}",
        f"exposure = {s.exposure.value}",
        f"n_ult_tf = {s.axial_load_total!r}",
        f"m_ult_tfm = {s.moment_total!r}",
        f"load_ratio = {s.load_ratio!r}",
        f"strip_width_m = {s.strip_width!r}",
        f"f_ck_mpa = {s.concrete_strength_char / 1e6!r}",
        f"f_yk_mpa = {s.steel_yield_char / 1e6!r}",
    ]
    return "\n".join(lines) + "\n"


def write_scenario_file(s: WallScenario, path: str | Path) -> None:
    Path(path).write_text(scenario_to_text(s))
