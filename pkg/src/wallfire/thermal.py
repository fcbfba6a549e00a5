"""Nonlinear transient heat conduction over the wall strip cross-section.

Finite-volume grid over the thickness x width rectangle of the strip:

        Face1 (x = 0)                        Face2 (x = e)
        |  c(0,0) | c(1,0) |  ...  | c(nt-1,0) |
        |  c(0,1) | c(1,1) |  ...  | c(nt-1,1) |        nt x nw cells
              x: through thickness ->
              y: across the strip width (lateral edges adiabatic)

Cell-centred unknowns, backward-Euler time stepping, and a lagged-property
Newton iteration per step (conductivity and volumetric heat capacity are
re-evaluated each pass, the radiative boundary term is linearised
exactly). Face temperatures are reconstructed by eliminating a surface
node between the boundary flux model and the half-cell conduction path,
so surface probes report true face values rather than first-cell values.

Rebar cells are tagged for probing but keep concrete thermal properties;
at strip scale the bars are thermally negligible.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import materials
from .fire import AMBIENT_C, ExposureConfig, Face, FireCurve, gas_temperature
from .materials import ConcreteLaw
from .scenarios import WallScenario
from .units import CELSIUS_TO_KELVIN

# Property tables stop at 1200 C; late in very long fires the gas (and the
# first millimetres of concrete) can exceed that, so property lookups are
# clamped while the temperature field itself is not.
_PROPERTY_CAP_C = 1200.0


class ThermalConvergenceError(RuntimeError):
    """Inner iteration failed to converge even at the minimum substep."""


class MeshResolutionError(ValueError):
    pass


class Probe(Enum):
    FACE1_SURFACE = "face1_surface"
    FACE2_SURFACE = "face2_surface"
    MID_DEPTH = "mid_depth"
    REBAR_FACE1 = "rebar_face1"
    REBAR_FACE2 = "rebar_face2"


@dataclass(frozen=True)
class RebarCell:
    i: int  # through-thickness cell index
    j: int  # width cell index
    area: float  # steel area of the bar, m2
    face: Face  # which face the bar belongs to


@dataclass(frozen=True)
class SectionMesh:
    """Uniform cell grid over the strip cross-section."""

    thickness: float
    width: float
    n_through: int
    n_width: int
    rebar_cells: tuple[RebarCell, ...]

    @property
    def dx(self) -> float:
        return self.thickness / self.n_through

    @property
    def dy(self) -> float:
        return self.width / self.n_width

    @property
    def n_cells(self) -> int:
        return self.n_through * self.n_width

    @property
    def x_centroids(self) -> np.ndarray:
        """Through-thickness centroid coordinates, x = 0 at Face1."""
        return (np.arange(self.n_through) + 0.5) * self.dx

    @property
    def y_centroids(self) -> np.ndarray:
        return (np.arange(self.n_width) + 0.5) * self.dy

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy

    def rebar_cell(self, face: Face) -> RebarCell:
        for rc in self.rebar_cells:
            if rc.face is face:
                return rc
        raise KeyError(f"no rebar tagged on {face}")


def build_section_mesh(
    s: WallScenario, n_through: int = 20, n_width: int = 1
) -> SectionMesh:
    """Uniform grid with the two bars of the strip tagged, one per face."""
    if n_through < 10:
        raise MeshResolutionError("n_through must be >= 10")
    if n_width < 1:
        raise MeshResolutionError("n_width must be >= 1")
    dx = s.thickness / n_through
    d_axis = s.rebar_axis_depth
    bar_area = np.pi * (s.rebar_diameter / 1000.0) ** 2 / 4.0
    j_mid = n_width // 2
    i1 = min(int(d_axis / dx), n_through - 1)
    i2 = min(int((s.thickness - d_axis) / dx), n_through - 1)
    rebars = (
        RebarCell(i=i1, j=j_mid, area=bar_area, face=Face.FACE1),
        RebarCell(i=i2, j=j_mid, area=bar_area, face=Face.FACE2),
    )
    return SectionMesh(
        thickness=s.thickness,
        width=s.strip_width,
        n_through=n_through,
        n_width=n_width,
        rebar_cells=rebars,
    )


@dataclass(frozen=True)
class TemperatureField:
    """Cell temperatures at one instant, plus reconstructed face values."""

    time: float
    cells: np.ndarray  # (n_through, n_width), C
    face1_surface: np.ndarray  # (n_width,), C
    face2_surface: np.ndarray  # (n_width,), C

    def through_profile(self) -> np.ndarray:
        """Width-averaged through-thickness profile."""
        return self.cells.mean(axis=1)


@dataclass(frozen=True)
class TemperatureHistory:
    """Temperature fields at recorded times, first field uniform ambient."""

    mesh: SectionMesh
    fields: tuple[TemperatureField, ...]
    energy_steps: tuple[tuple[float, float, float], ...]
    # energy_steps rows: (t_end_of_step, stored energy change J/m, boundary inflow J/m)

    @property
    def times(self) -> np.ndarray:
        return np.array([f.time for f in self.fields])

    @property
    def t_end(self) -> float:
        return self.fields[-1].time

    def _bracket(self, t: float) -> tuple[TemperatureField, TemperatureField, float]:
        times = self.times
        if t < times[0] or t > times[-1]:
            raise ValueError(f"t = {t} outside recorded span [{times[0]}, {times[-1]}]")
        hi = int(np.searchsorted(times, t, side="left"))
        if times[hi] == t:
            return self.fields[hi], self.fields[hi], 0.0
        lo = hi - 1
        w = (t - times[lo]) / (times[hi] - times[lo])
        return self.fields[lo], self.fields[hi], w

    def field_at(self, t: float) -> TemperatureField:
        """Linear interpolation in time, cell by cell."""
        lo, hi, w = self._bracket(t)
        if w == 0.0:
            return lo
        return TemperatureField(
            time=t,
            cells=(1 - w) * lo.cells + w * hi.cells,
            face1_surface=(1 - w) * lo.face1_surface + w * hi.face1_surface,
            face2_surface=(1 - w) * lo.face2_surface + w * hi.face2_surface,
        )

    def probe(self, t: float, probe: Probe) -> float:
        return probe_temperature(self, t, probe)


def probe_temperature(history: TemperatureHistory, t: float, probe: Probe) -> float:
    """Linear-in-time temperature at one of the named probe locations."""
    field = history.field_at(t)
    mesh = history.mesh
    if probe is Probe.FACE1_SURFACE:
        return float(field.face1_surface.mean())
    if probe is Probe.FACE2_SURFACE:
        return float(field.face2_surface.mean())
    if probe is Probe.MID_DEPTH:
        prof = field.through_profile()
        return float(np.interp(mesh.thickness / 2.0, mesh.x_centroids, prof))
    if probe is Probe.REBAR_FACE1:
        rc = mesh.rebar_cell(Face.FACE1)
        return float(field.cells[rc.i, rc.j])
    if probe is Probe.REBAR_FACE2:
        rc = mesh.rebar_cell(Face.FACE2)
        return float(field.cells[rc.i, rc.j])
    raise ValueError(f"unknown probe {probe}")


# ---------------------------------------------------------------------------
# boundary treatment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _FaceBC:
    """Resolved boundary condition of one face for a single time step."""

    kind: str  # "fire", "ambient", "dirichlet"
    value: float  # gas temperature / ambient temperature / imposed temperature


def _surface_eliminate(
    bc: _FaceBC, t_cell: np.ndarray, beta: np.ndarray, cfg: ExposureConfig
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-column surface temperature, flux into cells, and d(flux)/d(T_cell).

    beta = 2 k / dx is the half-cell conductance per unit area. The surface
    balance  q_bc(Ts) = beta (Ts - Tc)  is solved for Ts: exactly for the
    linear cases, by a few Newton steps for the radiative one.
    """
    if bc.kind == "dirichlet":
        ts = np.full_like(t_cell, bc.value)
        q = beta * (ts - t_cell)
        return ts, q, -beta
    if bc.kind == "ambient":
        h = cfg.h_unexposed
        ts = (h * bc.value + beta * t_cell) / (h + beta)
        q = beta * (ts - t_cell)
        return ts, q, -beta * h / (h + beta)
    # fire-exposed: convection + radiation against the gas
    h = cfg.h_exposed
    se = cfg.stefan_boltzmann * cfg.emissivity
    tg = bc.value
    tg_k4 = (tg + CELSIUS_TO_KELVIN) ** 4
    ts = np.clip(t_cell, None, tg)  # start between cell and gas
    for _ in range(30):
        ts_k = ts + CELSIUS_TO_KELVIN
        g = h * (tg - ts) + se * (tg_k4 - ts_k**4) - beta * (ts - t_cell)
        dg = -h - 4.0 * se * ts_k**3 - beta
        step = g / dg
        ts = np.maximum(ts - step, -CELSIUS_TO_KELVIN + 1.0)
        if np.max(np.abs(step)) < 1e-9:
            break
    ts_k = ts + CELSIUS_TO_KELVIN
    dts_dtc = beta / (h + 4.0 * se * ts_k**3 + beta)
    q = beta * (ts - t_cell)
    return ts, q, beta * (dts_dtc - 1.0)


# ---------------------------------------------------------------------------
# solver
# ---------------------------------------------------------------------------


def solve_thermal(
    s: WallScenario,
    curve: FireCurve,
    cfg: ExposureConfig,
    *,
    dt: float = 12.0,
    t_end: float,
    mesh: SectionMesh | None = None,
    law: ConcreteLaw | None = None,
    record_every: float = 60.0,
    dirichlet: dict[Face, float] | None = None,
    conductivity_fn=None,
    heat_capacity_fn=None,
    inner_tol: float = 0.1,
    max_inner: int = 40,
) -> TemperatureHistory:
    """March the cross-section temperature field from uniform ambient.

    ``dirichlet`` imposes fixed face temperatures (verification mode) and
    overrides the exposure model on those faces. ``conductivity_fn`` /
    ``heat_capacity_fn`` (J/m3K) replace the concrete property curves when
    given, which the constant-property oracle tests rely on.
    """
    if dt <= 0 or t_end <= dt:
        raise ValueError("need dt > 0 and t_end > dt")
    if mesh is None:
        mesh = build_section_mesh(s)
    if law is None:
        law = ConcreteLaw(f_ck=s.concrete_strength_char)

    k_of = conductivity_fn or (
        lambda T: materials.conductivity(np.minimum(T, _PROPERTY_CAP_C), law)
    )
    c_of = heat_capacity_fn or (
        lambda T: materials.volumetric_heat_capacity(
            np.minimum(T, _PROPERTY_CAP_C), law
        )
    )

    nt, nw = mesh.n_through, mesh.n_width
    n = nt * nw
    dx, dy = mesh.dx, mesh.dy
    vol = dx * dy  # per metre of wall height

    def face_bc(face: Face, t: float) -> _FaceBC:
        if dirichlet and face in dirichlet:
            return _FaceBC("dirichlet", dirichlet[face])
        if cfg.is_exposed(face):
            return _FaceBC("fire", gas_temperature(curve, t))
        return _FaceBC("ambient", cfg.ambient_c)

    # static 5-point (3-point when nw = 1) connectivity, values rebuilt per pass
    idx = np.arange(n).reshape(nt, nw)
    pairs = []
    for i in range(nt - 1):
        pairs.extend(zip(idx[i, :], idx[i + 1, :], [dy / dx] * nw))
    for j in range(nw - 1):
        pairs.extend(zip(idx[:, j], idx[:, j + 1], [dx / dy] * nt))
    pair_a = np.array([p[0] for p in pairs], dtype=int)
    pair_b = np.array([p[1] for p in pairs], dtype=int)
    pair_geom = np.array([p[2] for p in pairs])  # area / distance

    temp = np.full(n, AMBIENT_C)
    t_now = 0.0

    def record_field(t: float, temp_flat: np.ndarray) -> TemperatureField:
        cells = temp_flat.reshape(nt, nw)
        k_cells = np.asarray(k_of(cells))
        beta1 = 2.0 * k_cells[0, :] / dx
        beta2 = 2.0 * k_cells[-1, :] / dx
        ts1, _, _ = _surface_eliminate(face_bc(Face.FACE1, t), cells[0, :], beta1, cfg)
        ts2, _, _ = _surface_eliminate(face_bc(Face.FACE2, t), cells[-1, :], beta2, cfg)
        return TemperatureField(
            time=t, cells=cells.copy(), face1_surface=ts1, face2_surface=ts2
        )

    fields = [record_field(0.0, temp)]
    energy_rows: list[tuple[float, float, float]] = []

    def try_step(t_from: float, temp_old: np.ndarray, h_step: float):
        """One backward-Euler step; returns (T_new, stored dE, inflow dE) or None."""
        t_new = t_from + h_step
        bc1 = face_bc(Face.FACE1, t_new)
        bc2 = face_bc(Face.FACE2, t_new)
        temp_new = temp_old.copy()
        for _ in range(max_inner):
            grid = temp_new.reshape(nt, nw)
            k_cell = np.asarray(k_of(temp_new))
            cap = np.asarray(c_of(temp_new))

            g_pair = pair_geom * 0.5 * (k_cell[pair_a] + k_cell[pair_b])
            beta1 = 2.0 * k_cell[idx[0, :]] / dx
            beta2 = 2.0 * k_cell[idx[-1, :]] / dx
            _, q1, dq1 = _surface_eliminate(bc1, grid[0, :], beta1, cfg)
            _, q2, dq2 = _surface_eliminate(bc2, grid[-1, :], beta2, cfg)

            # residual: cap*V*(T - T_old)/h - inflow(T) = 0
            inflow = np.zeros(n)
            flo = g_pair * (temp_new[pair_b] - temp_new[pair_a])
            np.add.at(inflow, pair_a, flo)
            np.add.at(inflow, pair_b, -flo)
            inflow[idx[0, :]] += q1 * dy
            inflow[idx[-1, :]] += q2 * dy

            resid = cap * vol * (temp_new - temp_old) / h_step - inflow

            diag = cap * vol / h_step
            rows = np.concatenate([pair_a, pair_b, pair_a, pair_b])
            cols = np.concatenate([pair_b, pair_a, pair_a, pair_b])
            vals = np.concatenate([-g_pair, -g_pair, g_pair, g_pair])
            jac = sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
            jac = jac + sp.diags(diag)
            bd = np.zeros(n)
            bd[idx[0, :]] -= dq1 * dy
            bd[idx[-1, :]] -= dq2 * dy
            jac = jac + sp.diags(bd)

            delta = spla.spsolve(jac, -resid)
            temp_new = temp_new + delta
            if not np.all(np.isfinite(temp_new)):
                return None
            if np.max(np.abs(delta)) < inner_tol:
                # energy bookkeeping with properties frozen at the converged state
                cap_c = np.asarray(c_of(temp_new))
                stored = float(np.sum(cap_c * vol * (temp_new - temp_old)))
                k_c = np.asarray(k_of(temp_new))
                gr = temp_new.reshape(nt, nw)
                b1 = 2.0 * k_c[idx[0, :]] / dx
                b2 = 2.0 * k_c[idx[-1, :]] / dx
                _, qf1, _ = _surface_eliminate(bc1, gr[0, :], b1, cfg)
                _, qf2, _ = _surface_eliminate(bc2, gr[-1, :], b2, cfg)
                inflow_e = float((qf1.sum() + qf2.sum()) * dy * h_step)
                return temp_new, stored, inflow_e
        return None

    min_step = dt / 64.0
    next_record = record_every
    while t_now < t_end - 1e-9:
        target = min(t_now + dt, next_record, t_end)
        h_step = target - t_now
        attempt = h_step
        result = None
        while result is None:
            result = try_step(t_now, temp, attempt)
            if result is None:
                attempt /= 2.0
                if attempt < min_step:
                    raise ThermalConvergenceError(
                        f"no convergence at t = {t_now + attempt:.1f} s even with "
                        f"substep {attempt:.3g} s (dt = {dt}, tol = {inner_tol} C)"
                    )
        temp, stored, inflow_e = result
        t_now += attempt
        energy_rows.append((t_now, stored, inflow_e))
        if abs(t_now - next_record) < 1e-9 or t_now >= t_end - 1e-9:
            fields.append(record_field(t_now, temp))
            if abs(t_now - next_record) < 1e-9:
                next_record += record_every

    return TemperatureHistory(
        mesh=mesh, fields=tuple(fields), energy_steps=tuple(energy_rows)
    )


def sample_temperature(history: TemperatureHistory, t: float, probe: Probe) -> float:
    return probe_temperature(history, t, probe)


def write_history_table(history: TemperatureHistory, path) -> None:
    """Dump the history as text: one row per (time, cell index, x, y, T)."""
    mesh = history.mesh
    xs = mesh.x_centroids
    ys = mesh.y_centroids
    with open(path, "w") as f:
        f.write("time_s,cell,x_m,y_m,temperature_C\n")
        for field in history.fields:
            for i in range(mesh.n_through):
                for j in range(mesh.n_width):
                    cell = i * mesh.n_width + j
                    f.write(
                        f"{field.time:.6g},{cell},{xs[i]:.6g},{ys[j]:.6g},"
                        f"{field.cells[i, j]:.6g}\n"
                    )
