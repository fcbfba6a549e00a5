"""Geometrically nonlinear fiber beam-column analysis of the heated strip.

Model
-----
The strip is a vertical beam-column of height H discretised into 10
quadratic (3-node) elements, 21 nodes, nodes 1 (base), 11 (mid-height)
and 21 (top) in the 1-based numbering used for reporting. Each node
carries three DOFs: u (vertical, +up), w (horizontal, positive toward
Face1, the fire side) and the cross-section rotation theta.

Kinematics are moderate-rotation (von Karman): the membrane strain is
u' + w'^2/2, which carries the P-delta destabilisation; curvature is
kappa = -theta' so that a positive internal moment bows the wall toward
Face1; shear strain w' - theta is penalised elastically and integrated
with the same reduced 2-point Gauss rule as everything else, which keeps
the quadratic Timoshenko element lock-free.

Supports are pinned-pinned: base fixed in u and w, top fixed in w only,
rotations free. The strip loads act as a compressive force at the top
plus equal end moments (the constant-in-time eccentricity of the cold
design), oriented to bow the wall toward Face1.

Failure
-------
Fire resistance is the last time at which equilibrium can be found.
Marching follows the thermal history's output cadence; when a step stops
converging it is halved down to a minimum substep, and the last converged
time is the resistance. A sustained mid-height velocity above 1 mm/s is
an auxiliary runaway criterion.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .materials import ConcreteLaw, SteelLaw
from .scenarios import StripResultants, WallScenario, strip_resultants
from .section import (
    FiberSection,
    SectionState,
    build_fiber_section,
    section_forces,
    shear_rigidity,
)
from .thermal import TemperatureHistory

N_ELEMENTS = 10
N_NODES = 2 * N_ELEMENTS + 1
MID_NODE = N_ELEMENTS + 1  # 1-based
TOP_NODE = N_NODES  # 1-based

_GP = (-1.0 / np.sqrt(3.0), 1.0 / np.sqrt(3.0))


class Component(Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


class FailureMode(Enum):
    NONCONVERGENCE = "nonconvergence"
    RUNAWAY_DEFLECTION = "runaway_deflection"
    NO_FAILURE = "no_failure_within_horizon"


@dataclass(frozen=True)
class BeamModel:
    """Discretised wall strip: 21 nodes, 10 three-node elements."""

    node_x: np.ndarray  # (21,) heights from base
    elements: np.ndarray  # (10, 3) node indices, 0-based
    section: FiberSection
    shear_ga: float
    fixed_dofs: tuple[int, ...]

    @property
    def n_dofs(self) -> int:
        return 3 * len(self.node_x)


@dataclass
class SolutionState:
    """Equilibrium iterate: displacement vector plus convergence info."""

    displacements: np.ndarray  # (63,) [u, w, theta] per node
    converged: bool
    iterations: int
    residual_norm: float

    def node_dof(self, node: int, component: Component) -> float:
        """1-based node lookup used by all reporting."""
        base = 3 * (node - 1)
        if component is Component.VERTICAL:
            return float(self.displacements[base])
        return float(self.displacements[base + 1])


def build_beam_model(
    s: WallScenario,
    section: FiberSection,
) -> BeamModel:
    node_x = np.linspace(0.0, s.height, N_NODES)
    elements = np.array(
        [[2 * e, 2 * e + 1, 2 * e + 2] for e in range(N_ELEMENTS)], dtype=int
    )
    # base: u = w = 0; top: w = 0; all rotations free
    fixed = (0, 1, 3 * (N_NODES - 1) + 1)
    return BeamModel(
        node_x=node_x,
        elements=elements,
        section=section,
        shear_ga=shear_rigidity(section),
        fixed_dofs=fixed,
    )


def external_loads(model: BeamModel, loads: StripResultants) -> np.ndarray:
    """Nodal load vector for the strip resultants.

    Compression enters as a negative (downward) axial force on the top
    node; the end-moment pair produces a uniform internal moment that bows
    the wall toward Face1.
    """
    f = np.zeros(model.n_dofs)
    f[3 * (N_NODES - 1)] = -loads.axial_load
    f[2] = loads.moment
    f[3 * (N_NODES - 1) + 2] = -loads.moment
    return f


def _shape(xi: float) -> tuple[np.ndarray, np.ndarray]:
    n = np.array([0.5 * xi * (xi - 1.0), 1.0 - xi * xi, 0.5 * xi * (xi + 1.0)])
    dn = np.array([xi - 0.5, -2.0 * xi, xi + 0.5])
    return n, dn


def assemble(
    model: BeamModel, state: SectionState, d: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Internal force vector and tangent stiffness at displacement d."""
    ndof = model.n_dofs
    f_int = np.zeros(ndof)
    stiff = np.zeros((ndof, ndof))
    ga = model.shear_ga

    for el in model.elements:
        xe = model.node_x[el]
        length = xe[-1] - xe[0]
        jac = length / 2.0
        dofs = np.concatenate([[3 * n, 3 * n + 1, 3 * n + 2] for n in el])
        de = d[dofs]
        ue, we, th = de[0::3], de[1::3], de[2::3]

        fe = np.zeros(9)
        ke = np.zeros((9, 9))
        for xi in _GP:
            nsh, dn = _shape(xi)
            dndx = dn / jac
            wgt = jac  # gauss weight 1

            up = dndx @ ue
            wp = dndx @ we
            theta = nsh @ th
            thp = dndx @ th

            eps0 = up + 0.5 * wp * wp
            kappa = -thp
            gamma = wp - theta

            n_f, m_f, ktan = section_forces(state, eps0, kappa)
            v_f = ga * gamma

            bm = np.zeros(9)
            bm[0::3] = dndx
            bm[1::3] = wp * dndx
            bb = np.zeros(9)
            bb[2::3] = -dndx
            bs = np.zeros(9)
            bs[1::3] = dndx
            bs[2::3] = -nsh
            gvec = np.zeros(9)
            gvec[1::3] = dndx

            fe += wgt * (bm * n_f + bb * m_f + bs * v_f)
            ke += wgt * (
                ktan[0, 0] * np.outer(bm, bm)
                + ktan[0, 1] * (np.outer(bm, bb) + np.outer(bb, bm))
                + ktan[1, 1] * np.outer(bb, bb)
                + ga * np.outer(bs, bs)
                + n_f * np.outer(gvec, gvec)
            )

        f_int[dofs] += fe
        stiff[np.ix_(dofs, dofs)] += ke

    return f_int, stiff


def solve_static(
    model: BeamModel,
    state: SectionState,
    f_ext: np.ndarray,
    initial: np.ndarray | None = None,
    *,
    max_iter: int = 30,
    tol_rel: float = 1e-8,
    tol_abs: float = 1e-4,
) -> SolutionState:
    """Newton iteration to equilibrium at fixed temperatures and loads."""
    d = np.zeros(model.n_dofs) if initial is None else initial.copy()
    free = np.setdiff1d(np.arange(model.n_dofs), model.fixed_dofs)
    d[list(model.fixed_dofs)] = 0.0

    ref = max(float(np.max(np.abs(f_ext))), 1.0)
    tol = tol_abs + tol_rel * ref

    resid_norm = np.inf
    for it in range(1, max_iter + 1):
        f_int, stiff = assemble(model, state, d)
        resid = f_int[free] - f_ext[free]
        resid_norm = float(np.max(np.abs(resid)))
        if not np.isfinite(resid_norm):
            return SolutionState(d, False, it, resid_norm)
        if resid_norm < tol:
            return SolutionState(d, True, it, resid_norm)

        try:
            delta = np.linalg.solve(stiff[np.ix_(free, free)], -resid)
        except np.linalg.LinAlgError:
            return SolutionState(d, False, it, resid_norm)
        if not np.all(np.isfinite(delta)):
            return SolutionState(d, False, it, resid_norm)

        # backtracking keeps the iteration from jumping over the
        # descending-branch kinks of heavily damaged sections
        scale = 1.0
        for _ in range(4):
            trial = d.copy()
            trial[free] += scale * delta
            f_trial, _ = assemble(model, state, trial)
            trial_norm = float(np.max(np.abs(f_trial[free] - f_ext[free])))
            if np.isfinite(trial_norm) and trial_norm < resid_norm:
                break
            scale *= 0.5
        d[free] += scale * delta

    return SolutionState(d, False, max_iter, resid_norm)


def solve_static_for_scenario(
    s: WallScenario,
    model: BeamModel,
    state: SectionState,
    *,
    ramp_steps: int = 5,
) -> SolutionState:
    """Apply the strip loads in increments at the given thermal state."""
    loads = strip_resultants(s)
    f_full = external_loads(model, loads)
    d = np.zeros(model.n_dofs)
    sol = SolutionState(d, True, 0, 0.0)
    for k in range(1, ramp_steps + 1):
        sol = solve_static(model, state, f_full * (k / ramp_steps), sol.displacements)
        if not sol.converged:
            return sol
    return sol


@dataclass(frozen=True)
class FireResistanceResult:
    """Outcome of a run-to-failure analysis."""

    scenario: WallScenario
    rf: float | None  # seconds; None when no failure within the horizon
    failure_mode: FailureMode
    times: np.ndarray  # (n_records,) converged record times
    displacements: np.ndarray  # (n_records, 63)
    horizon: float

    @property
    def failed(self) -> bool:
        return self.failure_mode is not FailureMode.NO_FAILURE

    @property
    def rf_minutes(self) -> float | None:
        return None if self.rf is None else self.rf / 60.0

    def series(self, node: int, component: Component) -> tuple[np.ndarray, np.ndarray]:
        if not 1 <= node <= N_NODES:
            raise ValueError(f"node must be in [1, {N_NODES}]")
        base = 3 * (node - 1)
        col = base if component is Component.VERTICAL else base + 1
        return self.times, self.displacements[:, col]

    @property
    def peak_mid_height_horizontal(self) -> float:
        _, w = self.series(MID_NODE, Component.HORIZONTAL)
        return float(np.max(np.abs(w)))

    @property
    def top_vertical_at_end(self) -> float:
        _, u = self.series(TOP_NODE, Component.VERTICAL)
        return float(u[-1])


def displacement_history(
    result: FireResistanceResult, node: int, component: Component
) -> tuple[np.ndarray, np.ndarray]:
    """Recorded time series of one node's displacement up to failure."""
    return result.series(node, component)


def run_to_failure(
    s: WallScenario,
    history: TemperatureHistory,
    *,
    concrete: ConcreteLaw | None = None,
    steel: SteelLaw | None = None,
    min_substep: float = 1.0,
    runaway_rate: float = 1e-3,  # m/s
) -> FireResistanceResult:
    """March thermal time under constant load until equilibrium is lost.

    The temperature history is consumed read-only; it must start at 0 s.
    If the horizon ends before failure the result reports NO_FAILURE with
    rf = None rather than inventing a resistance time.
    """
    section = build_fiber_section(s, history.mesh, concrete, steel)
    model = build_beam_model(s, section)
    loads = strip_resultants(s)
    f_ext = external_loads(model, loads)

    state0 = SectionState.from_field(section, history.fields[0])
    sol = solve_static_for_scenario(s, model, state0)
    if not sol.converged:
        raise RuntimeError(
            f"{s.name}: no ambient equilibrium under the applied loads "
            f"(residual {sol.residual_norm:.3g} N)"
        )

    rec_times = [0.0]
    rec_disp = [sol.displacements.copy()]
    runaway_count = 0
    mode = None
    rf = None

    def state_at(t: float) -> SectionState:
        return SectionState.from_field(section, history.field_at(t))

    t_prev = 0.0
    out_times = [f.time for f in history.fields[1:]]
    for t_target in out_times:
        advanced = _advance(
            model, state_at, f_ext, sol, t_prev, t_target, min_substep
        )
        sol, t_reached = advanced
        if t_reached < t_target:  # equilibrium lost inside this interval
            rf = t_reached
            mode = FailureMode.NONCONVERGENCE
            if t_reached > rec_times[-1]:
                rec_times.append(t_reached)
                rec_disp.append(sol.displacements.copy())
            break

        dtr = t_target - t_prev
        w_prev = rec_disp[-1][3 * (MID_NODE - 1) + 1]
        w_now = sol.displacements[3 * (MID_NODE - 1) + 1]
        rate = abs(w_now - w_prev) / dtr if dtr > 0 else 0.0

        rec_times.append(t_target)
        rec_disp.append(sol.displacements.copy())
        t_prev = t_target

        runaway_count = runaway_count + 1 if rate > runaway_rate else 0
        if runaway_count >= 3:
            rf = t_target
            mode = FailureMode.RUNAWAY_DEFLECTION
            break

    if mode is None:
        mode = FailureMode.NO_FAILURE

    return FireResistanceResult(
        scenario=s,
        rf=rf,
        failure_mode=mode,
        times=np.asarray(rec_times),
        displacements=np.asarray(rec_disp),
        horizon=history.t_end,
    )


def _advance(
    model: BeamModel,
    state_at,
    f_ext: np.ndarray,
    sol: SolutionState,
    t_from: float,
    t_to: float,
    min_substep: float,
) -> tuple[SolutionState, float]:
    """March equilibrium from t_from to t_to with step halving.

    Returns the last converged solution and the time it belongs to; the
    time falls short of t_to when halving bottoms out (failure).
    """
    t_now = t_from
    step = t_to - t_from
    current = sol
    while t_now < t_to - 1e-9:
        step = min(step, t_to - t_now)
        trial = solve_static(
            model, state_at(t_now + step), f_ext, current.displacements
        )
        if trial.converged:
            current = trial
            t_now += step
        else:
            step /= 2.0
            if step < min_substep:
                return current, t_now
    return current, t_to
