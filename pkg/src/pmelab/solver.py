"""Implicit finite-volume solver for rho u_t = (u^m)_xx + rho u^p on I_delta.

The Dirichlet problem is posed on I_delta = (-R+delta, R-delta) with u = 0 at
both ends.  Space is discretized in conservative three-point form on a
boundary-graded mesh; time uses backward Euler (or variable-step BDF2) with a
Newton solve of the tridiagonal system at every step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import trapezoid
from scipy.linalg import solve_banded

from .barrier import BACKWARD, SUB, SUPER, BarrierSpec, eval_barrier
from .density import SLOW, DensitySpec, eval_density
from .errors import (InvalidDatum, MonotonicityViolation, NewtonDivergence,
                     WindowMismatch)

GLOBAL, BLOWUP = "Global", "BlowUp"
# sup norms whose reaction time scale 1/((p-1) sup^(p-1)) is shorter than
# this many dt_min are treated as numerical infinity
RUNAWAY_STEPS = 1e4


# ---------------------------------------------------------------- mesh

def graded_nodes(R: float, delta: float, nx: int, ratio: float = 1.05,
                 h_min: float | None = None) -> np.ndarray:
    """Symmetric nodes on [-R+delta, R-delta], both ends included.

    Cell widths grow geometrically by `ratio` away from each end until they
    reach a uniform core width.  The number of graded cells is the smallest
    one for which the layout fills the interval; all widths are then scaled
    to fit exactly.
    """
    if nx < 16:
        raise ValueError(f"need nx >= 16, got {nx}")
    if not 0 < delta < R:
        raise ValueError(f"need 0 < delta < R, got {delta}")
    length = 2.0 * (R - delta)
    n_cells = nx - 1
    if h_min is None:
        h_min = delta / 4
    if ratio <= 1.0 or h_min * n_cells >= length:
        return np.linspace(-R + delta, R - delta, nx)
    half = n_cells // 2

    def widths(n_graded: int) -> np.ndarray:
        k = np.minimum(np.arange(half), n_graded)
        left = h_min * ratio ** k
        mid = [h_min * ratio ** n_graded] if n_cells % 2 else []
        return np.concatenate([left, mid, left[::-1]])

    n_graded = 0
    while n_graded < half and widths(n_graded).sum() < length:
        n_graded += 1
    w = widths(n_graded)
    w *= length / w.sum()
    x = -R + delta + np.concatenate([[0.0], np.cumsum(w)])
    x[-1] = R - delta
    # enforce exact symmetry
    x = 0.5 * (x - x[::-1])
    return x


def uniform_nodes(R: float, delta: float, nx: int) -> np.ndarray:
    if nx < 16:
        raise ValueError(f"need nx >= 16, got {nx}")
    return np.linspace(-R + delta, R - delta, nx)


def insert_nodes(x: np.ndarray, points: Sequence[float], min_gap: float = 1e-3) -> np.ndarray:
    """Add nodes at `points`, dropping existing nodes closer than min_gap * local width."""
    x = np.asarray(x, dtype=float)
    for pt in points:
        i = int(np.searchsorted(x, pt))
        if 0 < i < x.size:
            h = x[i] - x[i - 1]
            if abs(x[i] - pt) < 0.25 * h and 0 < i < x.size - 1:
                x = np.delete(x, i)
            elif abs(x[i - 1] - pt) < 0.25 * h and i - 1 > 0:
                x = np.delete(x, i - 1)
        x = np.unique(np.append(x, pt))
    return x


# ---------------------------------------------------------------- types

@dataclass
class Field:
    """Nodal values on a mesh whose two end nodes carry the Dirichlet zeros."""

    grid: np.ndarray
    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float).copy()
        if self.grid.ndim != 1 or self.grid.shape != self.values.shape:
            raise InvalidDatum("grid and values must be 1D arrays of equal length")
        if np.any(np.diff(self.grid) <= 0):
            raise InvalidDatum("grid must be strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise InvalidDatum("datum must be finite")
        if np.any(self.values < 0):
            raise InvalidDatum("datum must be nonnegative")
        self.values[0] = self.values[-1] = 0.0

    @classmethod
    def from_function(cls, grid, func: Callable, time: float = 0.0) -> "Field":
        grid = np.asarray(grid, dtype=float)
        vals = np.zeros_like(grid)
        vals[1:-1] = np.asarray(func(grid[1:-1]), dtype=float)
        return cls(grid, vals, time)

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass
class SchemeConfig:
    nx: int = 801
    stepper: str = "implicit"
    order: int = 1
    dt0: float = 1e-4
    dt_min: float = 1e-12
    dt_max: float = 0.1
    newton_tol: float = 1e-10
    newton_max_iters: int = 30
    blowup_threshold: float = 1e8
    mesh: str = "graded"
    stretch: float = 1.05
    h_min: float | None = None
    rel_change_tol: float = 0.1
    growth: float = 1.2
    reaction: bool = True
    eps_reg: float = 0.0
    snapshots: int = 51
    max_steps: int = 2_000_000

    def __post_init__(self):
        if self.nx < 16:
            raise ValueError(f"nx must be >= 16, got {self.nx}")
        if not self.dt_min < self.dt0 <= self.dt_max:
            raise ValueError("need dt_min < dt0 <= dt_max")
        if self.stepper not in ("implicit", "explicit"):
            raise ValueError(f"unknown stepper {self.stepper!r}")
        if self.order not in (1, 2):
            raise ValueError("order must be 1 or 2")
        if self.mesh not in ("uniform", "graded"):
            raise ValueError(f"unknown mesh {self.mesh!r}")

    def nodes(self, R: float, delta: float) -> np.ndarray:
        if self.mesh == "uniform":
            return uniform_nodes(R, delta, self.nx)
        return graded_nodes(R, delta, self.nx, self.stretch, self.h_min)


@dataclass
class SolveResult:
    status: str
    t_end: float | None
    bracket: tuple[float, float] | None
    history: np.ndarray
    snapshot_times: np.ndarray
    snapshots: np.ndarray
    grid: np.ndarray
    delta: float
    m: float
    p: float
    density: DensitySpec = field(repr=False)
    diagnostics: dict = field(default_factory=dict)
    step_times: np.ndarray | None = field(default=None, repr=False)

    @property
    def final(self) -> Field:
        return Field(self.grid, self.snapshots[-1], float(self.snapshot_times[-1]))

    def summary(self) -> dict:
        out = {"status": self.status, "delta": self.delta, "m": self.m, "p": self.p,
               "nodes": int(self.grid.size), "diagnostics": self.diagnostics}
        if self.status == GLOBAL:
            out["t_end"] = self.t_end
        else:
            out["bracket"] = list(self.bracket)
        return out


# ---------------------------------------------------------------- operations

def local_existence_time(p: float, u0) -> float:
    """Lower bound 1 / ((p-1) |u0|_inf^(p-1)) on the existence time; inf for zero data."""
    if not p > 1:
        raise ValueError(f"need p > 1, got {p}")
    vals = u0.values if isinstance(u0, Field) else np.asarray(u0, dtype=float)
    sup = float(np.max(np.abs(vals))) if vals.size else 0.0
    if not np.isfinite(sup):
        raise InvalidDatum("datum must be bounded")
    if sup == 0:
        return math.inf
    return 1.0 / ((p - 1) * sup ** (p - 1))


class _Operator:
    """Discrete diffusion and reaction on the interior nodes of a mesh."""

    def __init__(self, x: np.ndarray, density: DensitySpec, m: float, p: float,
                 reaction: bool, eps_reg: float):
        self.x = x
        h = np.diff(x)
        self.h_left, self.h_right = h[:-1], h[1:]
        self.vol = 0.5 * (self.h_left + self.h_right)
        self.rho = np.asarray(eval_density(density, x[1:-1]), dtype=float)
        self.rho_full = np.asarray(eval_density(density, x), dtype=float)
        self.m, self.p = m, p
        self.reaction = reaction
        self.eps_reg = eps_reg
        # diffusion stencil coefficients divided by rho and the dual volume
        self.cl = 1.0 / (self.h_left * self.vol * self.rho)
        self.cr = 1.0 / (self.h_right * self.vol * self.rho)

    def power(self, u):
        if self.eps_reg:
            return (u + self.eps_reg) ** self.m - self.eps_reg ** self.m
        return u ** self.m

    def dpower(self, u):
        return self.m * (u + self.eps_reg) ** (self.m - 1)

    def rhs(self, u: np.ndarray) -> np.ndarray:
        """(u^m)_xx / rho + u^p on interior nodes; u holds interior values."""
        v = np.concatenate([[0.0], self.power(u), [0.0]])
        out = self.cr * (v[2:] - v[1:-1]) - self.cl * (v[1:-1] - v[:-2])
        if self.reaction:
            out = out + u ** self.p
        return out

    def jacobian_bands(self, u: np.ndarray):
        dv = self.dpower(u)
        diag = -(self.cl + self.cr) * dv
        if self.reaction:
            diag = diag + self.p * u ** (self.p - 1)
        upper = self.cr[:-1] * dv[1:]
        lower = self.cl[1:] * dv[:-1]
        return lower, diag, upper

    def mass(self, full: np.ndarray) -> float:
        return float(trapezoid(self.rho_full * full, self.x))

    def explicit_limit(self, u: np.ndarray) -> float:
        rate = (self.cl + self.cr) * self.dpower(u)
        if self.reaction:
            rate = rate + self.p * u ** (self.p - 1)
        top = float(np.max(rate)) if rate.size else 0.0
        return math.inf if top == 0 else 0.45 / top


def _newton(op: _Operator, a0: float, rhs_old: np.ndarray, dt: float, guess: np.ndarray,
            tol: float, max_iters: int):
    """Solve a0 u - dt * L(u) = rhs_old; returns (u, iterations) or (None, iterations)."""
    u = np.maximum(guess, 0.0)
    n = u.size
    ab = np.zeros((3, n))
    for it in range(1, max_iters + 1):
        F = a0 * u - dt * op.rhs(u) - rhs_old
        lower, diag, upper = op.jacobian_bands(u)
        ab[0, 1:] = -dt * upper
        ab[1, :] = a0 - dt * diag
        ab[2, :-1] = -dt * lower
        try:
            du = solve_banded((1, 1), ab, F, check_finite=False)
        except (np.linalg.LinAlgError, ValueError):
            return None, it
        if not np.all(np.isfinite(du)):
            return None, it
        u_new = np.maximum(u - du, 0.0)
        change = float(np.max(np.abs(u_new - u)))
        u = u_new
        if change <= tol * max(1.0, float(np.max(u))):
            return u, it
    return None, max_iters


def _snapshot_grid(t_end: float, count: int) -> np.ndarray:
    return np.linspace(0.0, t_end, max(count, 2))


def solve_regularized(density: DensitySpec, m: float, p: float, u0, delta: float,
                      cfg: SchemeConfig | None = None, t_end: float = 1.0,
                      grid: np.ndarray | None = None,
                      snapshot_times: Sequence[float] | None = None,
                      step_times: Sequence[float] | None = None) -> SolveResult:
    """Advance the Dirichlet problem on I_delta until t_end or blow-up.

    `u0` is a Field on `grid` (or on the mesh built from cfg) or a callable of
    x.  `step_times` forces the accepted step sequence, which is how nested
    solves are kept on a common time grid.
    """
    cfg = cfg or SchemeConfig()
    if not m > 1 or not p > 1:
        raise ValueError("need m > 1 and p > 1")
    if not 0 < delta < density.R:
        raise ValueError(f"need 0 < delta < R, got {delta}")
    if isinstance(u0, Field):
        x = u0.grid
        datum = u0
    else:
        x = cfg.nodes(density.R, delta) if grid is None else np.asarray(grid, dtype=float)
        datum = Field.from_function(x, u0)
    if abs(x[0] + density.R - delta) > 1e-12 * density.R or \
            abs(x[-1] - density.R + delta) > 1e-12 * density.R:
        raise InvalidDatum("datum grid must span exactly [-R+delta, R-delta]")
    op = _Operator(x, density, m, p, cfg.reaction, cfg.eps_reg)

    snaps_t = np.asarray(_snapshot_grid(t_end, cfg.snapshots) if snapshot_times is None
                         else sorted(set(float(s) for s in snapshot_times) | {0.0}), dtype=float)
    snaps_t = snaps_t[snaps_t <= t_end]
    forced = None if step_times is None else np.asarray(step_times, dtype=float)

    u = datum.values[1:-1].copy()
    u_prev = None
    dt_prev = None
    t = 0.0
    dt = cfg.dt0
    full = lambda v: np.concatenate([[0.0], v, [0.0]])  # noqa: E731
    history = [(0.0, float(np.max(u, initial=0.0)), op.mass(datum.values), 0.0)]
    accepted_times = [0.0]
    snap_vals = [datum.values.copy()]
    snap_times = [0.0]
    next_snap = 1
    newton_its, rejections, steps = 0, 0, 0
    tau0 = local_existence_time(p, datum) if cfg.reaction else math.inf
    cap = min(cfg.blowup_threshold,
              ((p - 1) * RUNAWAY_STEPS * cfg.dt_min) ** (-1.0 / (p - 1)))
    status, bracket = GLOBAL, None
    failure = None
    forced_idx = 1

    while t < t_end * (1 - 1e-14):
        steps += 1
        if steps > cfg.max_steps:
            failure = "step budget exhausted"
            break
        # target time of this step
        if forced is not None and forced_idx < forced.size:
            target = forced[forced_idx]
            dt = target - t
        else:
            dt = min(dt, cfg.dt_max)
            target = t + dt
        if next_snap < snaps_t.size and target > snaps_t[next_snap] - 1e-14 * max(1.0, t_end):
            target = snaps_t[next_snap]
        target = min(target, t_end)
        dt = target - t

        sup = float(np.max(u, initial=0.0))
        if cfg.stepper == "explicit":
            lim = op.explicit_limit(u)
            if dt > lim:
                dt = lim
                target = t + dt
            u_new = np.maximum(u + dt * op.rhs(u), 0.0)
            its = 0
        else:
            if cfg.order == 2 and u_prev is not None and dt_prev:
                w = dt / dt_prev
                a0 = (1 + 2 * w) / (1 + w)
                rhs_old = (1 + w) * u - w * w / (1 + w) * u_prev
            else:
                a0, rhs_old = 1.0, u
            u_new, its = _newton(op, a0, rhs_old, dt, u, cfg.newton_tol, cfg.newton_max_iters)
        newton_its += its

        ok = u_new is not None and np.all(np.isfinite(u_new))
        if ok:
            change = float(np.max(np.abs(u_new - u)))
            ok = change <= cfg.rel_change_tol * max(sup, 1e-300) or sup == 0
        if not ok:
            rejections += 1
            if forced is not None and forced_idx < forced.size:
                # a forced step that fails is split; the shared grid stays a superset
                forced = np.insert(forced, forced_idx, t + 0.5 * dt)
                if 0.5 * dt >= cfg.dt_min:
                    continue
            dt *= 0.5
            if dt < cfg.dt_min:
                t_fail = t + 2 * dt
                if sup >= cap:
                    status = BLOWUP
                    bracket = _blowup_bracket(history, t, t_fail, p)
                else:
                    failure = (f"time step collapsed below dt_min at t={t:.6g} "
                               f"with sup={sup:.4g} < runaway level {cap:.4g}")
                break
            continue

        u_prev, dt_prev = u, dt
        u = u_new
        t = target
        accepted_times.append(t)
        if forced is not None:
            forced_idx += 1
        fu = full(u)
        history.append((t, float(np.max(u, initial=0.0)), op.mass(fu), dt))
        if next_snap < snaps_t.size and abs(t - snaps_t[next_snap]) <= 1e-12 * max(1.0, t_end):
            snap_vals.append(fu)
            snap_times.append(t)
            next_snap += 1
        if cfg.reaction and history[-1][1] >= cap:
            # the reaction time scale is now within RUNAWAY_STEPS * dt_min
            status = BLOWUP
            bracket = _blowup_bracket(history, t, t, p)
            break
        if forced is None and its <= 6 and change <= 0.5 * cfg.rel_change_tol * max(sup, 1e-300):
            dt = min(dt * cfg.growth, cfg.dt_max)
        elif forced is None:
            dt = min(dt, cfg.dt_max)

    hist = np.array(history, dtype=float)
    if status == BLOWUP and (not snap_times or snap_times[-1] < t):
        snap_vals.append(full(u))
        snap_times.append(t)
    diagnostics = {
        "steps_accepted": len(accepted_times) - 1,
        "steps_rejected": rejections,
        "newton_iterations": newton_its,
        "mean_newton_per_step": newton_its / max(1, steps),
        "h_min": float(np.min(np.diff(x))),
        "h_max": float(np.max(np.diff(x))),
        "local_existence_time": tau0,
        "runaway_level": cap,
        "stepper": f"{cfg.stepper}-order{cfg.order}",
    }
    if density.regime.tag == SLOW:
        diagnostics["note"] = ("slow-decay weight: the computed limit is the minimal "
                               "solution; other weak solutions may exist")
    result = SolveResult(status=status, t_end=t if status == GLOBAL else None, bracket=bracket,
                         history=hist, snapshot_times=np.array(snap_times),
                         snapshots=np.array(snap_vals), grid=x, delta=delta, m=m, p=p,
                         density=density, diagnostics=diagnostics,
                         step_times=np.array(accepted_times))
    if failure is not None:
        raise NewtonDivergence(failure, result)
    return result


def _blowup_bracket(history: list, t_last: float, t_fail: float, p: float) -> tuple[float, float]:
    """(last accepted time, upper estimate of the blow-up time).

    Near blow-up sup^(1-p) decays linearly to zero; the upper end is the
    later of the first failed time and the linear extrapolation of that
    quantity through the last accepted steps.
    """
    t_hi = t_fail
    rows = np.array(history[-4:], dtype=float)
    if rows.shape[0] >= 2 and np.all(rows[:, 1] > 0):
        y = rows[:, 1] ** (1 - p)
        slope = (y[-1] - y[0]) / (rows[-1, 0] - rows[0, 0]) if rows[-1, 0] > rows[0, 0] else 0.0
        if slope < 0:
            t_hi = max(t_hi, t_last - y[-1] / slope)
    return (float(t_last), float(max(t_hi, np.nextafter(t_last, math.inf))))


def minimal_solution(density: DensitySpec, m: float, p: float, u0: Callable,
                     deltas: Sequence[float] = (0.1, 0.05, 0.025, 0.0125),
                     cfg: SchemeConfig | None = None, t_end: float = 1.0,
                     tol: float = 1e-6, raise_on_violation: bool = True) -> tuple[SolveResult, dict]:
    """Solve on expanding intervals and check monotone convergence.

    All levels share one mesh: the mesh for the smallest delta with nodes
    inserted at every +-(R - delta_k).  The finest level runs first with
    adaptive steps; the coarser levels replay its time grid so that the
    discrete comparison principle applies exactly.
    """
    cfg = cfg or SchemeConfig()
    deltas = [float(d) for d in deltas]
    if any(b >= a for a, b in zip(deltas, deltas[1:])):
        raise ValueError("delta sequence must be strictly decreasing")
    R = density.R
    master = cfg.nodes(R, deltas[-1])
    master = insert_nodes(master, [s * (R - d) for d in deltas[:-1] for s in (-1, 1)])
    snaps = _snapshot_grid(t_end, cfg.snapshots)

    def level_grid(d: float) -> np.ndarray:
        edge = R - d
        return master[(master >= -edge - 1e-12) & (master <= edge + 1e-12)]

    finest = solve_regularized(density, m, p, u0, deltas[-1], cfg, t_end,
                               grid=level_grid(deltas[-1]), snapshot_times=snaps)
    results = {deltas[-1]: finest}
    for d in deltas[:-1]:
        results[d] = solve_regularized(density, m, p, u0, d, cfg, t_end, grid=level_grid(d),
                                       snapshot_times=snaps, step_times=finest.step_times)

    # compare on the nodes of the coarsest level, at the snapshots all levels reached
    common = level_grid(deltas[0])
    worst = 0.0
    where = None
    level_diffs = []
    for d_coarse, d_fine in zip(deltas, deltas[1:]):
        rc, rf = results[d_coarse], results[d_fine]
        ic = np.searchsorted(rc.grid, common)
        jf = np.searchsorted(rf.grid, common)
        n = min(len(rc.snapshot_times), len(rf.snapshot_times))
        diff_sup = 0.0
        for k in range(n):
            uc = rc.snapshots[k][ic]
            uf = rf.snapshots[k][jf]
            gap = uf - uc
            i = int(np.argmin(gap))
            if gap[i] < worst:
                worst = float(gap[i])
                where = (float(common[i]), float(rc.snapshot_times[k]), d_coarse, d_fine)
            diff_sup = max(diff_sup, float(np.max(np.abs(gap))))
        level_diffs.append(diff_sup)
    report = {
        "deltas": deltas,
        "monotone": worst >= -tol,
        "worst_decrease": worst,
        "worst_location": where,
        "level_sup_differences": level_diffs,
        "cauchy_difference": level_diffs[-1] if level_diffs else 0.0,
        "tol": tol,
        "statuses": {str(d): r.status for d, r in results.items()},
    }
    if worst < -tol and raise_on_violation:
        raise MonotonicityViolation(
            f"solution decreased by {-worst:.3g} under delta refinement", where)
    return finest, report


def grid_tolerance(grid: np.ndarray, values: np.ndarray) -> float:
    """Bound h^2 |f''| / 8 on the linear-interpolation error of nodal data."""
    finite = np.isfinite(values)
    if values.size < 3:
        return 0.0
    h = np.diff(grid)
    ok = finite[:-2] & finite[1:-1] & finite[2:]
    if not np.any(ok):
        return 0.0
    d2 = 2 * ((values[2:] - values[1:-1]) / h[1:] - (values[1:-1] - values[:-2]) / h[:-1]) \
        / (h[1:] + h[:-1])
    hmax = np.maximum(h[1:], h[:-1])
    return float(np.max(np.abs(d2[ok]) * hmax[ok] ** 2 / 8))


@dataclass
class ComparisonReport:
    orientation: str
    passed: bool
    margin: float
    arg_margin: tuple[float, float] | None
    tol: float
    support_ok: bool
    n_snapshots: int
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def compare_with_barrier(result: SolveResult, spec: BarrierSpec, orientation: str | None = None,
                         t_max: float | None = None, tol: float | None = None) -> ComparisonReport:
    """Pointwise ordering of the stored snapshots against a barrier.

    Super: min of (barrier - u); sub: min of (u - barrier).  Infinite barrier
    values impose no constraint.  Snapshots past the barrier's time domain,
    past a blow-up bracket or past `t_max` are skipped.
    """
    orientation = (orientation or spec.orientation).lower()
    if orientation not in (SUPER, SUB):
        raise ValueError(f"orientation must be super or sub, got {orientation}")
    x = result.grid
    notes = []
    limit = math.inf if t_max is None else t_max
    if spec.time.kind == BACKWARD:
        limit = min(limit, spec.T * (1 - 1e-9))
    if result.bracket is not None:
        limit = min(limit, result.bracket[0])
    idx = [k for k, t in enumerate(result.snapshot_times) if t <= limit]
    if not idx:
        raise WindowMismatch("no stored snapshot lies in the barrier's time window")
    worst, arg, tol_used, support_ok = math.inf, None, 0.0, True
    for k in idx:
        t = float(result.snapshot_times[k])
        u = result.snapshots[k]
        w = np.asarray(eval_barrier(spec, result.density, x, t), dtype=float)
        step_tol = grid_tolerance(x, w) if tol is None else tol
        tol_used = max(tol_used, step_tol)
        gap = (w - u) if orientation == SUPER else (u - w)
        gap = np.where(np.isfinite(gap), gap, math.inf)
        i = int(np.argmin(gap))
        if gap[i] < worst:
            worst, arg = float(gap[i]), (float(x[i]), t)
        if orientation == SUPER:
            outside = w <= 0
            if np.any(u[outside] > step_tol):
                support_ok = False
        else:
            inside = w > step_tol
            if np.any(u[inside] <= 0):
                support_ok = False
        if orientation == SUB and (w[0] > 0 or w[-1] > 0):
            if "sub-barrier positive on the Dirichlet boundary" not in notes:
                notes.append("sub-barrier positive on the Dirichlet boundary")
    if orientation == SUB and notes:
        notes.append("comparison on I_delta needs the sub-barrier to vanish at its ends")
    passed = worst >= -tol_used and support_ok
    return ComparisonReport(orientation, bool(passed), worst, arg, tol_used, support_ok,
                            len(idx), notes)


def barenblatt(x, t: float, m: float, C: float):
    """Self-similar source solution of u_t = (u^m)_xx in one dimension."""
    alpha = 1.0 / (m + 1)
    k = alpha * (m - 1) / (2 * m)
    x = np.asarray(x, dtype=float)
    core = C - k * x * x * t ** (-2 * alpha)
    return t ** (-alpha) * np.maximum(core, 0.0) ** (1.0 / (m - 1))


def barenblatt_front(t: float, m: float, C: float) -> float:
    alpha = 1.0 / (m + 1)
    k = alpha * (m - 1) / (2 * m)
    return math.sqrt(C / k) * t ** alpha

