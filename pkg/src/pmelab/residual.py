"""Residual N[w] = w_t - (w^m)_xx / rho - w^p of a barrier, and its sign checks.

A supersolution needs N >= 0 on every smooth branch plus a concave kink of
w^m at each interface; a subsolution needs N <= 0 plus a convex kink.
`verify_sign` samples the smooth branches; `check_interface` handles the
kinks.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .barrier import (BACKWARD, SUPER, BarrierSpec, barrier_derivatives,
                      bracket, eval_barrier, support_edge)
from .density import FAST, SLOW, DensitySpec, eval_density
from .errors import EmptyRegion, StencilCrossesInterface

REGION_TAGS = ("A", "S1", "S2", "S1S2", "SlowInterior", "Support")


@dataclass(frozen=True)
class RegionSpec:
    """Where the sign is sampled.

    A            every smooth branch, bracket in (0, 1)
    S1 / S2      collar / core branches, bracket in (0, 1)
    S1S2         union of S1 and S2
    SlowInterior whole interval minus x=0 (no bracket)
    Support      every smooth branch, bracket > 0
    """

    tag: str
    t0: float
    t1: float

    def __post_init__(self):
        if self.tag not in REGION_TAGS:
            raise ValueError(f"unknown region {self.tag!r}; expected one of {REGION_TAGS}")
        if not self.t1 >= self.t0:
            raise ValueError("region needs t1 >= t0")


@dataclass
class SignReport:
    family: str
    orientation: str
    region: str
    window: tuple[float, float]
    passed: bool
    extreme_residual: float
    arg_extreme: tuple[float, float]
    worst_normalized: float
    arg_worst: tuple[float, float]
    n_points: int
    tol: float
    bracket_sign: int
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def analytic_residual(spec: BarrierSpec, density: DensitySpec, x, t, side=None):
    w_t, _, wm_xx = barrier_derivatives(spec, density, x, t, side=side)
    w = eval_barrier(spec, density, x, t)
    rho = eval_density(density, x)
    return w_t - wm_xx / rho - np.asarray(w) ** spec.p


def _residual_terms(spec, density, x, t):
    w_t, _, wm_xx = barrier_derivatives(spec, density, x, t)
    w = np.asarray(eval_barrier(spec, density, x, t))
    diff = wm_xx / eval_density(density, x)
    react = w ** spec.p
    return w_t - diff - react, np.abs(w_t) + np.abs(diff) + np.abs(react)


def smooth_pieces(spec: BarrierSpec) -> list[tuple[float, float, str]]:
    """Open intervals on which the barrier formula is smooth, tagged collar/core."""
    R = spec.R
    kinks = sorted(spec.kinks)
    if kinks == [0.0]:
        return [(-R, 0.0, "whole"), (0.0, R, "whole")]
    e = kinks[-1]
    return [(-R, -e, "collar"), (-e, e, "core"), (e, R, "collar")]


def _stencil_ok(spec: BarrierSpec, x: float, t: float, h: float, dt: float) -> None:
    R = spec.R
    if abs(x) + 2 * h >= R:
        raise StencilCrossesInterface("space stencil reaches the boundary")
    for k in spec.kinks:
        if x - 2 * h <= k <= x + 2 * h:
            raise StencilCrossesInterface(f"space stencil crosses the interface x={k:g}")
    tf = spec.time
    if tf.kind == BACKWARD and t + dt >= spec.T:
        raise StencilCrossesInterface("time stencil reaches the blow-up time T")
    if tf.kind != BACKWARD and spec.T + t - dt <= 0:
        raise StencilCrossesInterface("time stencil leaves the domain of the time factors")
    if spec.regime.tag != SLOW:
        xs = x + h * np.arange(-2, 3)
        ts = np.array([t - dt, t, t + dt])
        B = np.concatenate([bracket(spec, xs, t), bracket(spec, x, ts)])
        if np.any(~(B > 0)):
            raise StencilCrossesInterface("stencil leaves the support of the barrier")


def fd_derivatives(spec: BarrierSpec, density: DensitySpec, x: float, t: float,
                   h: float, dt: float) -> tuple[float, float, float]:
    """Central-difference (w_t, (w^m)_x, (w^m)_xx)."""
    _stencil_ok(spec, x, t, h, dt)
    W = lambda y: float(eval_barrier(spec, density, y, t)) ** spec.m  # noqa: E731
    w_t = (float(eval_barrier(spec, density, x, t + dt))
           - float(eval_barrier(spec, density, x, t - dt))) / (2 * dt)
    wp, w0, wm = W(x + h), W(x), W(x - h)
    return w_t, (wp - wm) / (2 * h), (wp - 2 * w0 + wm) / (h * h)


def fd_residual(spec: BarrierSpec, density: DensitySpec, x: float, t: float,
                h: float, dt: float) -> float:
    w_t, _, wm_xx = fd_derivatives(spec, density, x, t, h, dt)
    w = float(eval_barrier(spec, density, x, t))
    return w_t - wm_xx / float(eval_density(density, x)) - w ** spec.p


def local_scales(spec: BarrierSpec, x: float, t: float) -> tuple[float, float]:
    """Distance to the nearest kink/boundary/support edge, and to the time-domain edge."""
    L = spec.R - abs(x)
    for k in spec.kinks:
        L = min(L, abs(x - k))
    if spec.regime.tag != SLOW:
        # the bracket is monotone along rays, so probe for its zero
        xs = x + np.linspace(-L, L, 401)
        xs = xs[np.abs(xs) < spec.R]
        B = bracket(spec, xs, t)
        bad = xs[~(B > 0)]
        if bad.size:
            L = min(L, float(np.min(np.abs(bad - x))))
    tau = spec.T - t if spec.time.kind == BACKWARD else spec.T + t
    return L, tau


def richardson_check(spec: BarrierSpec, density: DensitySpec, x: float, t: float,
                     levels: int = 7, frac: float = 0.25, noise_factor: float = 10.0, fit: int = 3) -> dict:
    """FD residual error against the closed form over halving steps.

    Levels whose error is within `noise_factor` of the estimated rounding
    floor are dropped; at least two levels are always kept.  Returns the
    log-log slope of the error over the last `fit` kept levels, the per-level errors,
    and the relative error of the Richardson value (4 N(h/2) - N(h)) / 3 at
    the finest kept pair.
    """
    L, tau = local_scales(spec, x, t)
    h0, dt0 = frac * L / 2, frac * tau
    if spec.regime.tag != SLOW:
        # keep the time stencil well inside a moving support
        B0 = float(bracket(spec, x, t))
        while min(float(bracket(spec, x, t - dt0)), float(bracket(spec, x, t + dt0))) < 0.5 * B0:
            dt0 *= 0.5
    exact = float(analytic_residual(spec, density, x, t))
    _, scale = _residual_terms(spec, density, np.asarray(x), np.asarray(t))
    scale = max(float(scale), abs(exact), 1e-300)
    w = float(eval_barrier(spec, density, x, t))
    rho = float(eval_density(density, x))
    hs, errs, vals, floors = [], [], [], []
    for k in range(levels):
        h, dt = h0 * 2.0 ** -k, dt0 * 2.0 ** -k
        v = fd_residual(spec, density, x, t, h, dt)
        hs.append(h)
        vals.append(v)
        errs.append(abs(v - exact))
        floors.append(np.finfo(float).eps * (4 * w ** spec.m / (h * h * rho) + w / dt + scale))
    keep = 2
    while keep < levels and errs[keep] > noise_factor * floors[keep]:
        keep += 1
    first = max(0, keep - fit)
    errs_arr = np.maximum(np.array(errs[first:keep]), 1e-300)
    slope = float(np.polyfit(np.log(hs[first:keep]), np.log(errs_arr), 1)[0])
    rich = (4 * vals[keep - 1] - vals[keep - 2]) / 3
    return {"x": x, "t": t, "exact": exact, "h": hs, "errors": errs, "slope": slope,
            "levels_used": keep, "richardson_rel_error": abs(rich - exact) / scale,
            "scale": scale}


def admissible_points(spec: BarrierSpec, n: int, rng: np.random.Generator,
                      gap: float = 0.02, t_window: tuple[float, float] | None = None
                      ) -> list[tuple[float, float]]:
    """Random (x, t) inside the support, at least gap*R from kinks and the support edge.

    The default window is [0, 0.9 T] for backward time factors and [0, T]
    otherwise.
    """
    if t_window is None:
        t_window = (0.0, 0.9 * spec.T if spec.time.kind == BACKWARD else spec.T)
    min_gap = gap * spec.R
    out: list[tuple[float, float]] = []
    for _ in range(1000 * n):
        if len(out) == n:
            break
        t = float(rng.uniform(*t_window))
        edge = support_edge(spec, t)
        edge = spec.R if edge is None else min(edge, spec.R)
        x = float(rng.uniform(-edge, edge))
        dists = [abs(x - k) for k in spec.kinks] + [edge - abs(x)]
        if spec.regime.tag != SLOW and not float(bracket(spec, x, t)) > 0:
            continue
        if min(dists) >= min_gap:
            out.append((x, t))
    if len(out) < n:
        raise EmptyRegion(f"found only {len(out)} of {n} admissible points")
    return out


def _sample_x(spec: BarrierSpec, nx: int, region: str) -> np.ndarray:
    pieces = smooth_pieces(spec)
    if region == "S1":
        pieces = [pc for pc in pieces if pc[2] == "collar"]
    elif region == "S2":
        pieces = [pc for pc in pieces if pc[2] == "core"]
    total = sum(hi - lo for lo, hi, _ in pieces)
    xs = []
    for lo, hi, _ in pieces:
        n = max(2, int(round(nx * (hi - lo) / total)))
        edges = np.linspace(lo, hi, n + 1)
        xs.append(0.5 * (edges[:-1] + edges[1:]))
    return np.concatenate(xs)


def verify_sign(spec: BarrierSpec, density: DensitySpec, region: RegionSpec,
                grid: tuple[int, int] = (400, 100), tol: float = 1e-8,
                dump: list | None = None) -> SignReport:
    """Sample N[w] on midpoints of a tensor grid over `region`.

    `tol` is relative to the local term scale |w_t| + |(w^m)_xx/rho| + |w^p|.
    If `dump` is a list, (x, t, residual, bracket) rows are appended to it.
    """
    nx, nt = grid
    xs = _sample_x(spec, nx, region.tag)
    if spec.time.kind == BACKWARD and region.t1 >= spec.T:
        raise ValueError("backward barrier window must end before T")
    if region.t1 > region.t0:
        te = np.linspace(region.t0, region.t1, nt + 1)
        ts = 0.5 * (te[:-1] + te[1:])
    else:
        ts = np.array([region.t0])
    X, Tm = np.meshgrid(xs, ts, indexing="ij")
    X, Tm = X.ravel(), Tm.ravel()
    notes = []
    if spec.regime.tag == SLOW:
        B = np.full(X.shape, np.nan)
        mask = np.ones(X.shape, dtype=bool)
    else:
        B = bracket(spec, X, Tm)
        if region.tag in ("A", "S1", "S2", "S1S2"):
            mask = (B > 0) & (B < 1)
        else:
            mask = B > 0
    if not np.any(mask):
        raise EmptyRegion(f"region {region.tag} is empty on [{region.t0}, {region.t1}]")
    X, Tm, Bm = X[mask], Tm[mask], B[mask]
    if region.tag in ("A", "S1", "S2", "S1S2"):
        assert np.all((Bm > 0) & (Bm < 1))
    N, scale = _residual_terms(spec, density, X, Tm)
    sgn = 1.0 if spec.orientation == SUPER else -1.0
    norm = sgn * N / np.maximum(scale, 1e-300)
    i_norm = int(np.argmin(norm))
    i_raw = int(np.argmin(sgn * N))
    passed = bool(norm[i_norm] >= -tol)
    if dump is not None:
        dump.extend(zip(X.tolist(), Tm.tolist(), N.tolist(), Bm.tolist()))
    if spec.regime.tag == FAST:
        notes.append(f"bracket exponent sign {spec.bracket_sign:+d}")
    if spec.profile is not None and hasattr(spec.profile, "core_sign"):
        notes.append("log profile collar taken as R-eps < |x| < R; core sign "
                     f"{spec.log_core_sign:+d}")
    if region.tag == "S1S2":
        n1 = int(np.sum(np.abs(X) > (spec.R - spec.eps)))
        if n1 == 0:
            notes.append("collar part of the region is empty on this window")
    return SignReport(
        family=spec.family, orientation=spec.orientation, region=region.tag,
        window=(region.t0, region.t1), passed=passed,
        extreme_residual=float(N[i_raw]), arg_extreme=(float(X[i_raw]), float(Tm[i_raw])),
        worst_normalized=float(sgn * norm[i_norm]),
        arg_worst=(float(X[i_norm]), float(Tm[i_norm])),
        n_points=int(X.size), tol=tol, bracket_sign=spec.bracket_sign, notes=notes)


def compare_bracket_conventions(spec: BarrierSpec, density: DensitySpec, region: RegionSpec,
                                grid: tuple[int, int] = (400, 100)) -> dict:
    """Run verify_sign with both exponent signs and name the one(s) that pass."""
    out = {}
    for s in (1, -1):
        try:
            rep = verify_sign(spec.with_(bracket_sign=s), density, region, grid)
            out[s] = rep
        except EmptyRegion as exc:
            out[s] = exc
    passing = [s for s, r in out.items() if isinstance(r, SignReport) and r.passed]
    declared = spec.bracket_sign
    if declared in passing:
        note = f"declared sign {declared:+d} passes"
    elif passing:
        note = (f"declared sign {declared:+d} fails; sign {passing[0]:+d} passes")
    else:
        note = "neither exponent sign passes"
    return {"reports": out, "passing": passing, "note": note}


def _one_sided(spec, density, x0, t, side):
    w_t, flux, _ = barrier_derivatives(spec, density, np.array(x0), t, side=side)
    prof = spec.profile
    if prof is None:
        w = eval_barrier(spec, density, x0, t)
    else:
        P = prof.derivs(np.array(x0), side=side)[0]
        B = 1.0 - P * spec.time.eta(t) / spec.a
        w = spec.C * spec.time.zeta(t) * B ** (spec.bracket_sign / (spec.m - 1))
    return float(w), float(flux)


def check_interface(spec: BarrierSpec, density: DensitySpec, t_samples, rtol: float = 1e-10) -> dict:
    """Value continuity and the flux-jump sign at every kink of the barrier.

    A supersolution needs (w^m)_x to jump down across the kink (left-to-right),
    a subsolution needs it to jump up; equal one-sided fluxes satisfy both.
    """
    entries = []
    ok = True
    for t in np.atleast_1d(np.asarray(t_samples, dtype=float)):
        for x0 in spec.kinks:
            entry = {"x": float(x0), "t": float(t)}
            if spec.C == 0:
                entry.update(value_gap=0.0, flux_left=0.0, flux_right=0.0, jump=0.0,
                             passed=True, note="zero barrier")
                entries.append(entry)
                continue
            if spec.regime.tag != SLOW:
                Bl = float(bracket(spec, np.array(x0), t, side="left"))
                Br = float(bracket(spec, np.array(x0), t, side="right"))
                if not (Bl > 0 and Br > 0):
                    note = ("outside the support" if spec.bracket_sign > 0
                            else "barrier infinite here, no constraint")
                    entry.update(value_gap=0.0, flux_left=0.0, flux_right=0.0, jump=0.0,
                                 passed=True, note=note)
                    entries.append(entry)
                    continue
            wl, fl = _one_sided(spec, density, x0, t, "left")
            wr, fr = _one_sided(spec, density, x0, t, "right")
            vscale = max(abs(wl), abs(wr), 1e-300)
            fscale = max(abs(fl), abs(fr), 1e-300)
            gap = abs(wl - wr) / vscale
            jump = fr - fl
            if spec.orientation == SUPER:
                flux_ok = jump <= rtol * fscale
            else:
                flux_ok = jump >= -rtol * fscale
            passed = bool(gap <= rtol and flux_ok)
            ok &= passed
            entry.update(value_left=wl, value_right=wr, value_gap=gap, flux_left=fl,
                         flux_right=fr, jump=jump, relative_jump=jump / fscale,
                         passed=passed)
            entries.append(entry)
    return {"family": spec.family, "orientation": spec.orientation, "passed": bool(ok),
            "entries": entries}
