"""Weights rho(x) on (-R, R) with a power-type singularity at the boundary.

The canonical weight is rho(x) = (R - |x|)^(-q) on the whole interval.  User
weights are given as grid samples; they are stored through the normalized
factor g(x) = rho(x) (R - |x|)^q, which is interpolated linearly and held
constant outside the sampled range, so the boundary singularity is reproduced
exactly.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainBoundary, InvalidDensity, NegativeExponent

FAST, CRITICAL, SLOW = "Fast", "Critical", "Slow"


@dataclass(frozen=True)
class Regime:
    """Decay regime of the weight: Fast (q>2), Critical (q=2) or Slow (q<2)."""

    tag: str
    b: float | None = None
    d: float | None = None


def classify_regime(q: float) -> Regime:
    if q < 0:
        raise NegativeExponent(f"singularity exponent must be >= 0, got {q}")
    if q > 2:
        return Regime(FAST, b=q - 2.0)
    if q == 2:
        return Regime(CRITICAL)
    return Regime(SLOW)


@dataclass(frozen=True, eq=False)
class DensitySpec:
    R: float = 1.0
    q: float = 0.0
    c1: float = 1.0
    c2: float = 1.0
    eps0: float = 0.5
    profile: str = "power"
    symmetric: bool = True
    table_x: np.ndarray | None = field(default=None, repr=False)
    table_g: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        for name in ("R", "q", "c1", "c2", "eps0"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not self.R > 0:
            raise InvalidDensity(f"R must be positive, got {self.R}")
        if self.q < 0:
            raise NegativeExponent(f"q must be >= 0, got {self.q}")
        if not 0 < self.c1 <= self.c2 < np.inf:
            raise InvalidDensity(f"need 0 < c1 <= c2 < inf, got c1={self.c1}, c2={self.c2}")
        if not 0 < self.eps0 < self.R:
            raise InvalidDensity(f"need 0 < eps0 < R, got eps0={self.eps0}")
        if self.profile != "power" and self.table_x is None:
            raise InvalidDensity(f"profile {self.profile!r} needs table samples")

    @property
    def regime(self) -> Regime:
        return classify_regime(self.q)


def power_density(R: float = 1.0, q: float = 0.0, eps0: float | None = None) -> DensitySpec:
    """Canonical weight (R-|x|)^(-q) with c1 = c2 = 1."""
    return DensitySpec(R=R, q=q, c1=1.0, c2=1.0, eps0=0.5 * R if eps0 is None else eps0)


def table_density(x, rho, *, R: float, q: float, c1: float, c2: float, eps0: float,
                  symmetric: bool = True, name: str = "table") -> DensitySpec:
    """Build a weight from samples and validate it against the declared constants."""
    x = np.asarray(x, dtype=float)
    rho = np.asarray(rho, dtype=float)
    if x.ndim != 1 or x.shape != rho.shape or x.size < 2:
        raise InvalidDensity("table needs two equal-length 1D columns with >= 2 rows")
    if np.any(np.abs(x) >= R):
        raise InvalidDensity("table samples must lie strictly inside (-R, R)")
    if not np.all(np.isfinite(rho)) or np.any(rho <= 0):
        raise InvalidDensity("table weight must be finite and positive")
    order = np.argsort(x)
    x, rho = x[order], rho[order]
    if np.any(np.diff(x) <= 0):
        raise InvalidDensity("table abscissae must be distinct")
    # samples given only for x >= 0 are mirrored when the weight is symmetric
    g = rho * (R - np.abs(x)) ** q
    spec = DensitySpec(R=R, q=q, c1=c1, c2=c2, eps0=eps0, profile=name,
                       symmetric=symmetric, table_x=x, table_g=g)
    _validate_table(spec, folded=symmetric and bool(np.all(x >= 0)))
    return spec


def load_table(path: str | Path, **kwargs) -> DensitySpec:
    """Read a two-column ``x,rho`` CSV file (header optional)."""
    xs, rs = [], []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                xs.append(float(row[0]))
                rs.append(float(row[1]))
            except ValueError:
                if xs:
                    raise InvalidDensity(f"bad row in {path}: {row}")
    return table_density(xs, rs, name=f"table:{path}", **kwargs)


def _folded(spec: DensitySpec) -> bool:
    return spec.symmetric and spec.table_x is not None and bool(np.all(spec.table_x >= 0))


def _normalized_factor(spec: DensitySpec, x: np.ndarray) -> np.ndarray:
    if spec.table_x is None:
        return np.ones_like(x)
    xi = np.abs(x) if _folded(spec) else x
    return np.interp(xi, spec.table_x, spec.table_g)


def _validate_table(spec: DensitySpec, folded: bool) -> None:
    R = spec.R
    n = 20001
    collar = np.concatenate([np.linspace(-R + 1e-9 * R, -R + spec.eps0, n),
                             np.linspace(R - spec.eps0, R - 1e-9 * R, n)])
    g = _normalized_factor(spec, collar)
    tol = 1e-12 * spec.c2
    if np.any(g < spec.c1 - tol) or np.any(g > spec.c2 + tol):
        bad = collar[np.argmax((g < spec.c1 - tol) | (g > spec.c2 + tol))]
        raise InvalidDensity(f"collar sandwich violated near x={bad:.6g}")
    if spec.symmetric and not folded:
        xs = np.linspace(0, R * (1 - 1e-9), n)
        gp, gm = _normalized_factor(spec, xs), _normalized_factor(spec, -xs)
        if np.max(np.abs(gp - gm) / np.maximum(np.abs(gp), 1e-300)) > 1e-9:
            raise InvalidDensity("weight declared symmetric but samples are not even")


def eval_density(spec: DensitySpec, x):
    """rho(x); scalar in, scalar out, arrays elementwise."""
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) >= spec.R) or np.any(np.isnan(xa)):
        raise DomainBoundary(f"weight evaluated at |x| >= R={spec.R}")
    dist = spec.R - np.abs(xa)
    if spec.q == 0:
        val = np.ones_like(dist)
    else:
        val = dist ** (-spec.q)
    if spec.table_x is not None:
        val = val * _normalized_factor(spec, xa)
    return float(val) if np.ndim(val) == 0 else val


def uniform_bounds(spec: DensitySpec, eps0: float, rtol: float = 1e-6,
                   max_levels: int = 12) -> tuple[float, float]:
    """Min and max of rho on [-R+eps0, R-eps0] by grid refinement."""
    if not 0 < eps0 < spec.R:
        raise ValueError(f"need 0 < eps0 < R, got {eps0}")
    half = spec.R - eps0
    n = 1025
    prev = None
    extra = np.array([0.0, -half, half])
    if spec.table_x is not None:
        tx = spec.table_x[np.abs(spec.table_x) <= half]
        extra = np.concatenate([extra, tx, -tx])
    for _ in range(max_levels):
        xs = np.concatenate([np.linspace(-half, half, n), extra])
        r = eval_density(spec, xs)
        cur = (float(np.min(r)), float(np.max(r)))
        if prev is not None and all(abs(c - p) <= rtol * abs(c) for c, p in zip(cur, prev)):
            return cur
        prev = cur
        n = 2 * n - 1
    return prev


def collar_constants(spec: DensitySpec, eps: float) -> tuple[float, float]:
    """Sandwich constants valid on the collar R-eps < |x| < R.

    For eps <= eps0 these are the declared (c1, c2).  A wider collar also
    covers part of the core, where the constants are widened by sampling.
    """
    if eps <= spec.eps0:
        return spec.c1, spec.c2
    R = spec.R
    xs = np.linspace(R - eps, R - spec.eps0, 4097)
    xs = np.concatenate([xs, -xs])
    g = eval_density(spec, xs) * (R - np.abs(xs)) ** spec.q
    return min(spec.c1, float(np.min(g))), max(spec.c2, float(np.max(g)))
