"""Explicit barrier functions for u_t = (u^m)_xx / rho + u^p.

Five families are provided, keyed by decay regime and orientation:

* fast super / fast sub:   C zeta(t) [1 - S(x) eta(t)/a]_+^(s/(m-1))
* critical super:          same bracket with the profile (R-|x|)^(-delta)
* critical sub:            same bracket with a logarithmic profile
* slow super:              C zeta(t) (R-|x|)^(d/m)

Here S is the boundary-singular profile built from (R-|x|)^(-b), glued C^1 to a
quadratic core.  All derivatives come from one differentiation routine
(`_bracket_terms`) so both exponent signs s = +1 and s = -1 share the same
audited algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .density import CRITICAL, FAST, SLOW, DensitySpec, Regime, classify_regime
from .errors import (BracketNonpositive, DomainBoundary, OnBranchInterface,
                     TimeOutOfDomain)

SUPER, SUB = "super", "sub"
FORWARD, BACKWARD, GROWTH = "forward", "backward", "growth"

FAMILIES = {(FAST, SUPER), (FAST, SUB), (CRITICAL, SUPER), (CRITICAL, SUB), (SLOW, SUPER)}


# ---------------------------------------------------------------- profiles


def _side_sign(x: np.ndarray, side: str | None) -> np.ndarray:
    """sign(x), with the sign at x=0 chosen by `side` (left -> -1, right -> +1)."""
    sg = np.sign(x)
    if side is not None:
        sg = np.where(x == 0, -1.0 if side == "left" else 1.0, sg)
    return sg


def _outer_mask(x: np.ndarray, edge: float, side: str | None) -> np.ndarray:
    """Points handled by the collar formulas; interface points need a side."""
    ax = np.abs(x)
    on = ax == edge
    if np.any(on) and side is None:
        raise OnBranchInterface(f"point on the interface |x|={edge:g}; pass side='left' or 'right'")
    if side == "right":
        tie = on & (x > 0)
    elif side == "left":
        tie = on & (x < 0)
    else:
        tie = np.zeros_like(on)
    return (ax > edge) | tie


@dataclass(frozen=True)
class ProfileFast:
    """(R-|x|)^(-b) on the collar, C^1 quadratic A0 + A2 x^2 on the core."""

    R: float
    eps: float
    b: float

    @property
    def edge(self) -> float:
        return self.R - self.eps

    @property
    def coefficients(self) -> tuple[float, float]:
        R, e, b = self.R, self.eps, self.b
        a0 = (2 * e - b * (R - e)) / (2 * e ** (b + 1))
        a2 = b / (2 * e ** (b + 1) * (R - e))
        return a0, a2

    @property
    def kinks(self) -> tuple[float, ...]:
        return (-self.edge, self.edge)

    def derivs(self, x, side=None):
        x = np.asarray(x, dtype=float)
        a0, a2 = self.coefficients
        outer = _outer_mask(x, self.edge, side)
        with np.errstate(divide="ignore", invalid="ignore"):
            dist = self.R - np.abs(x)
            sg = _side_sign(x, side)
            b = self.b
            P = np.where(outer, dist ** (-b), a0 + a2 * x * x)
            dP = np.where(outer, sg * b * dist ** (-b - 1), 2 * a2 * x)
            d2P = np.where(outer, b * (b + 1) * dist ** (-b - 2), 2 * a2 * np.ones_like(x))
        return P, dP, d2P


@dataclass(frozen=True)
class ProfileCriticalLog:
    """log(R-|x|) on the collar, quadratic core.

    core_sign=+1 uses ((R-eps)^2 - x^2), which is the C^1 gluing; core_sign=-1
    uses (x^2 - (R-eps)^2), which matches in value only.
    """

    R: float
    eps: float
    core_sign: int = 1

    @property
    def edge(self) -> float:
        return self.R - self.eps

    @property
    def kinks(self) -> tuple[float, ...]:
        return (-self.edge, self.edge)

    def derivs(self, x, side=None):
        x = np.asarray(x, dtype=float)
        outer = _outer_mask(x, self.edge, side)
        R, e, s = self.R, self.eps, self.core_sign
        den = 2 * e * (R - e)
        with np.errstate(divide="ignore", invalid="ignore"):
            dist = R - np.abs(x)
            sg = _side_sign(x, side)
            P = np.where(outer, np.log(dist), s * ((R - e) ** 2 - x * x) / den + np.log(e))
            dP = np.where(outer, -sg / dist, -2 * s * x / den)
            d2P = np.where(outer, -1.0 / dist ** 2, -2 * s / den * np.ones_like(x))
        return P, dP, d2P


@dataclass(frozen=True)
class ProfilePower:
    """(R-|x|)^(-delta) on the whole interval; not differentiable at x=0."""

    R: float
    delta: float

    @property
    def kinks(self) -> tuple[float, ...]:
        return (0.0,)

    def derivs(self, x, side=None):
        x = np.asarray(x, dtype=float)
        if side is None and np.any(x == 0):
            raise OnBranchInterface("power profile has a kink at x=0; pass a side")
        d = self.delta
        with np.errstate(divide="ignore", invalid="ignore"):
            dist = self.R - np.abs(x)
            sg = _side_sign(x, side)
            return dist ** (-d), sg * d * dist ** (-d - 1), d * (d + 1) * dist ** (-d - 2)


def profile_fast(prof: ProfileFast, x):
    """Value of the fast profile; +inf at |x| = R."""
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > prof.R):
        raise DomainBoundary("profile evaluated outside [-R, R]")
    P = prof.derivs(xa, side="left")[0]
    return float(P) if P.ndim == 0 else P


def profile_critical_log(prof: ProfileCriticalLog, x):
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) >= prof.R):
        raise DomainBoundary("log profile is singular at |x| = R")
    P = prof.derivs(xa, side="left")[0]
    return float(P) if P.ndim == 0 else P


# ------------------------------------------------------------ time factors


@dataclass(frozen=True)
class TimeFactors:
    """zeta(t), eta(t) and their derivatives.

    forward:  zeta = (T+t)^-alpha, eta = (T+t)^-beta
    backward: zeta = (T-t)^-alpha, eta = (T-t)^beta, valid for t < T
    growth:   zeta = (T+t)^alpha,  eta = 1
    """

    kind: str
    alpha: float
    beta: float
    T: float

    def _tau(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == BACKWARD:
            if np.any(t >= self.T):
                raise TimeOutOfDomain(f"backward factors need t < T={self.T}")
            return self.T - t
        tau = self.T + t
        if np.any(tau <= 0):
            raise TimeOutOfDomain(f"forward factors need t > -T={-self.T}")
        return tau

    def zeta(self, t):
        tau = self._tau(t)
        return tau ** self.alpha if self.kind == GROWTH else tau ** (-self.alpha)

    def dzeta(self, t):
        tau = self._tau(t)
        if self.kind == FORWARD:
            return -self.alpha * tau ** (-self.alpha - 1)
        if self.kind == BACKWARD:
            return self.alpha * tau ** (-self.alpha - 1)
        return self.alpha * tau ** (self.alpha - 1)

    def eta(self, t):
        tau = self._tau(t)
        if self.kind == FORWARD:
            return tau ** (-self.beta)
        if self.kind == BACKWARD:
            return tau ** self.beta
        return np.ones_like(tau)

    def deta(self, t):
        tau = self._tau(t)
        if self.kind == FORWARD:
            return -self.beta * tau ** (-self.beta - 1)
        if self.kind == BACKWARD:
            return -self.beta * tau ** (self.beta - 1)
        return np.zeros_like(tau)


# ----------------------------------------------------------------- barrier


@dataclass(frozen=True)
class BarrierSpec:
    regime: Regime
    orientation: str
    C: float
    a: float
    T: float
    m: float
    p: float
    R: float = 1.0
    eps: float | None = None
    delta_exp: float | None = None
    d_exp: float | None = None
    bracket_sign: int = 1
    alpha: float = 0.0
    beta: float = 0.0
    log_core_sign: int = 1
    q: float | None = None

    def __post_init__(self):
        if (self.regime.tag, self.orientation) not in FAMILIES:
            raise ValueError(f"no barrier family for {self.regime.tag}/{self.orientation}")
        if not (self.m > 1 and self.p > 1):
            raise ValueError("need m > 1 and p > 1")
        if self.C < 0 or not self.a > 0 or not self.T > 0:
            raise ValueError("need C >= 0, a > 0, T > 0")
        if self.bracket_sign not in (1, -1):
            raise ValueError("bracket_sign must be +1 or -1")
        tag = self.regime.tag
        if tag == FAST or (tag == CRITICAL and self.orientation == SUB):
            if self.eps is None or not 0 < self.eps < self.R:
                raise ValueError(f"collar width must lie in (0, R), got {self.eps}")
        if tag == FAST and self.orientation == SUB:
            bound = self.regime.b * self.R / (self.regime.b + 2)
            if not self.eps < bound:
                raise ValueError(f"blow-up barrier needs eps < bR/(b+2) = {bound:g}")
        if tag == CRITICAL and self.orientation == SUPER:
            if self.delta_exp is None or not self.delta_exp > 0:
                raise ValueError("critical supersolution needs delta_exp > 0")
        if tag == SLOW:
            q = 0.0 if self.q is None else self.q
            if self.d_exp is None or not 0 < self.d_exp < min(2 - q, 1):
                raise ValueError(f"slow barrier needs 0 < d < min(2-q, 1), got {self.d_exp}")

    @property
    def family(self) -> str:
        return f"{self.regime.tag.lower()}-{self.orientation}"

    @property
    def time(self) -> TimeFactors:
        tag = self.regime.tag
        if tag == SLOW:
            kind = GROWTH
        elif self.orientation == SUPER:
            kind = FORWARD
        else:
            kind = BACKWARD
        return TimeFactors(kind, self.alpha, self.beta, self.T)

    @property
    def profile(self):
        tag = self.regime.tag
        if tag == FAST:
            return ProfileFast(self.R, self.eps, self.regime.b)
        if tag == CRITICAL and self.orientation == SUPER:
            return ProfilePower(self.R, self.delta_exp)
        if tag == CRITICAL:
            return ProfileCriticalLog(self.R, self.eps, self.log_core_sign)
        return None

    @property
    def kinks(self) -> tuple[float, ...]:
        prof = self.profile
        return prof.kinks if prof is not None else (0.0,)

    def with_(self, **changes) -> "BarrierSpec":
        return replace(self, **changes)


def make_barrier(regime: str | Regime, orientation: str, *, m: float, p: float, C: float,
                 a: float = 1.0, T: float = 1.0, q: float | None = None, R: float = 1.0,
                 eps: float | None = None, delta_exp: float | None = None,
                 d_exp: float | None = None, bracket_sign: int | None = None,
                 alpha: float | None = None, beta: float | None = None,
                 log_core_sign: int = 1) -> BarrierSpec:
    """Build a barrier with the time exponents of its family filled in.

    Defaults: alpha = 1/(p-1) everywhere except the slow family (alpha = 0 for
    p > m, user-chosen growth exponent for p < m); beta = (p-m)/(p-1), except
    the fast subsolution where beta = (m-p)/(p-1).  The bracket exponent sign
    defaults to -1 for the fast supersolution and +1 otherwise.
    """
    if isinstance(regime, Regime):
        reg = regime
    else:
        tag = {"fast": FAST, "critical": CRITICAL, "slow": SLOW}[regime.lower()]
        if tag == FAST:
            if q is None:
                raise ValueError("fast barriers need q to fix b = q - 2")
            reg = classify_regime(q)
            if reg.tag != FAST:
                raise ValueError(f"q={q} is not in the fast regime")
        elif tag == SLOW:
            reg = Regime(SLOW, d=d_exp)
        else:
            reg = Regime(tag)
    orientation = orientation.lower()
    if bracket_sign is None:
        bracket_sign = -1 if (reg.tag == FAST and orientation == SUPER) else 1
    if alpha is None:
        if reg.tag == SLOW:
            alpha = 0.0 if p > m else 1.0
        else:
            alpha = 1.0 / (p - 1)
    if beta is None:
        if reg.tag == SLOW:
            beta = 0.0
        elif reg.tag == FAST and orientation == SUB:
            beta = (m - p) / (p - 1)
        else:
            beta = (p - m) / (p - 1)
    return BarrierSpec(regime=reg, orientation=orientation, C=C, a=a, T=T, m=m, p=p, R=R,
                       eps=eps, delta_exp=delta_exp, d_exp=d_exp, bracket_sign=bracket_sign,
                       alpha=alpha, beta=beta, log_core_sign=log_core_sign, q=q)


def _check_domain(spec: BarrierSpec, density: DensitySpec | None, x):
    if density is not None and density.R != spec.R:
        raise ValueError(f"barrier R={spec.R} differs from density R={density.R}")
    if np.any(np.abs(x) > spec.R):
        raise DomainBoundary("barrier evaluated outside [-R, R]")


def bracket(spec: BarrierSpec, x, t, side=None):
    """1 - profile(x) eta(t)/a for bracket families; None for the slow family."""
    if spec.regime.tag == SLOW:
        return None
    x = np.asarray(x, dtype=float)
    P = spec.profile.derivs(x, side="left" if side is None else side)[0]
    with np.errstate(invalid="ignore"):
        return 1.0 - P * spec.time.eta(t) / spec.a


def eval_barrier(spec: BarrierSpec, density: DensitySpec | None, x, t):
    """Barrier value; s=-1 barriers return +inf where the bracket is <= 0."""
    x = np.asarray(x, dtype=float)
    _check_domain(spec, density, x)
    tf = spec.time
    zeta = tf.zeta(t)
    if spec.regime.tag == SLOW:
        w = spec.C * zeta * (spec.R - np.abs(x)) ** (spec.d_exp / spec.m)
    else:
        B = bracket(spec, x, t)
        e = spec.bracket_sign / (spec.m - 1)
        pos = B > 0
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            core = np.where(pos, np.where(pos, B, 1.0) ** e, 0.0 if e > 0 else np.inf)
        if spec.C == 0:
            core = np.zeros_like(core)
        w = spec.C * zeta * core
        w = np.where(np.isnan(w), 0.0, w)
    w = np.broadcast_to(w, np.broadcast(x, np.asarray(t)).shape)
    return float(w) if w.ndim == 0 else np.array(w)


def _bracket_terms(C, m, s, zeta, dzeta, eta, deta, a, P, dP, d2P):
    """w_t, (w^m)_x, (w^m)_xx for w = C zeta B^e with B = 1 - P eta / a, e = s/(m-1)."""
    e = s / (m - 1)
    g = m * e
    B = 1.0 - P * eta / a
    Bt = -P * deta / a
    Bx = -dP * eta / a
    Bxx = -d2P * eta / a
    w_t = C * dzeta * B ** e + C * zeta * e * B ** (e - 1) * Bt
    amp = C ** m * zeta ** m
    wm_x = amp * g * B ** (g - 1) * Bx
    wm_xx = amp * g * ((g - 1) * B ** (g - 2) * Bx * Bx + B ** (g - 1) * Bxx)
    return w_t, wm_x, wm_xx


def barrier_derivatives(spec: BarrierSpec, density: DensitySpec | None, x, t, side=None):
    """(w_t, (w^m)_x, (w^m)_xx) from the closed forms of the active branch."""
    x = np.asarray(x, dtype=float)
    _check_domain(spec, density, x)
    if np.any(np.abs(x) >= spec.R):
        raise DomainBoundary("derivatives need |x| < R")
    tf = spec.time
    zeta, dzeta = tf.zeta(t), tf.dzeta(t)
    if spec.C == 0:
        z = np.zeros(np.broadcast(x, np.asarray(t)).shape)
        return z, z.copy(), z.copy()
    m, C = spec.m, spec.C
    if spec.regime.tag == SLOW:
        if side is None and np.any(x == 0):
            raise OnBranchInterface("slow barrier has a kink at x=0; pass a side")
        d = spec.d_exp
        dist = spec.R - np.abs(x)
        sg = _side_sign(x, side)
        amp = C ** m * zeta ** m
        w_t = C * dzeta * dist ** (d / m)
        wm_x = -sg * amp * d * dist ** (d - 1)
        wm_xx = amp * d * (d - 1) * dist ** (d - 2)
        return w_t, wm_x, wm_xx
    P, dP, d2P = spec.profile.derivs(x, side=side)
    eta, deta = tf.eta(t), tf.deta(t)
    B = 1.0 - P * eta / spec.a
    if np.any(~(B > 0)):
        raise BracketNonpositive("derivatives requested where the bracket is <= 0")
    return _bracket_terms(C, m, spec.bracket_sign, zeta, dzeta, eta, deta, spec.a, P, dP, d2P)


def support_edge(spec: BarrierSpec, t: float) -> float | None:
    """Largest |x| with positive bracket, for monotone profiles; None if unbounded."""
    if spec.regime.tag == SLOW:
        return None
    level = spec.a / float(spec.time.eta(t))
    prof = spec.profile
    if isinstance(prof, ProfileFast):
        if level >= prof.eps ** (-prof.b):
            return spec.R - level ** (-1.0 / prof.b)
        a0, a2 = prof.coefficients
        if level <= a0:
            return 0.0
        return float(np.sqrt((level - a0) / a2))
    if isinstance(prof, ProfilePower):
        if level <= spec.R ** (-prof.delta):
            return 0.0
        return spec.R - level ** (-1.0 / prof.delta)
    return None
