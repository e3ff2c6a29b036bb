"""Constructive parameter searches for the barrier families.

Every system is a list of scalar inequalities in (C, a, T, omega = C^(m-1)/a)
plus problem constants.  Each search follows the monotone moves that make the
system satisfiable (fix omega, move C, grow T or a) and returns a report with
the left/right sides and slack of every inequality.  Inequalities are tagged
`construction` (part of the barrier construction) or `supplementary` (extra
conditions needed once the residual is expanded directly).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .barrier import SUB, SUPER, BarrierSpec, make_barrier
from .density import (CRITICAL, FAST, SLOW, DensitySpec, classify_regime,
                      collar_constants, eval_density, uniform_bounds)
from .errors import (EpsilonTooLarge, KBoundViolated, NoFeasiblePoint,
                     PeqMUnsupported)

MAX_STAGES = 200
PGTM, PLTM, PEQM = "PgtM", "PltM", "PeqM"
VERIFIED_FAST_SUPER_SIGN = 1


@dataclass(frozen=True)
class ProblemExponents:
    m: float
    p: float

    def __post_init__(self):
        object.__setattr__(self, "m", float(self.m))
        object.__setattr__(self, "p", float(self.p))
        if not (self.m > 1 and self.p > 1):
            raise ValueError(f"need m > 1 and p > 1, got m={self.m}, p={self.p}")


@dataclass
class Check:
    id: str
    lhs: float
    rhs: float
    relation: str
    margin: float
    kind: str = "construction"

    @property
    def passed(self) -> bool:
        return self.margin >= 0


def _check(id_: str, lhs: float, rel: str, rhs: float, kind: str = "construction") -> Check:
    lhs, rhs = float(lhs), float(rhs)
    margin = lhs - rhs if rel in (">=", ">") else rhs - lhs
    if rel in (">", "<") and margin == 0:
        margin = -np.finfo(float).tiny  # strict relation held with equality
    return Check(id_, lhs, rhs, rel, float(margin), kind)


@dataclass
class FeasibilityReport:
    system: str
    params: dict
    checks: list[Check]
    context: dict
    notes: list[str] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return all(c.margin >= 0 for c in self.checks)

    def tightest(self, n: int = 3) -> list[Check]:
        return sorted(self.checks, key=lambda c: c.margin)[:n]

    def to_dict(self) -> dict:
        return {"system": self.system, "params": self.params,
                "checks": [asdict(c) for c in self.checks], "feasible": self.feasible,
                "context": self.context, "notes": self.notes}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)

    def digest(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()


def k_coefficient(m: float, p: float) -> float:
    """K = c^((m-1)/(p-1)) - c^((p+m-2)/(p-1)) with c = (m-1)/(p+m-2); the peak of c^s - c^(s+1)."""
    c = (m - 1) / (p + m - 2)
    K = c ** ((m - 1) / (p - 1)) - c ** ((p + m - 2) / (p - 1))
    if not K > 0:
        raise ArithmeticError(f"K coefficient not positive for m={m}, p={p}")
    return K


def _finish(report: FeasibilityReport, what: str) -> FeasibilityReport:
    if not report.feasible:
        worst = ", ".join(f"{c.id} ({c.margin:.3g})" for c in report.tightest())
        raise NoFeasiblePoint(f"{what}: no feasible point; tightest: {worst}", report)
    return report


def _global_constants(density: DensitySpec) -> tuple[float, float]:
    """Sandwich constants of rho (R-|x|)^q over the whole interval."""
    return collar_constants(density, density.R)


# ------------------------------------------------------------------- fast, global


def _fast_global_checks(P: dict, X: dict) -> list[Check]:
    m, p, b, R, eps = X["m"], X["p"], X["b"], X["R"], X["eps"]
    c1, c2, r1, r2 = X["c1"], X["c2"], X["rho1"], X["rho2"]
    C, a, T, w = P["C"], P["a"], P["T"], P["omega"]
    beta = P["beta"]
    g = m / (m - 1)
    out = [
        _check("density-ratio", c2 / c1, "<", m + (m - 1) / b),
        _check("core-below-support-time", T ** beta, ">",
               eps ** (-b) / a * max(1.0, r2 / r1 * b / (m - 1) * (R - eps) / eps)),
        _check("collar-gradient", (p - m) / (p - 1), ">=", w * g * b * b / c1),
        _check("collar-peak", w * g * b * ((b * m / (m - 1) + 1) / c2 - b / (c1 * (m - 1))),
               ">=", C ** (p - 1) + 1 / (p - 1)),
        _check("core-gradient", (p - m) / (p - 1) * T ** beta, ">=",
               w * g * b * b / r1 * eps ** (-2 * b - 2) / a),
        _check("core-peak", w * g * b * eps ** (-b - 1)
               * (1 / (r2 * (R - eps)) - b * eps ** (-b - 1) / (a * r1 * (m - 1)) * T ** (-beta)),
               ">=", C ** (p - 1) + 1 / (p - 1)),
        # the core bracket stays below 1 only if the quadratic core of the profile is >= 0
        _check("core-profile-nonnegative", 2 * eps - b * (R - eps), ">=", 0.0, "supplementary"),
    ]
    return out


def _fast_context(exps: ProblemExponents, density: DensitySpec, eps: float) -> dict:
    reg = classify_regime(density.q)
    c1, c2 = collar_constants(density, eps)
    rho1, rho2 = uniform_bounds(density, eps)
    return {"m": exps.m, "p": exps.p, "q": density.q, "b": reg.b, "R": density.R, "eps": eps,
            "c1": c1, "c2": c2, "rho1": rho1, "rho2": rho2}


def _fast_global_window(X: dict) -> tuple[float, float, float, float]:
    """(omega_lo, omega_hi, X1, X2) with the T -> infinity limit of the core coefficient."""
    m, p, b, R, eps = X["m"], X["p"], X["b"], X["R"], X["eps"]
    g = m / (m - 1)
    x1 = g * b * ((b * m / (m - 1) + 1) / X["c2"] - b / (X["c1"] * (m - 1)))
    x2 = g * b * eps ** (-b - 1) / (X["rho2"] * (R - eps))
    hi = (p - m) / (p - 1) * (m - 1) * X["c1"] / (m * b * b)
    lo = 1.0 / ((p - 1) * min(x1, x2)) if min(x1, x2) > 0 else math.inf
    return lo, hi, x1, x2


def feasible_fast_global(exps: ProblemExponents, density: DensitySpec,
                         eps: float | None = None, omega: float | None = None) -> FeasibilityReport:
    """Parameters for the fast-regime global supersolution (forward time factors).

    With eps=None the collar width is scanned over R*{0.05, ..., 0.95} and the
    width with the widest omega window (log ratio) is used.
    """
    m, p = exps.m, exps.p
    reg = classify_regime(density.q)
    if reg.tag != FAST:
        raise ValueError(f"fast regime needs q > 2, got q={density.q}")
    if not p > m:
        raise ValueError("global supersolution needs p > m")
    b = reg.b
    c1, c2 = density.c1, density.c2
    if not c2 / c1 < m + (m - 1) / b:
        raise KBoundViolated(f"c2/c1 = {c2 / c1:g} >= m + (m-1)/b = {m + (m - 1) / b:g}")
    notes = ["omega window reconstructed from the collar/core gradient and peak inequalities",
             "barrier exponent sign +1 (the -1 sign fails the residual check)"]
    if eps is None:
        best = None
        for i in range(1, 20):
            X = _fast_context(exps, density, i / 20 * density.R)
            if X["c2"] / X["c1"] >= m + (m - 1) / b or 2 * X["eps"] < b * (density.R - X["eps"]):
                continue
            lo, hi, _, _ = _fast_global_window(X)
            if lo < hi and (best is None or math.log(hi / lo) > best[0] + 1e-12):
                best = (math.log(hi / lo), X)
        if best is None:
            X = _fast_context(exps, density, 0.5 * density.R)
            notes.append("collar scan found no width with a nonempty omega window")
        else:
            X = best[1]
            notes.append(f"collar width chosen by scan: eps = {X['eps']:.6g}")
    else:
        X = _fast_context(exps, density, eps)
    lo, hi, x1, x2 = _fast_global_window(X)
    X.update(omega_lo=lo, omega_hi=hi)
    alpha, beta = 1 / (p - 1), (p - m) / (p - 1)
    if omega is None:
        omega = 0.5 * (lo + hi) if lo < hi else hi
    P = {"omega": omega, "alpha": alpha, "beta": beta, "eps": X["eps"]}
    room = omega * min(x1, x2) - 1 / (p - 1)
    C = 1.0
    while room > 0 and C ** (p - 1) > 0.5 * room:
        C *= 0.5
    if room <= 0:
        C = 2.0 ** -10
    P.update(C=C, a=C ** (m - 1) / omega, T=1.0)
    # T only enters the core conditions; with an empty window grow it until the
    # T-driven ones hold so the report shows the T-independent obstruction
    t_driven = {"core-below-support-time", "core-gradient"} if lo >= hi else None
    for _ in range(MAX_STAGES):
        chk = _fast_global_checks(P, X)
        if all(c.passed for c in chk if t_driven is None or c.id in t_driven):
            break
        P["T"] *= 2.0
    rep = FeasibilityReport("fast-global", P, _fast_global_checks(P, X), X, notes)
    if lo >= hi:
        rep.notes.append(f"omega window empty: lower {lo:.6g} >= upper {hi:.6g}")
    return _finish(rep, "fast global")


# ------------------------------------------------------------------- fast, blow-up


def _fast_blowup_coeffs(P: dict, X: dict) -> dict:
    m, p, b, R, eps = X["m"], X["p"], X["b"], X["R"], X["eps"]
    c1, c2, r1, r2 = X["c1"], X["c2"], X["rho1"], X["rho2"]
    w = P["omega"]
    g = m / (m - 1)
    e1 = eps ** (-b - 1)
    return {
        "sig_c": 1 / (m - 1) + w * g * b / c1 * (b * m / (m - 1) + 1),
        "lam_c": (w * g * b * b / c2 + (p - m) / (p - 1)) / (m - 1),
        "sig_i": 1 / (m - 1) + w * e1 / r1 * m * (m + 1) / (m - 1) ** 2 * b / (R - eps),
        "lam_i": (w * e1 / r2 * g * 2 * b / (R - eps) + (p - m) / (p - 1)) / (m - 1),
    }


def _fast_blowup_checks(P: dict, X: dict) -> list[Check]:
    m, p, b, R, eps = X["m"], X["p"], X["b"], X["R"], X["eps"]
    c2, r2 = X["c2"], X["rho2"]
    C, a, w, K = P["C"], P["a"], P["omega"], X["K"]
    e1 = eps ** (-b - 1)
    rp = (p + m - 2) / (p - 1)
    k = _fast_blowup_coeffs(P, X)
    out = [
        _check("collar-width-bound", eps, "<", b * R / (b + 2)),
        _check("collar-peak", K * k["sig_c"] ** rp, "<=", C ** (m - 1) * k["lam_c"]),
        _check("collar-top", (m - 1) * k["sig_c"], "<=", (p + m - 2) * C ** (p - 1)),
        _check("core-peak", K * k["sig_i"] ** rp, "<=", C ** (m - 1) * k["lam_i"]),
        _check("core-top", (m - 1) * k["sig_i"], "<=", (p + m - 2) * C ** (p - 1)),
    ]
    case = X["case"]
    if case == PLTM:
        thr = (m - p) * (m - 1) / (b * (p - 1) * m) * max(c2 / b, (R - eps) * r2 / (2 * e1))
        out.append(_check("omega-threshold", w, ">", thr))
        out.append(_check("scale-lower-bound", a, ">=", K * (m - 1) / w * max(
            k["sig_c"] ** rp / ((m - 1) * k["lam_c"]), k["sig_i"] ** rp / ((m - 1) * k["lam_i"]))))
        out.append(_check("scale-top", (p + m - 2) * (a * w) ** ((p - 1) / (m - 1)), ">=",
                          (m - 1) * max(k["sig_c"], k["sig_i"])))
    elif case == PEQM:
        out.append(_check("scale-lower-bound", a, ">=", K * (m - 1) ** 2 / (m * b * w * w) * max(
            c2 / b * k["sig_c"] ** 2, r2 / e1 * (R - eps) / 2 * k["sig_i"] ** 2)))
    return out


def feasible_fast_blowup(exps: ProblemExponents, density: DensitySpec, eps: float | None = None,
                         case: str | None = None, omega: float | None = None,
                         T: float = 1.0) -> FeasibilityReport:
    """Parameters for the fast-regime blow-up subsolution (backward time factors).

    Case PgtM: fixed omega (default: the value in 10^(-k/2), k = 0..12, that
    needs the smallest C), then C doubled.  PltM: omega twice its threshold,
    then a doubled.  PeqM: omega (default 1), then a doubled.
    """
    m, p = exps.m, exps.p
    reg = classify_regime(density.q)
    if reg.tag != FAST:
        raise ValueError(f"fast regime needs q > 2, got q={density.q}")
    b, R = reg.b, density.R
    expected = PGTM if p > m else PLTM if p < m else PEQM
    if case is None:
        case = expected
    if case != expected:
        raise ValueError(f"case {case} inconsistent with m={m}, p={p} (expected {expected})")
    bound = b * R / (b + 2)
    if eps is None:
        eps = 0.9 * bound
    if not eps < bound:
        raise EpsilonTooLarge(f"eps={eps:g} must be < bR/(b+2) = {bound:g}")
    X = _fast_context(exps, density, eps)
    X.update(K=k_coefficient(m, p), case=case)
    alpha, beta = 1 / (p - 1), (m - p) / (p - 1)
    notes = ["collar sandwich constants taken on the collar of width eps"]

    def base(w):
        return {"omega": w, "alpha": alpha, "beta": beta, "eps": eps, "T": T}

    def grow_C(w):
        P = base(w)
        C = 1.0
        for _ in range(MAX_STAGES):
            P.update(C=C, a=C ** (m - 1) / w)
            if all(c.passed for c in _fast_blowup_checks(P, X)):
                return P, True
            C *= 2.0
        return P, False

    def grow_a(w):
        P = base(w)
        a = 1.0
        for _ in range(MAX_STAGES):
            P.update(a=a, C=(a * w) ** (1 / (m - 1)))
            if all(c.passed for c in _fast_blowup_checks(P, X)):
                return P, True
            a *= 2.0
        return P, False

    if case == PGTM:
        if omega is None:
            best = None
            for k in range(13):
                P, ok = grow_C(10.0 ** (-k / 2))
                if ok and (best is None or P["C"] < best["C"]):
                    best = P
            P = best if best is not None else grow_C(1.0)[0]
            notes.append("omega picked from 10^(-k/2), k=0..12, as the one needing the smallest C")
        else:
            P = grow_C(omega)[0]
    elif case == PLTM:
        if omega is None:
            m_, p_, c2, r2 = m, p, X["c2"], X["rho2"]
            thr = (m_ - p_) * (m_ - 1) / (b * (p_ - 1) * m_) * max(
                c2 / b, (R - eps) * r2 / (2 * eps ** (-b - 1)))
            omega = 2.0 * thr
            notes.append("omega set to twice its threshold")
        P = grow_a(omega)[0]
    else:
        P = grow_a(1.0 if omega is None else omega)[0]
    rep = FeasibilityReport(f"fast-blowup-{case}", P, _fast_blowup_checks(P, X), X, notes)
    return _finish(rep, "fast blow-up")


# --------------------------------------------------------------- critical, global


def _critical_global_checks(P: dict, X: dict) -> list[Check]:
    m, p, R, c1, c2, d = X["m"], X["p"], X["R"], X["c1"], X["c2"], X["delta"]
    C, a, T, w, beta = P["C"], P["a"], P["T"], P["omega"], P["beta"]
    out = [
        _check("eta-nonincreasing", (p - m) / (p - 1), ">=", 0.0),
        _check("peak", w * d * (d + 1) / c2 * m / (m - 1) * R ** (-d), ">=",
               C ** (p - 1) + 1 / (p - 1)),
        _check("support-nonempty", a * T ** beta, ">", R ** (-d), "supplementary"),
    ]
    h = X["horizon"]
    lhs = beta * (m - 1) * c1
    rhs = C ** (m - 1) * (T + h) ** beta * m * d * d if math.isfinite(h) else (
        math.inf if beta > 0 else 0.0)
    out.append(_check("edge-gradient-horizon", lhs, ">=", rhs, "supplementary"))
    return out


def feasible_critical_global(exps: ProblemExponents, density: DensitySpec,
                             delta_exp: float = 1.0, horizon: float = 5.0,
                             omega: float | None = None) -> FeasibilityReport:
    """Parameters for the critical-regime supersolution, valid on [0, horizon].

    The gradient term of (w^m)_xx is unfavourable near the support edge, so the
    barrier is only certified up to a finite horizon: omega is placed in
    (omega_lo, omega_hi), T is doubled until an admissible profile scale a
    exists, and a is the geometric mean of its bounds.
    """
    m, p = exps.m, exps.p
    if classify_regime(density.q).tag != CRITICAL:
        raise ValueError(f"critical regime needs q = 2, got q={density.q}")
    if not p > m:
        raise ValueError("critical global supersolution needs p > m")
    if not delta_exp > 0:
        raise ValueError("delta_exp must be positive")
    c1, c2 = _global_constants(density)
    R, d = density.R, delta_exp
    alpha, beta = 1 / (p - 1), (p - m) / (p - 1)
    lo = (m - 1) * c2 * R ** d / ((p - 1) * m * d * (d + 1))
    hi = beta * (m - 1) * c1 * R ** d / (m * d * d)
    X = {"m": m, "p": p, "q": density.q, "R": R, "c1": c1, "c2": c2, "delta": d,
         "horizon": horizon, "omega_lo": lo, "omega_hi": hi}
    notes = ["omega window from the peak inequality (lower) and the support-edge "
             "gradient bound (upper)"]
    if omega is None:
        omega = math.sqrt(lo * hi) if lo < hi else hi
    P = {"omega": omega, "alpha": alpha, "beta": beta, "delta_exp": d, "T": 1.0}
    pmax = beta * (m - 1) * c1 / (omega * m * d * d)
    feasible = False
    for _ in range(MAX_STAGES):
        T = P["T"]
        a_lo = R ** (-d) * T ** (-beta)
        a_hi = pmax * (T + horizon) ** (-beta) if math.isfinite(horizon) else 0.0
        a = math.sqrt(a_lo * a_hi) if a_hi > a_lo else a_lo * 2.0
        P.update(a=a, C=(a * omega) ** (1 / (m - 1)))
        if all(c.passed for c in _critical_global_checks(P, X)):
            feasible = True
            break
        P["T"] = T * 2.0
    if not math.isfinite(horizon):
        notes.append("infinite horizon: the support-edge gradient bound cannot hold for all t")
    rep = FeasibilityReport("critical-global", P, _critical_global_checks(P, X), X, notes)
    if not feasible and lo >= hi:
        rep.notes.append(f"omega window empty: lower {lo:.6g} >= upper {hi:.6g}")
    return _finish(rep, "critical global")


# -------------------------------------------------------------- critical, blow-up


def _log_profile_max(R: float, eps: float) -> float:
    return (R - eps) / (2 * eps) + math.log(eps)


def _critical_blowup_checks(P: dict, X: dict) -> list[Check]:
    m, p, R, eps, c2, r2, K = X["m"], X["p"], X["R"], X["eps"], X["c2"], X["rho2"], X["K"]
    C, a, T, w, beta = P["C"], P["a"], P["T"], P["omega"], P["beta"]
    alpha = P["alpha"]
    rp = (p + m - 2) / (p - 1)
    r = (p + m - 2) / (m - 1)
    k = 1 / (m - 1)
    core = 1 / (eps * (R - eps) * r2)
    out = [
        _check("peak-location", max(1 - w * m / c2, 1 - w * m * core), "<=",
               (p + m - 2) * C ** (p - 1)),
        _check("peak-value", K * max(max(k - w * k * m / c2, 0.0) ** rp,
                                     max(k - w * k * m * core, 0.0) ** rp),
               "<=", (p - m) / ((m - 1) * (p - 1)) * C ** (m - 1)),
    ]
    tmax = max(X["profile_max"], 0.0)
    bmin = 1 - tmax * T ** beta / a
    out.append(_check("bracket-positive", bmin, ">", 0.0, "supplementary"))
    floor = max(alpha - k * beta, 0.0) + k * beta
    out.append(_check("reaction-floor", C ** (p - 1) * max(bmin, 0.0) ** r, ">=", floor,
                      "supplementary"))
    return out


def feasible_critical_blowup(exps: ProblemExponents, density: DensitySpec,
                             eps: float | None = None, omega: float = 1.0,
                             T: float = 1.0) -> FeasibilityReport:
    """Parameters for the critical-regime log-profile subsolution.

    omega is fixed (default 1) and C doubled until every inequality holds.
    Negative peak coefficients are clipped at 0 before the fractional power.
    """
    m, p = exps.m, exps.p
    if classify_regime(density.q).tag != CRITICAL:
        raise ValueError(f"critical regime needs q = 2, got q={density.q}")
    if not p > m:
        raise ValueError("critical blow-up subsolution needs p > m")
    R = density.R
    eps = 0.25 * R if eps is None else eps
    c1, c2 = collar_constants(density, eps)
    rho1, rho2 = uniform_bounds(density, eps)
    X = {"m": m, "p": p, "q": density.q, "R": R, "eps": eps, "c1": c1, "c2": c2,
         "rho1": rho1, "rho2": rho2, "K": k_coefficient(m, p),
         "profile_max": _log_profile_max(R, eps)}
    P = {"omega": omega, "alpha": 1 / (p - 1), "beta": (p - m) / (p - 1), "eps": eps, "T": T}
    notes = ["omega = C^(m-1)/a treated as the single free ratio",
             "peak coefficients clipped at 0 before the fractional power",
             "time factors cancel only up to (T-t)^(2 beta) in the diffusion terms; "
             "those terms are favourable and the reaction floor covers the rest"]
    C = 1.0
    for _ in range(MAX_STAGES):
        P.update(C=C, a=C ** (m - 1) / omega)
        if all(c.passed for c in _critical_blowup_checks(P, X)):
            break
        C *= 2.0
    rep = FeasibilityReport("critical-blowup", P, _critical_blowup_checks(P, X), X, notes)
    return _finish(rep, "critical blow-up")


# ----------------------------------------------------------------------- slow


def _weight_floor(density: DensitySpec, d: float) -> float:
    """inf over (-R, R) of (R-|x|)^(d-2) / rho(x)."""
    R = density.R
    if density.table_x is None:
        return R ** (d + density.q - 2)
    xs = R * (1 - np.geomspace(1e-9, 1.0, 20001))
    xs = np.concatenate([xs, -xs])
    return float(np.min((R - np.abs(xs)) ** (d - 2) / eval_density(density, xs)))


def _slow_checks(P: dict, X: dict) -> list[Check]:
    m, p, q, R, d, delta = X["m"], X["p"], X["q"], X["R"], P["d_exp"], X["delta"]
    C, T, alpha = P["C"], P["T"], P["alpha"]
    factor = d * (1 - d) if X["sign_mode"] == "corrected" else d * (d - 1)
    out = [_check("profile-exponent-range", d, "<", min(2 - q, 1.0)),
           _check("profile-exponent-positive", d, ">", 0.0)]
    if p > m:
        out.append(_check("growth-exponent-zero", abs(alpha), "<=", 0.0))
        out.append(_check("peak", factor * delta * C ** m, ">=", R ** (p * d / m) * C ** p))
    else:
        out.append(_check("growth-exponent-positive", alpha, ">", 0.0))
        out.append(_check("reference-time", T, ">", 1.0))
        out.append(_check("peak", factor * delta * C ** m * T ** (alpha * (m - p)), ">=",
                          R ** (p * d / m) * C ** p))
    out.append(_check("weight-floor", delta, "<=", X["weight_floor"], "supplementary"))
    return out


def feasible_slow(exps: ProblemExponents, density: DensitySpec, d: float | None = None,
                  sign_mode: str = "corrected", alpha: float | None = None,
                  T: float | None = None) -> FeasibilityReport:
    """Parameters for the slow-regime supersolution C zeta(t) (R-|x|)^(d/m).

    sign_mode `corrected` uses the favourable factor d(1-d); `literal` keeps
    d(d-1), which is negative and therefore never satisfiable.
    """
    m, p = exps.m, exps.p
    q = density.q
    if classify_regime(q).tag != SLOW:
        raise ValueError(f"slow regime needs q < 2, got q={q}")
    if p == m:
        raise PeqMUnsupported("the slow-regime construction excludes p = m")
    if sign_mode not in ("corrected", "literal"):
        raise ValueError("sign_mode must be 'corrected' or 'literal'")
    R = density.R
    _, c2 = _global_constants(density)
    if d is None:
        d = min(2 - q, 1.0) / 2
    delta = min(1 / c2, R ** (1 - q) / c2)
    X = {"m": m, "p": p, "q": q, "R": R, "c2": c2, "delta": delta, "sign_mode": sign_mode,
         "weight_floor": _weight_floor(density, d)}
    notes = [f"sign mode {sign_mode}"]
    if p > m:
        P = {"alpha": 0.0, "T": 1.0 if T is None else T, "d_exp": d, "C": 1.0}
        for _ in range(MAX_STAGES):
            chk = [c for c in _slow_checks(P, X) if c.id == "peak"][0]
            if chk.margin > 0:
                break
            P["C"] *= 0.5
    else:
        P = {"alpha": 1.0 if alpha is None else alpha, "T": 2.0 if T is None else T,
             "d_exp": d, "C": 1.0}
        for _ in range(MAX_STAGES):
            chk = [c for c in _slow_checks(P, X) if c.id == "peak"][0]
            if chk.margin > 0:
                break
            P["C"] *= 2.0
    P["beta"] = 0.0
    P["a"] = 1.0
    P["omega"] = P["C"] ** (m - 1) / P["a"]
    rep = FeasibilityReport(f"slow-{sign_mode}", P, _slow_checks(P, X), X, notes)
    return _finish(rep, "slow")


# ----------------------------------------------------------------- utilities


_CHECKERS = {
    "fast-global": _fast_global_checks,
    "critical-global": _critical_global_checks,
    "critical-blowup": _critical_blowup_checks,
}


def recheck(report: FeasibilityReport) -> list[Check]:
    """Re-evaluate every inequality of a report from its params and context."""
    s = report.system
    if s.startswith("fast-blowup"):
        return _fast_blowup_checks(report.params, report.context)
    if s.startswith("slow"):
        return _slow_checks(report.params, report.context)
    return _CHECKERS[s](report.params, report.context)


def barrier_from_report(report: FeasibilityReport, bracket_sign: int | None = None) -> BarrierSpec:
    """The barrier certified by a feasibility report."""
    P, X = report.params, report.context
    m, p, R = X["m"], X["p"], X["R"]
    s = report.system
    common = dict(m=m, p=p, C=P["C"], a=P["a"], T=P["T"], R=R, alpha=P["alpha"], beta=P["beta"])
    if s == "fast-global":
        # only the +1 exponent gives a supersolution on the certified window
        sign = VERIFIED_FAST_SUPER_SIGN if bracket_sign is None else bracket_sign
        return make_barrier("fast", SUPER, q=X["q"], eps=P["eps"], bracket_sign=sign,
                            **common)
    if s.startswith("fast-blowup"):
        return make_barrier("fast", SUB, q=X["q"], eps=P["eps"], bracket_sign=bracket_sign,
                            **common)
    if s == "critical-global":
        return make_barrier("critical", SUPER, delta_exp=P["delta_exp"],
                            bracket_sign=bracket_sign, **common)
    if s == "critical-blowup":
        return make_barrier("critical", SUB, eps=P["eps"], bracket_sign=bracket_sign, **common)
    return make_barrier("slow", SUPER, q=X["q"], d_exp=P["d_exp"], **common)
