"""Numerical cross-checks of the quasi-order laws on linear saddle models.

Chart convention: the one-dimensional manifold is the x-axis (eigenvalue
``alpha``); the plane {x=0} carries y (``lambda_i``) and z (``lambda_j``).
The component D_i is {z=0} and D_j is {y=0}, so a quasi-order against D_i is
the exponent of z measured against y.

Trajectories are produced either in closed form or by a fixed-step RK4
integrator with section-crossing bisection; the latter also handles the
perturbed field x(alpha+A), y(lambda_i+B), z(lambda_j+C) with A=B=C=eps*x.
Exponents are then estimated by a log-log least-squares fit, independently of
the exact formulas they are compared against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np
from scipy import stats

from .errors import (
    DegenerateCurve,
    DomainError,
    InsufficientSamples,
    NoCrossing,
    NonpositiveWeight,
    ResonantInput,
    StepLimitExceeded,
)

Real = float | int | Fraction
Direction = Literal["forward", "backward", "either"]
AXES = {"x": 0, "y": 1, "z": 2}

N_SAMPLES = 40
TAIL = 20
DEPTH = 1e-8
RK4_STEP = 1e-3
BISECT_TOL = 1e-12


@dataclass(frozen=True)
class LinearSaddleModel:
    alpha: Real
    lambda_i: Real
    lambda_j: Real
    eps: float = 0.0  # perturbation A = B = C = eps * x

    def __post_init__(self):
        if not (self.alpha * self.lambda_i < 0 and self.lambda_i * self.lambda_j > 0):
            raise DomainError(
                f"need alpha*lambda_i < 0 < lambda_i*lambda_j, got ({self.alpha}, {self.lambda_i}, {self.lambda_j})"
            )

        eig = np.array([float(self.alpha), float(self.lambda_i), float(self.lambda_j)])
        eig.flags.writeable = False
        object.__setattr__(self, "_eig", eig)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self._eig

    @property
    def weight_i(self) -> Fraction:
        return Fraction(self.lambda_j) / Fraction(self.lambda_i)

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        if not self.eps:
            return pts * self._eig
        return pts * (self._eig + self.eps * pts[..., :1])


@dataclass(frozen=True)
class Section:
    axis: str
    c: float

    def __post_init__(self):
        if self.axis not in AXES or not self.c > 0:
            raise DomainError(f"sections are {{x|y|z = c}} with c > 0, got {self.axis}={self.c}")

    @property
    def index(self) -> int:
        return AXES[self.axis]


@dataclass(frozen=True)
class SectionCurve:
    section: Section
    samples: np.ndarray = field(compare=False)

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float)
        if s.ndim != 2 or s.shape[1] != 3:
            raise DomainError("samples must be an (n, 3) array")
        if np.any(s <= 0):
            raise DomainError("samples must lie in the open positive octant")
        object.__setattr__(self, "samples", s)


@dataclass(frozen=True)
class QuasiOrderEstimate:
    rho: float
    low: float
    high: float
    stderr: float
    n: int


def geometric_samples(top: float = 1e-1, depth: float = DEPTH, n: int = N_SAMPLES) -> np.ndarray:
    return np.geomspace(top, depth, n)


# ---------------------------------------------------------------- flows


def _time_sign(rate: float, coord: float, c: float, direction: Direction) -> int:
    if coord == c:
        return 0
    if rate == 0:
        raise NoCrossing("the section coordinate is invariant under the flow")
    need = 1 if rate * (c - coord) > 0 else -1
    if direction == "forward" and need < 0 or direction == "backward" and need > 0:
        raise NoCrossing(f"the section is only reached in {'backward' if need < 0 else 'forward'} time")
    return need


def crossing_time(model: LinearSaddleModel, point: Sequence[float], target: Section, direction: Direction = "either") -> float:
    p = np.asarray(point, dtype=float)
    a = target.index
    if p[a] <= 0:
        raise NoCrossing("the point lies on or beyond the invariant plane of the section axis")
    rate = model.eigenvalues[a]
    if _time_sign(rate, p[a], target.c, direction) == 0:
        return 0.0
    return math.log(target.c / p[a]) / rate


def flow_exact(model: LinearSaddleModel, point: Sequence[float], target: Section, direction: Direction = "either") -> np.ndarray:
    """Crossing point of the unperturbed linear flow with ``target``."""
    if model.eps:
        raise DomainError("closed-form flow is only available for the unperturbed model")
    t = crossing_time(model, point, target, direction)
    out = np.asarray(point, dtype=float) * np.exp(model.eigenvalues * t)
    out[target.index] = target.c
    return out


def _rk4(f, p: np.ndarray, h) -> np.ndarray:
    h = np.asarray(h, dtype=float).reshape(-1, 1) if np.ndim(h) else h
    k1 = f(p)
    k2 = f(p + 0.5 * h * k1)
    k3 = f(p + 0.5 * h * k2)
    k4 = f(p + h * k3)
    return p + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def _bisect(f, p: np.ndarray, h: float, axis: int, c: float, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Sub-step in [0, h] landing each row of ``p`` on {axis = c}."""
    side = np.sign(p[:, axis] - c)
    lo = np.zeros(len(p))
    hi = np.full(len(p), h)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        q = _rk4(f, p, mid)
        gap = q[:, axis] - c
        if np.all(np.abs(gap) <= tol * max(c, 1.0)):
            return q, mid
        same = np.sign(gap) == side
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    return _rk4(f, p, 0.5 * (lo + hi)), 0.5 * (lo + hi)


def flow_rk4_batch(
    f,
    points: np.ndarray,
    sections: Sequence[Section],
    sign: int,
    step: float = RK4_STEP,
    tol: float = BISECT_TOL,
    max_steps: int = 400_000,
) -> tuple[np.ndarray, np.ndarray]:
    """Integrate every row of ``points`` in time direction ``sign`` until the first section it crosses.

    Returns the crossing points and the index of the section crossed by each row.
    """
    pts = np.array(points, dtype=float, ndmin=2)
    n = len(pts)
    out = np.empty_like(pts)
    which = np.full(n, -1)
    for k, s in enumerate(sections):
        on = (which < 0) & (np.abs(pts[:, s.index] - s.c) <= tol * max(s.c, 1.0))
        out[on], which[on] = pts[on], k
    active = np.flatnonzero(which < 0)
    cur = pts[active]
    h = sign * step
    below = [cur[:, s.index] < s.c for s in sections]
    for _ in range(max_steps):
        if not len(active):
            return out, which
        nxt = _rk4(f, cur, h)
        now = [nxt[:, s.index] < s.c for s in sections]
        hits = [b != n for b, n in zip(below, now)]
        if not any(x.any() for x in hits):
            cur, below = nxt, now
            continue
        best_k = np.full(len(cur), -1)
        best_t = np.full(len(cur), np.inf)
        best_p = np.empty_like(cur)
        for k, s in enumerate(sections):
            idx = np.flatnonzero(hits[k])
            if not len(idx):
                continue
            q, t = _bisect(f, cur[idx], h, s.index, s.c, tol)
            t = np.abs(t)
            better = t < best_t[idx]
            sel = idx[better]
            best_k[sel], best_t[sel], best_p[sel] = k, t[better], q[better]
        done = best_k >= 0
        out[active[done]] = best_p[done]
        which[active[done]] = best_k[done]
        active, cur = active[~done], nxt[~done]
        below = [x[~done] for x in now]
        if not np.all(np.isfinite(cur)):
            raise NoCrossing("trajectory diverged before reaching the section")
    raise StepLimitExceeded(f"{len(active)} trajectories did not cross within {max_steps} steps")


def flow_rk4(
    f: LinearSaddleModel,
    point: Sequence[float],
    target: Section,
    step: float = RK4_STEP,
    tol: float = BISECT_TOL,
    direction: Direction = "either",
    max_steps: int = 400_000,
) -> np.ndarray:
    p = np.asarray(point, dtype=float)
    if p[target.index] <= 0:
        raise NoCrossing("the point lies on or beyond the invariant plane of the section axis")
    rate = float(f(p[None, :])[0, target.index] / p[target.index])
    sign = _time_sign(rate, p[target.index], target.c, direction)
    if sign == 0:
        return p.copy()
    out, _ = flow_rk4_batch(f, p[None, :], [target], sign, step, tol, max_steps)
    return out[0]


def _flow_many(model: LinearSaddleModel, pts: np.ndarray, target: Section, method: str, sign: int) -> np.ndarray:
    direction = "forward" if sign > 0 else "backward"
    if method == "exact":
        return np.array([flow_exact(model, p, target, direction) for p in pts])
    if method == "rk4":
        out, _ = flow_rk4_batch(model, pts, [target], sign)
        return out
    raise DomainError(f"unknown method {method!r}")


# ---------------------------------------------------------------- exponent fit


def measure_quasi_order(curve: SectionCurve, axis_pair: tuple[str, str], tail: int = TAIL, confidence: float = 0.95) -> QuasiOrderEstimate:
    """Slope of log c2 against log c1 over the ``tail`` samples closest to the corner."""
    a, b = (AXES[x] for x in axis_pair)
    s = curve.samples[np.argsort(-curve.samples[:, a], kind="stable")]
    s = s[-tail:]
    if len(s) < 8:
        raise InsufficientSamples(f"need at least 8 tail samples, got {len(s)}")
    lx, ly = np.log(s[:, a]), np.log(s[:, b])
    if np.ptp(lx) == 0 or np.ptp(ly) == 0:
        raise DegenerateCurve("the curve does not approach the corner in both coordinates")
    fit = stats.linregress(lx, ly)
    half = stats.t.ppf(0.5 + confidence / 2, len(s) - 2) * fit.stderr
    return QuasiOrderEstimate(float(fit.slope), float(fit.slope - half), float(fit.slope + half), float(fit.stderr), len(s))


# ---------------------------------------------------------------- verifications


@dataclass(frozen=True)
class OracleReport:
    kind: str
    formula: Fraction
    measured: QuasiOrderEstimate
    method: str
    component: str
    exit_section: str

    @property
    def error(self) -> float:
        return abs(self.measured.rho - float(self.formula))

    def as_dict(self) -> dict:
        f = self.formula
        return {
            "kind": self.kind,
            "formula": f"{f.numerator}/{f.denominator}",
            "formula_float": float(f),
            "measured": self.measured.rho,
            "interval": [self.measured.low, self.measured.high],
            "error": self.error,
            "method": self.method,
            "component": self.component,
            "exit_section": self.exit_section,
        }


def _time_sign_for(model: LinearSaddleModel, w1_unstable: bool) -> int:
    """+1 if the requested behaviour of the x-axis is the forward flow, else -1."""
    return 1 if (float(model.alpha) > 0) == w1_unstable else -1


def verify_trace_to_angle(
    model: LinearSaddleModel,
    trace_seed: tuple[float, float] = (1.0, 1.0),
    c: float = 1.0,
    method: str = "exact",
) -> OracleReport:
    """Flow a trace mark accumulating on b = (0, y_b, z_b) to {x=c} and fit z against y."""
    y_b, z_b = trace_seed
    if y_b <= 0 or z_b <= 0:
        raise DomainError("the trace seed must sit off the divisor")
    sign = _time_sign_for(model, True)
    al, li = float(model.alpha), float(model.lambda_i)
    ys = geometric_samples(top=min(y_b, 1.0) * 1e-1)
    s = c * (ys / y_b) ** (-al / li)  # x-offsets of the seeds giving those y-values at the section
    seeds = np.column_stack([s, np.full_like(s, y_b), np.full_like(s, z_b)])
    target = Section("x", c)
    arrived = _flow_many(model, seeds, target, method, sign)
    est = measure_quasi_order(SectionCurve(target, arrived), ("y", "z"))
    return OracleReport("trace-to-angle", model.weight_i, est, method, "D_i", "x")


def exit_axis(model: LinearSaddleModel, rho_in: Real) -> str:
    """Section ({y=c} or {z=c}) that the angle mark with D_i-quasi-order ``rho_in`` leaves through."""
    w = model.weight_i
    rho = Fraction(rho_in)
    if rho == w:
        raise ResonantInput(f"quasi-order {rho} equals the weight {w}")
    return "y" if rho > w else "z"


def numeric_exit_axis(model: LinearSaddleModel, rho_in: Real, method: str = "exact", c: float = 1.0, k: float = 1.0) -> str:
    """Which of {y=c}, {z=c} the flowed seeds reach first, decided from trajectories alone."""
    sign = _time_sign_for(model, False)
    ys = geometric_samples()[-TAIL:]
    seeds = np.column_stack([np.full_like(ys, c), ys, k * ys ** float(rho_in)])
    sections = [Section("y", c), Section("z", c)]
    if method == "rk4":
        _, which = flow_rk4_batch(model, seeds, sections, sign)
    else:
        t = np.array([[crossing_time(model, p, s, "either") for s in sections] for p in seeds]) * sign
        which = np.argmin(np.where(t > 0, t, np.inf), axis=1)
    votes = np.bincount(which, minlength=2)
    return sections[int(np.argmax(votes))].axis


def verify_transition(
    model: LinearSaddleModel,
    rho_in: Real,
    method: str = "exact",
    c: float = 1.0,
    c_out: float = 1.0,
    k: float = 1.0,
) -> OracleReport:
    """Seed z = k y^rho on {x=c}, flow through the saddle and fit the outgoing exponent against x."""
    rho = Fraction(rho_in)
    if rho <= 0:
        raise DomainError("quasi-orders are positive")
    axis = exit_axis(model, rho)
    sign = _time_sign_for(model, False)
    ys = geometric_samples()
    seeds = np.column_stack([np.full_like(ys, c), ys, k * ys ** float(rho)])
    target = Section(axis, c_out)
    arrived = _flow_many(model, seeds, target, method, sign)
    other = "z" if axis == "y" else "y"
    est = measure_quasi_order(SectionCurve(target, arrived), ("x", other))
    al, li, lj = (Fraction(v) for v in (model.alpha, model.lambda_i, model.lambda_j))
    if axis == "y":
        formula, comp = (lj - li * rho) / al, "D_i"
    else:
        formula, comp = (li - lj / rho) / al, "D_j"
    return OracleReport("transition", formula, est, method, comp, axis)


def transition_sweep(model: LinearSaddleModel, n: int = 20, method: str = "exact") -> list[tuple[Fraction, float]]:
    """Measured outgoing quasi-orders for rho = w + 1/m, m = 1..n (approaching the weight from above)."""
    w = model.weight_i
    return [(w + Fraction(1, m), verify_transition(model, w + Fraction(1, m), method).measured.rho) for m in range(1, n + 1)]


def blowup_pullback_eigenvalues(model: LinearSaddleModel, rho: Real, ramified: bool = False) -> tuple[Fraction, Fraction, Fraction]:
    """Linear part at the origin of the first chart of the rho-weighted blow-up."""
    r = Fraction(rho)
    if r <= 0:
        raise NonpositiveWeight(f"blow-up weight must be positive, got {r}")
    al, li, lj = (Fraction(v) for v in (model.alpha, model.lambda_i, model.lambda_j))
    return (al, r * li if ramified else li, lj - r * li)
