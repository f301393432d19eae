"""Adaptive Dormand-Prince 5(4) integrator with dense output.

This is the numerical baseline the series solutions are judged against.
The propagated solution is 5th order; the embedded 4th-order solution
provides the local error estimate.  Step sizes follow a standard PI
controller on the mixed absolute/relative error norm.  Finite-time
escape is reported as a trajectory status, not an exception, because
movable singularities are a legitimate finding for these models.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RangeError
from .model import InitialValueProblem, eval_field

__all__ = ["IntegrationConfig", "Trajectory", "integrate", "sample"]

# Dormand-Prince 5(4) tableau (FSAL: the 7th stage is f at the new point)
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
# b5 - b4: weights of the embedded error estimate
_E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920,
               -17253 / 339200, 22 / 525, -1 / 40])

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0
# PI controller exponents for a 5(4) pair
_ALPHA = 0.7 / 5
_BETA = 0.4 / 5


@dataclass(frozen=True)
class IntegrationConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_steps: int = 1_000_000
    blowup_norm: float = 1e8

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


@dataclass(frozen=True)
class Trajectory:
    """Accepted integration steps plus per-step metadata.

    ``states[k]`` is the solution at ``ts[k]``; ``derivs[k]`` is f there
    (stored for dense output).  ``step_sizes`` and ``error_estimates``
    describe the accepted step ending at each interior node.  ``status``
    is 'completed', 'blew-up' (state norm crossed the configured
    threshold, or the step size underflowed with the state already far
    beyond its initial scale) or 'stiff-abort' (step budget exhausted or
    the step size underflowed without escape).
    """

    ts: np.ndarray
    states: np.ndarray
    derivs: np.ndarray
    step_sizes: np.ndarray
    error_estimates: np.ndarray
    status: str

    def __post_init__(self):
        for name in ("ts", "states", "derivs", "step_sizes", "error_estimates"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def t_end(self) -> float:
        return float(self.ts[-1])

    @property
    def dimension(self) -> int:
        return self.states.shape[1]


def _error_norm(err, y_old, y_new, cfg):
    scale = cfg.abs_tol + cfg.rel_tol * np.maximum(np.abs(y_old), np.abs(y_new))
    return float(np.sqrt(np.mean((err / scale) ** 2)))


def _initial_step(rhs, y0, f0, t_end, cfg):
    # standard starting-step heuristic: compare solution and derivative
    # scales, then refine with a crude second-derivative probe
    scale = cfg.abs_tol + cfg.rel_tol * np.abs(y0)
    d0 = np.sqrt(np.mean((y0 / scale) ** 2))
    d1 = np.sqrt(np.mean((f0 / scale) ** 2))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h0 = min(h0, t_end)
    f1 = rhs(y0 + h0 * f0)
    d2 = np.sqrt(np.mean(((f1 - f0) / scale) ** 2)) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, t_end)


def integrate(ivp: InitialValueProblem, t_end: float,
              cfg: IntegrationConfig | None = None) -> Trajectory:
    """Integrate dx/dt = f(x) from t = 0 to ``t_end``.

    Returns every accepted step.  Deterministic: identical inputs give
    bit-identical trajectories.
    """
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    cfg = cfg or IntegrationConfig()
    fld = ivp.field

    def rhs(y):
        return eval_field(fld, y)

    t = 0.0
    y = np.array(ivp.x0, dtype=float)
    f = rhs(y)
    ts = [t]
    ys = [y.copy()]
    fs = [f.copy()]
    hs: list[float] = []
    errs: list[float] = []
    status = "completed"

    h = _initial_step(rhs, y, f, t_end, cfg)
    err_prev = 1.0
    attempts = 0
    k = np.empty((7, len(y)))
    # Algebraic escape such as (t_c - t)**-0.5 grows too slowly to cross
    # blowup_norm before t exhausts double precision near t_c, so a step
    # size underflow with the state far beyond its initial scale is
    # reported as blow-up rather than stiffness.
    escape_scale = 1e3 * (1.0 + float(np.max(np.abs(y))))

    while t < t_end:
        if attempts >= cfg.max_steps:
            status = "stiff-abort"
            break
        h = min(h, t_end - t)
        if t + h == t:  # step size underflow: cannot advance
            status = "blew-up" if np.max(np.abs(y)) > escape_scale else "stiff-abort"
            break
        attempts += 1

        k[0] = f
        for s in range(1, 7):
            k[s] = rhs(y + h * (_A[s] @ k[:s]))
        y_new = y + h * (_B5 @ k)
        err_vec = h * (_E @ k)
        err = _error_norm(err_vec, y, y_new, cfg)

        if np.isfinite(err) and err <= 1.0:
            t += h
            y = y_new
            f = k[6]  # FSAL
            ts.append(t)
            ys.append(y.copy())
            fs.append(f.copy())
            hs.append(h)
            errs.append(err)
            if np.max(np.abs(y)) > cfg.blowup_norm:
                status = "blew-up"
                break
            factor = _SAFETY * err ** (-_ALPHA) * err_prev ** _BETA if err > 0 \
                else _MAX_FACTOR
            h *= min(_MAX_FACTOR, max(_MIN_FACTOR, factor))
            err_prev = max(err, 1e-10)
        else:
            shrink = _SAFETY * err ** (-0.2) if np.isfinite(err) else 0.1
            h *= max(0.1, min(1.0, shrink))

    return Trajectory(
        ts=np.array(ts),
        states=np.array(ys),
        derivs=np.array(fs),
        step_sizes=np.array(hs),
        error_estimates=np.array(errs),
        status=status,
    )


def sample(traj: Trajectory, times) -> np.ndarray:
    """States at the requested times, shape (len(times), n).

    Node hits return the stored states exactly; interior points use cubic
    Hermite interpolation on the bracketing accepted step with the stored
    endpoint derivatives.
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    ts = traj.ts
    if times.size and (times.min() < ts[0] or times.max() > ts[-1]):
        raise RangeError(
            f"sample times must lie in [{ts[0]}, {ts[-1]}]"
        )
    out = np.empty((len(times), traj.dimension))
    idx = np.searchsorted(ts, times, side="right") - 1
    idx = np.clip(idx, 0, len(ts) - 2)
    for m, (t, i) in enumerate(zip(times, idx)):
        if t == ts[i]:
            out[m] = traj.states[i]
            continue
        if t == ts[i + 1]:
            out[m] = traj.states[i + 1]
            continue
        h = ts[i + 1] - ts[i]
        th = (t - ts[i]) / h
        th2 = th * th
        th3 = th2 * th
        h00 = 2 * th3 - 3 * th2 + 1
        h10 = th3 - 2 * th2 + th
        h01 = -2 * th3 + 3 * th2
        h11 = th3 - th2
        out[m] = (h00 * traj.states[i] + h10 * h * traj.derivs[i]
                  + h01 * traj.states[i + 1] + h11 * h * traj.derivs[i + 1])
    return out
