"""Closed-form solutions and singularity locations for the solvable presets.

Two of the preset families admit elementary solutions: the logistic
family ``x' = x(b + a x)`` and the rotating cubic spiral.  These closed
forms are the analytic oracles the series solutions and the numerical
integrator are judged against, and their singularity locations explain
where and why the truncated series stop converging.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateError, SingularityError

_SINGULARITY_TOL = 1e-12


@dataclass(frozen=True)
class Singularity:
    """A movable singularity of a closed-form solution.

    ``location`` is the complex time nearest the origin at which the
    solution fails to be analytic; ``modulus`` is its absolute value and
    bounds the radius of convergence of the time series about t = 0.
    ``kind`` is 'pole' or 'branch-point'.  ``degenerate`` marks the case
    where the initial state is itself an equilibrium: the solution is
    constant, there is no finite singularity, and the modulus is +inf.
    """

    location: complex
    modulus: float
    kind: str
    degenerate: bool = False

    def __post_init__(self):
        if self.kind not in ("pole", "branch-point"):
            raise ValueError(f"unknown singularity kind {self.kind!r}")
        if not self.degenerate and not self.modulus > 0:
            raise ValueError("singularity modulus must be positive")


@dataclass(frozen=True)
class PolarInit:
    """Initial state of the spiral model in polar form."""

    r0: float
    theta0: float

    def __post_init__(self):
        if self.r0 < 0:
            raise ValueError("r0 must be non-negative")


def logistic_exact(b: float, a: float, x0: float, t: float) -> float:
    """Exact solution of x' = x(b + a x), x(0) = x0, at time t.

    For b > 0 this is b*x0*e^(bt) / ((b + a*x0) - a*x0*e^(bt)); the
    denominator follows from partial-fraction integration of
    dx / (x (b + a x)) = dt and satisfies the ODE identically, with the
    pole condition e^(bt) = 1 + b/(a*x0).  For b = 0 the solution
    degenerates to x0 / (1 - a*x0*t).

    Raises SingularityError when t is within 1e-12 of a real-axis pole.
    """
    if b < 0:
        raise ValueError("b must be non-negative")
    if b == 0.0:
        pole = _real_pole_b0(a, x0)
        if pole is not None and abs(t - pole) <= _SINGULARITY_TOL:
            raise SingularityError(f"t = {t} is at the real pole t_c = {pole}")
        return x0 / (1.0 - a * x0 * t)

    pole = _real_pole(b, a, x0)
    if pole is not None and abs(t - pole) <= _SINGULARITY_TOL:
        raise SingularityError(f"t = {t} is at the real pole t_c = {pole}")
    bt = b * t
    if bt >= 0.0:
        # divide through by e^(bt) so large bt cannot overflow
        return b * x0 / ((b + a * x0) * math.exp(-bt) - a * x0)
    return b * x0 * math.exp(bt) / ((b + a * x0) - a * x0 * math.exp(bt))


def _real_pole(b: float, a: float, x0: float) -> float | None:
    """Real-axis pole time of the b > 0 logistic solution, if any."""
    if a == 0.0 or x0 == 0.0:
        return None  # pure exponential, entire
    q = 1.0 + b / (a * x0)
    if q <= 0.0:
        return None  # pole is off the real axis (or absent when q = 0)
    return math.log(q) / b


def _real_pole_b0(a: float, x0: float) -> float | None:
    if a == 0.0 or x0 == 0.0:
        return None  # constant solution
    return 1.0 / (a * x0)


def logistic_singularity(b: float, a: float, x0: float) -> Singularity:
    """Nearest-to-origin singularity of the logistic solution.

    For b > 0 the poles solve e^(bt) = 1 + b/(a*x0) =: q, so the
    principal branch t = (ln|q| + i*arg(q)) / b is nearest the origin;
    arg(q) is 0 for q > 0 and pi for q < 0.  For b = 0 the pole is real
    at t = 1/(a*x0).  When q = 0 the initial state is the equilibrium
    -b/a, the solution is constant, and the result is flagged degenerate
    with infinite modulus.
    """
    if b < 0:
        raise ValueError("b must be non-negative")
    if a == 0.0 or x0 == 0.0:
        raise ValueError("a and x0 must be nonzero for a pole to exist")
    if b == 0.0:
        loc = complex(1.0 / (a * x0), 0.0)
        return Singularity(location=loc, modulus=abs(loc), kind="pole")
    q = 1.0 + b / (a * x0)
    if q == 0.0:
        return Singularity(location=complex(-math.inf, 0.0),
                           modulus=math.inf, kind="pole", degenerate=True)
    loc = complex(math.log(abs(q)), 0.0 if q > 0 else math.pi) / b
    return Singularity(location=loc, modulus=abs(loc), kind="pole")


def polar_init(x0: float, y0: float) -> PolarInit:
    """Polar form (r0, theta0) of a spiral initial state.

    Uses atan2 so every quadrant is resolved.  The origin is the spiral's
    fixed point and has no polar angle.
    """
    if x0 == 0.0 and y0 == 0.0:
        raise DegenerateError("the origin is the fixed point; no polar form")
    return PolarInit(r0=math.hypot(x0, y0), theta0=math.atan2(y0, x0))


def spiral_exact(a: float, x0: float, y0: float, t: float) -> tuple[float, float]:
    """Exact solution of the rotating cubic spiral at time t.

    x = r0*cos(theta0 + t)/sqrt(1 - 2*a*r0^2*t) and the matching sine for
    y: rigid unit-rate rotation with an algebraically growing or decaying
    radius.  Raises SingularityError when the radicand 1 - 2*a*r0^2*t is
    not positive.
    """
    if x0 == 0.0 and y0 == 0.0:
        return (0.0, 0.0)  # fixed point
    if t == 0.0:
        return (float(x0), float(y0))  # exact by construction
    p = polar_init(x0, y0)
    radicand = 1.0 - 2.0 * a * p.r0 ** 2 * t
    if radicand <= 0.0:
        raise SingularityError(
            f"radicand 1 - 2*a*r0^2*t = {radicand} is not positive at t = {t}")
    scale = p.r0 / math.sqrt(radicand)
    return (scale * math.cos(p.theta0 + t), scale * math.sin(p.theta0 + t))


def spiral_singularity(a: float, x0: float, y0: float) -> Singularity:
    """Movable branch point of the spiral solution, t_c = 1/(2*a*r0^2).

    The square root in the closed form branches there; for a > 0 the
    real-axis solution blows up in finite time at t_c, while for a < 0
    the singularity sits on the negative real axis and still limits the
    series radius even though the forward solution is global.
    """
    if a == 0.0:
        raise ValueError("a must be nonzero for a singularity to exist")
    if x0 == 0.0 and y0 == 0.0:
        raise DegenerateError("the origin is the fixed point; no singularity")
    r0_sq = x0 * x0 + y0 * y0
    loc = complex(1.0 / (2.0 * a * r0_sq), 0.0)
    return Singularity(location=loc, modulus=abs(loc), kind="branch-point")
