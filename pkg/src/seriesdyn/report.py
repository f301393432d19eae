"""Command implementations behind the CLI: tables, CSV curves, reports.

Every command builds its complete output as a string so that repeated
invocations with identical inputs are byte-identical.  CSV output is
RFC-4180-style (csv module, minimal quoting, LF line ends) with floats
printed at 12 significant digits; fixed-point footers ride along as
'#'-prefixed comment lines so the data block stays rectangular.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, InsufficientOrderError, IntegrationFailedError
from .exact import logistic_exact, logistic_singularity, spiral_exact, spiral_singularity
from .integrate import IntegrationConfig, integrate, sample
from .model import Logistic, Spiral, TwoSpecies, preset_ivp
from .modelfile import ModelFile
from .phase import classify, fixed_points
from .series import radius_estimate, series_eval, taylor_solve

_FLOAT_FMT = "{:.11e}"  # 12 significant digits


@dataclass(frozen=True)
class ComparisonRow:
    """One time point of a series-vs-oracle comparison.

    ``series`` maps requested order to the per-variable partial-sum
    values as (order, values) pairs.  ``log_errors`` follows the same
    order sequence and holds log10 |(exact - series)/exact|; it is only
    populated for one-variable models with nonzero exact value.
    """

    t: float
    numerical: tuple[float, ...]
    exact: tuple[float, ...] | None
    series: tuple[tuple[int, tuple[float, ...]], ...]
    log_errors: tuple[float, ...] | None


def _var_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


def _fmt(value: float) -> str:
    return _FLOAT_FMT.format(float(value))


def _fmt_complex(z: complex, fmt: str = "{:.6g}") -> str:
    re = z.real + 0.0  # normalize -0.0
    im = z.imag + 0.0
    if im == 0.0:
        return fmt.format(re)
    sign = "+" if im >= 0 else "-"
    return f"{fmt.format(re)}{sign}{fmt.format(abs(im))}i"


def _aligned(rows: list[list[str]]) -> str:
    """Space-aligned text table; first row is the header."""
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in rows]
    return "\n".join(lines) + "\n"


def table1_rows() -> list[ComparisonRow]:
    """The ten comparison rows behind the logistic log-error table."""
    b, a, x0 = 1.0, -3.0, 1.0
    ivp = preset_ivp(Logistic(b, a), [x0])
    ts = [i / 10 for i in range(1, 11)]
    sol = taylor_solve(ivp, 4)
    traj = integrate(ivp, 1.0)
    numerical = sample(traj, ts)
    rows = []
    for t, num in zip(ts, numerical):
        ex = logistic_exact(b, a, x0, t)
        s4 = float(series_eval(sol.series[0], t))
        log_err = math.log10(abs((ex - s4) / ex))
        rows.append(ComparisonRow(
            t=t, numerical=(float(num[0]),), exact=(ex,),
            series=((4, (s4,)),), log_errors=(log_err,)))
    return rows


def cmd_table1(full_precision: bool = False) -> str:
    """Log-error table for the 4th-order logistic series, t = 0.1..1.0.

    The last column is log10 |(exact - series)/exact|, printed to 3
    significant figures unless ``full_precision`` is set.
    """
    val_fmt = "{:.17g}" if full_precision else "{:.10g}"
    err_fmt = "{:.17g}" if full_precision else "{:.3g}"
    table = [["t", "series4", "exact", "numerical", "log10-rel-error"]]
    for row in table1_rows():
        table.append([
            f"{row.t:.1f}",
            val_fmt.format(row.series[0][1][0]),
            val_fmt.format(row.exact[0]),
            val_fmt.format(row.numerical[0]),
            err_fmt.format(row.log_errors[0]),
        ])
    return _aligned(table)


def cmd_phase2d(orders: list[int] | None = None, t_end: float = 300.0,
                samples: int = 121) -> str:
    """CSV curves for the two-species model: integrator vs partial sums.

    Columns are t, x_num, y_num, then x_sK, y_sK per requested order.
    The crossover column is 1 on the first row where the highest
    requested order deviates from the numerical curve by more (Euclidean
    norm) than the lowest does, 0 elsewhere.  Fixed points follow as a
    '#'-comment footer.
    """
    orders = sorted(set(orders)) if orders else [4, 10]
    if not orders or any(k < 1 for k in orders):
        raise ValueError("orders must be positive integers")
    if samples < 2:
        raise ValueError("samples must be at least 2")
    preset = TwoSpecies.reference()
    ivp = preset_ivp(preset, [4.0, 10.0])
    ts = np.linspace(0.0, t_end, samples)
    traj = integrate(ivp, t_end)
    if traj.status != "completed":
        raise IntegrationFailedError(
            f"integration ended with status {traj.status!r}")
    num = sample(traj, ts)

    sums = {}
    for k in orders:
        sol = taylor_solve(ivp, k)
        sums[k] = np.column_stack([series_eval(s, ts) for s in sol.series])

    lo, hi = orders[0], orders[-1]
    dev_lo = np.linalg.norm(sums[lo] - num, axis=1)
    dev_hi = np.linalg.norm(sums[hi] - num, axis=1)
    worse = dev_hi > dev_lo
    first_cross = int(np.argmax(worse)) if worse.any() and lo != hi else None

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["t", "x_num", "y_num"]
    for k in orders:
        header += [f"x_s{k}", f"y_s{k}"]
    header.append("crossover")
    writer.writerow(header)
    for i, t in enumerate(ts):
        row = [_fmt(t), _fmt(num[i, 0]), _fmt(num[i, 1])]
        for k in orders:
            row += [_fmt(sums[k][i, 0]), _fmt(sums[k][i, 1])]
        row.append("1" if i == first_cross else "0")
        writer.writerow(row)

    field = ivp.field
    buf.write("# fixed points: location, classification, eigenvalues\n")
    for loc in fixed_points(field):
        cp = classify(field, loc)
        eigs = ", ".join(_fmt_complex(z, _FLOAT_FMT) for z in cp.eigenvalues)
        buf.write(f"# ({_fmt(loc[0])}, {_fmt(loc[1])}) {cp.classification} "
                  f"[{eigs}]\n")
    return buf.getvalue()


def cmd_spiral(order: int = 5, t_end: float = 20.0, samples: int = 201) -> str:
    """CSV curves for the spiral model: integrator, closed form, series."""
    if order < 1:
        raise ValueError("order must be at least 1")
    if samples < 2:
        raise ValueError("samples must be at least 2")
    a, x0, y0 = -0.5, 2.0, 2.0
    ivp = preset_ivp(Spiral(a), [x0, y0])
    ts = np.linspace(0.0, t_end, samples)
    traj = integrate(ivp, t_end)
    if traj.status != "completed":
        raise IntegrationFailedError(
            f"integration ended with status {traj.status!r}")
    num = sample(traj, ts)
    sol = taylor_solve(ivp, order)
    ser = np.column_stack([series_eval(s, ts) for s in sol.series])

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "x_num", "y_num", "x_exact", "y_exact",
                     "x_series", "y_series"])
    for i, t in enumerate(ts):
        ex, ey = spiral_exact(a, x0, y0, float(t))
        writer.writerow([_fmt(t), _fmt(num[i, 0]), _fmt(num[i, 1]),
                         _fmt(ex), _fmt(ey), _fmt(ser[i, 0]), _fmt(ser[i, 1])])
    return buf.getvalue()


def _analytic_singularity(mf: ModelFile):
    """Singularity of the model's closed form, when one exists."""
    x0 = mf.ivp.x0
    try:
        if isinstance(mf.preset, Logistic):
            return logistic_singularity(mf.preset.b, mf.preset.a, float(x0[0]))
        if isinstance(mf.preset, Spiral):
            return spiral_singularity(mf.preset.a, float(x0[0]), float(x0[1]))
    except (ValueError, DegenerateError):
        return None
    return None


def cmd_radius(mf: ModelFile, order: int | None = None) -> str:
    """Radius-of-convergence report: coefficient estimates per variable,
    plus the analytic singularity modulus when a closed form exists."""
    k = mf.order if order is None else order
    if k < 8:
        raise InsufficientOrderError(
            f"radius estimation needs order >= 8, got {k}")
    sol = taylor_solve(mf.ivp, k)
    names = _var_names(mf.ivp.field.dimension)
    lines = [f"radius-of-convergence report: model {mf.kind}, order K={k}"]
    estimates = {}
    for name, series in zip(names, sol.series):
        ratio = radius_estimate(series, method="ratio")
        root = radius_estimate(series, method="root")
        estimates[name] = (ratio.value, root.value)
        lines.append(f"variable {name}: ratio {_fmt(ratio.value)}  "
                     f"root {_fmt(root.value)}")
    sing = _analytic_singularity(mf)
    if sing is None:
        lines.append("analytic singularity modulus: unavailable"
                     " (no closed form for this model)")
    elif sing.degenerate:
        lines.append("analytic singularity modulus: inf"
                     " (degenerate: initial state is an equilibrium)")
    else:
        loc = _fmt_complex(sing.location, _FLOAT_FMT)
        lines.append(f"analytic singularity modulus: {_fmt(sing.modulus)}"
                     f" ({sing.kind} at t = {loc})")
        for name in names:
            ratio_v, root_v = estimates[name]
            rel = tuple("n/a" if not math.isfinite(v)
                        else "{:.3g}".format(abs(v - sing.modulus) / sing.modulus)
                        for v in (ratio_v, root_v))
            lines.append(f"relative disagreement {name}: ratio {rel[0]}"
                         f"  root {rel[1]}")
    return "\n".join(lines) + "\n"


def cmd_solve(mf: ModelFile) -> str:
    """CSV of the numerical solution and the configured-order partial sums
    on the model file's time grid."""
    ts = np.linspace(0.0, mf.grid_end, mf.grid_count)
    cfg = IntegrationConfig(rel_tol=mf.rel_tol, abs_tol=mf.abs_tol)
    traj = integrate(mf.ivp, mf.grid_end, cfg)
    if traj.status != "completed":
        raise IntegrationFailedError(
            f"integration ended with status {traj.status!r} at "
            f"t = {traj.ts[-1]:.6g} (before requested end {mf.grid_end:.6g})")
    num = sample(traj, ts)
    sol = taylor_solve(mf.ivp, mf.order)
    ser = np.column_stack([series_eval(s, ts) for s in sol.series])
    names = _var_names(mf.ivp.field.dimension)

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t"] + [f"{n}_num" for n in names]
                    + [f"{n}_s{mf.order}" for n in names])
    for i, t in enumerate(ts):
        writer.writerow([_fmt(t)] + [_fmt(v) for v in num[i]]
                        + [_fmt(v) for v in ser[i]])
    return buf.getvalue()


def cmd_fixed_points(mf: ModelFile) -> str:
    """Text table of the model's fixed points with eigenvalues and class."""
    field = mf.ivp.field
    points = [classify(field, loc) for loc in fixed_points(field)]
    names = _var_names(field.dimension)
    header = names + [f"eigenvalue-{i + 1}" for i in range(field.dimension)] \
        + ["class"]
    table = [header]
    for cp in points:
        table.append(["{:.6g}".format(v + 0.0) for v in cp.location]
                     + [_fmt_complex(z) for z in cp.eigenvalues]
                     + [cp.classification])
    out = f"fixed points found: {len(points)}\n" + _aligned(table)
    if any(cp.classification == "center-linear" for cp in points):
        out += ("note: center-linear means the linearization has a purely "
                "imaginary eigenvalue pair; nonlinear terms decide the "
                "actual stability there.\n")
    return out
