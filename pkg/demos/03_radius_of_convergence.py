"""Estimating the radius of convergence from the coefficients alone.

Truncated series are local objects: their useful range is set by the
nearest singularity of the solution in COMPLEX time, even when nothing
special happens on the real axis.  Two coefficient-based estimators are
compared against the analytically known singularity moduli:

  ratio  consecutive-coefficient ratios extrapolated against 1/j
  root   straight-line fit of ln|c_j| vs j, radius = exp(-slope)

The ratio estimator assumes a single dominant real singularity.  A
complex-conjugate pair makes the coefficient signs oscillate with a
period that never settles, and the ratio extrapolation fails badly
there while the root estimator, which only sees magnitudes, stays
reliable.
"""

from seriesdyn import (
    Logistic,
    Spiral,
    logistic_singularity,
    preset_ivp,
    radius_estimate,
    spiral_singularity,
    taylor_solve,
)

ORDER = 30

CASES = [
    ("logistic x0 = 1.0 (real pole)", preset_ivp(Logistic(1.0, -3.0), [1.0]),
     logistic_singularity(1.0, -3.0, 1.0)),
    ("logistic x0 = 0.1 (conjugate pole pair)", preset_ivp(Logistic(1.0, -3.0), [0.1]),
     logistic_singularity(1.0, -3.0, 0.1)),
    ("spiral a = -0.5 from (2, 2) (branch points)", preset_ivp(Spiral(-0.5), [2.0, 2.0]),
     spiral_singularity(-0.5, 2.0, 2.0)),
]


def main():
    print(f"{'case':<44}  {'true radius':>12}  {'ratio est':>12}  {'root est':>12}")
    for label, ivp, sing in CASES:
        series = taylor_solve(ivp, ORDER).series[0]
        ratio = radius_estimate(series, method="ratio").value
        root = radius_estimate(series, method="root").value
        print(f"{label:<44}  {sing.modulus:>12.6f}  {ratio:>12.6f}  {root:>12.6f}")
    print()
    for label, ivp, sing in CASES:
        series = taylor_solve(ivp, ORDER).series[0]
        for method in ("ratio", "root"):
            est = radius_estimate(series, method=method).value
            rel = abs(est - sing.modulus) / sing.modulus
            flag = "  <- assumes one dominant real singularity" if rel > 0.5 else ""
            print(f"{label:<44}  {method:<6} relative error {rel:>9.2e}{flag}")
        print(f"{'':<44}  singularity: {sing.kind} at t = {sing.location:.6f}")
        print()


if __name__ == "__main__":
    main()
