"""Order-by-order perturbation corrections collapse onto the Taylor series.

The homotopy-style expansion embeds dx/dt = f(x) in a family
dx/dt = p f(x), expands x in powers of the dummy parameter p, and sums
at p = 1.  For an autonomous polynomial field expanded about t = 0 the
construction is not an alternative to the Taylor series: the order-j
correction is exactly the single monomial x_j t^j, so the summed
expansion IS the truncated Taylor series.  This script makes that
concrete on a nonlinear example and then checks it across random
polynomial systems.
"""

import numpy as np

from seriesdyn import (
    InitialValueProblem,
    Logistic,
    Polynomial,
    PolyVectorField,
    Spiral,
    TwoSpecies,
    hpm_collapse_check,
    hpm_solve,
    preset_ivp,
    taylor_solve,
)

ORDER = 10


def show_corrections(ivp, label, n_show=5):
    tay = taylor_solve(ivp, ORDER)
    hpm = hpm_solve(ivp, ORDER)
    print(f"{label}: first {n_show} corrections of variable 0")
    print(f"  {'j':>2}  {'taylor coeff x_j':>20}  correction polynomial in t")
    for j in range(n_show):
        xj = tay.series[0].coeffs[j]
        c = hpm.corrections[j][0].coeffs
        terms = [f"{v:+.6g} t^{m}" for m, v in enumerate(c) if v != 0.0]
        body = " ".join(terms) if terms else "0"
        print(f"  {j:>2}  {xj:>20.12g}  {body}")
    ok, dev = hpm_collapse_check(hpm, tay, tol=1e-10)
    print(f"  collapse check at order {ORDER}: passed={ok}, "
          f"worst normalized deviation {dev:.3e}")
    print()


def random_ivp(rng, n):
    # dense random cubic field, coefficients in [-2, 2]
    exps = []
    for total in range(4):
        stack = [()]
        for _ in range(n):
            stack = [e + (k,) for e in stack for k in range(total + 1)]
        exps.extend(e for e in stack if sum(e) == total)
    polys = []
    for _ in range(n):
        coeffs = {e: float(rng.uniform(-2, 2)) for e in exps}
        polys.append(Polynomial.from_coeffs(coeffs, n))
    field = PolyVectorField(tuple(polys))
    return InitialValueProblem(field, rng.uniform(-1, 1, size=n))


def main():
    show_corrections(preset_ivp(Logistic(1.0, -3.0), [1.0]), "logistic x' = x - 3x^2, x0 = 1")
    show_corrections(preset_ivp(TwoSpecies.reference(), [4.0, 10.0]), "two-species competition from (4, 10)")
    show_corrections(preset_ivp(Spiral(-0.5), [2.0, 2.0]), "cubic spiral a = -0.5 from (2, 2)")

    rng = np.random.default_rng(2024)
    worst = 0.0
    count = 30
    for _ in range(count):
        n = int(rng.integers(1, 4))
        order = int(rng.integers(2, ORDER + 1))
        ivp = random_ivp(rng, n)
        ok, dev = hpm_collapse_check(hpm_solve(ivp, order), taylor_solve(ivp, order), tol=1e-10)
        assert ok, f"collapse violated: deviation {dev:.3e}"
        worst = max(worst, dev)
    print(f"{count} random polynomial systems (n <= 3, degree <= 3, orders <= {ORDER}):")
    print(f"  every correction equals its Taylor monomial; worst deviation {worst:.3e}")


if __name__ == "__main__":
    main()
