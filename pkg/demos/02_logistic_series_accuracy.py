"""Accuracy profile of a truncated series against the exact logistic solution.

For dx/dt = x - 3x^2 with x(0) = 1 the closed form is
x(t) = e^t / (3 e^t - 2).  Its nearest singularity to the origin sits at
t = ln(2/3), so the Taylor series about t = 0 converges only for
|t| < ln(3/2) = 0.4055.  Inside that disc the order-10 partial sum is
excellent; outside it the error grows without bound even though the true
solution is smooth and bounded for all t >= 0.
"""

import math

from seriesdyn import Logistic, logistic_exact, logistic_singularity, preset_ivp, taylor_solve

B, A, X0 = 1.0, -3.0, 1.0
ORDER = 10


def main():
    ivp = preset_ivp(Logistic(B, A), [X0])
    sol = taylor_solve(ivp, ORDER)
    sing = logistic_singularity(B, A, X0)
    print(f"nearest singularity: {sing.kind} at t = {sing.location:.6f}, "
          f"radius of convergence {sing.modulus:.6f}")
    print()
    print(f"{'t':>4}  {'exact':>18}  {'order-10 sum':>18}  {'abs error':>12}  {'log10 err':>9}")
    for k in range(1, 11):
        t = k / 10.0
        exact = logistic_exact(B, A, X0, t)
        approx = float(sol.eval(t)[0])
        err = abs(approx - exact)
        print(f"{t:>4.1f}  {exact:>18.12f}  {approx:>18.6f}  {err:>12.4e}  {math.log10(err):>9.3f}")
    print()
    r = sing.modulus
    print(f"the absolute error crosses 1 just past the radius {r:.4f}: the partial")
    print("sum is a polynomial, so beyond the disc of convergence it tracks its own")
    print(f"leading term instead of the solution; at t = 1 it is off by a factor of "
          f"{float(sol.eval(1.0)[0]) / logistic_exact(B, A, X0, 1.0):.1f}")


if __name__ == "__main__":
    main()
