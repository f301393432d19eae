"""Fixed-point location and linear classification for 1-D and 2-D fields.

Roots of the vector field are found by Newton iteration seeded on a
rectangular grid; population models in product form additionally get
their closed-form axis and interior candidates injected as seeds, so the
catalog is exact where a closed form exists.  Classification is by the
eigenvalues of the Jacobian at the root.  A purely imaginary pair is
reported as center-linear rather than guessed: linearization cannot
decide spiral stability there, the radial law of the exact solution can.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotAFixedPointError
from .model import PolyVectorField, eval_field, jacobian_at

_RESIDUAL_TOL = 1e-10
_CLASSIFY_RESIDUAL_TOL = 1e-8
_DEDUP_DISTANCE = 1e-6
_FALLBACK_BOX_HALF_WIDTH = 10.0

CLASSIFICATIONS = (
    "stable-node", "unstable-node", "saddle",
    "stable-spiral", "unstable-spiral", "center-linear", "degenerate",
)


@dataclass(frozen=True)
class CriticalPoint:
    """A classified fixed point.

    ``residual`` is the Euclidean norm of the field at ``location``.
    Points produced by ``fixed_points`` satisfy residual < 1e-10;
    ``classify`` also accepts hand-supplied locations up to 1e-8.
    """

    location: np.ndarray
    eigenvalues: tuple[complex, ...]
    classification: str
    residual: float

    def __post_init__(self):
        loc = np.asarray(self.location, dtype=float)
        loc.flags.writeable = False
        object.__setattr__(self, "location", loc)
        object.__setattr__(self, "eigenvalues",
                           tuple(complex(z) for z in self.eigenvalues))
        if self.classification not in CLASSIFICATIONS:
            raise ValueError(f"unknown classification {self.classification!r}")


def _affine_quotient(poly, i: int, n: int):
    """Decompose component i as x_i * (b + sum_j a_j x_j), or None.

    Returns (b, a) with a a length-n array when the polynomial has this
    product form, which is what lets axis intercepts and the interior
    equilibrium be written in closed form.
    """
    const = 0.0
    lin = np.zeros(n)
    for mono, coeff in poly.terms.items():
        exps = list(mono.exponents)
        if exps[i] == 0:
            return None
        exps[i] -= 1
        total = sum(exps)
        if total == 0:
            const += coeff
        elif total == 1:
            lin[exps.index(1)] += coeff
        else:
            return None
    return const, lin


def _product_form(field: PolyVectorField):
    """Per-component (b_i, a_i) decomposition of a product-form field."""
    n = field.dimension
    parts = []
    for i, comp in enumerate(field.components):
        part = _affine_quotient(comp, i, n)
        if part is None:
            return None
        parts.append(part)
    return parts


def _default_box(field: PolyVectorField) -> list[tuple[float, float]]:
    """[-0.1*S, S] per dimension with S = 2*max|b_i/a_ii| when the field
    is in product form with nonzero self-interaction; a fixed fallback
    box otherwise."""
    n = field.dimension
    parts = _product_form(field)
    if parts is not None and all(lin[i] != 0.0 for i, (_, lin) in enumerate(parts)):
        s = 2.0 * max(abs(b / lin[i]) for i, (b, lin) in enumerate(parts))
        if s > 0.0:
            return [(-0.1 * s, s)] * n
    w = _FALLBACK_BOX_HALF_WIDTH
    return [(-w, w)] * n


def _injected_seeds(field: PolyVectorField) -> list[np.ndarray]:
    """Closed-form fixed-point candidates for 2-D product-form fields:
    the origin, the two axis intercepts, and the interior solution of the
    2x2 linear system."""
    if field.dimension != 2:
        return []
    parts = _product_form(field)
    if parts is None:
        return []
    (b1, a1), (b2, a2) = parts
    seeds = [np.zeros(2)]
    if a2[1] != 0.0:
        seeds.append(np.array([0.0, -b2 / a2[1]]))
    if a1[0] != 0.0:
        seeds.append(np.array([-b1 / a1[0], 0.0]))
    mat = np.array([a1, a2])
    if abs(np.linalg.det(mat)) > 0.0:
        seeds.append(np.linalg.solve(mat, [-b1, -b2]))
    return seeds


def _newton(field: PolyVectorField, seed: np.ndarray) -> np.ndarray | None:
    x = seed.astype(float).copy()
    for _ in range(60):
        fx = eval_field(field, x)
        if not np.all(np.isfinite(fx)):
            return None
        if np.linalg.norm(fx) < _RESIDUAL_TOL:
            return x
        jac = jacobian_at(field, x)
        try:
            step = np.linalg.solve(jac, fx)
        except np.linalg.LinAlgError:
            return None
        x = x - step
        if not np.all(np.isfinite(x)) or np.linalg.norm(x) > 1e12:
            return None
    return None


def fixed_points(field: PolyVectorField,
                 search_box: list[tuple[float, float]] | None = None,
                 grid: int = 25) -> list[np.ndarray]:
    """Locations of the field's fixed points, sorted lexicographically.

    Newton iterations are seeded on a ``grid``-per-dimension lattice over
    ``search_box`` (default: a box derived from the model structure, see
    ``_default_box``).  The box places seeds; converged roots are kept
    even if Newton wanders outside it.  Roots closer than 1e-6 are
    merged, every returned root has ||f(x*)|| < 1e-10, and finding
    nothing returns an empty list.
    """
    n = field.dimension
    if n not in (1, 2):
        raise ValueError("fixed_points supports dimensions 1 and 2 only")
    if search_box is None:
        search_box = _default_box(field)
    if len(search_box) != n:
        raise ValueError(f"search_box must have {n} intervals")
    for lo, hi in search_box:
        if not lo < hi:
            raise ValueError("each search interval needs lo < hi")
    if grid < 2:
        raise ValueError("grid must be at least 2")

    axes = [np.linspace(lo, hi, grid) for lo, hi in search_box]
    seeds = _injected_seeds(field)
    if n == 1:
        seeds.extend(np.array([v]) for v in axes[0])
    else:
        for u in axes[0]:
            for v in axes[1]:
                seeds.append(np.array([u, v]))

    roots: list[tuple[np.ndarray, float]] = []
    for seed in seeds:
        x = _newton(field, seed)
        if x is None:
            continue
        res = float(np.linalg.norm(eval_field(field, x)))
        for idx, (known, known_res) in enumerate(roots):
            if np.linalg.norm(x - known) < _DEDUP_DISTANCE:
                if res < known_res:
                    roots[idx] = (x, res)
                break
        else:
            roots.append((x, res))
    return sorted((x for x, _ in roots), key=lambda v: tuple(v))


def classify(field: PolyVectorField, location,
             degeneracy_tol: float = 1e-9) -> CriticalPoint:
    """Classify a fixed point by the Jacobian eigenvalues at ``location``.

    Real pairs give nodes or saddles by sign; complex pairs give spirals
    by the sign of the real part, or center-linear when the real part is
    below ``degeneracy_tol`` relative to the imaginary part.  A vanishing,
    near-repeated, or relatively tiny eigenvalue makes the point
    degenerate.  Raises NotAFixedPointError when ||f(location)|| >= 1e-8.
    """
    x = np.asarray(location, dtype=float)
    if x.ndim != 1 or x.size != field.dimension:
        raise ValueError("location must be a state vector of the field's dimension")
    residual = float(np.linalg.norm(eval_field(field, x)))
    if residual >= _CLASSIFY_RESIDUAL_TOL:
        raise NotAFixedPointError(
            f"residual {residual:.3e} at {x.tolist()} exceeds "
            f"{_CLASSIFY_RESIDUAL_TOL:.0e}")
    jac = jacobian_at(field, x)

    if field.dimension == 1:
        lam = float(jac[0, 0])
        if abs(lam) < degeneracy_tol:
            cls = "degenerate"
        else:
            cls = "stable-node" if lam < 0 else "unstable-node"
        return CriticalPoint(location=x, eigenvalues=(complex(lam),),
                             classification=cls, residual=residual)

    eigs = sorted(np.linalg.eigvals(jac), key=lambda z: (z.real, z.imag))
    lam1, lam2 = (complex(z) for z in eigs)
    scale = max(abs(lam1), abs(lam2))
    if scale == 0.0 or min(abs(lam1), abs(lam2)) < degeneracy_tol * scale:
        cls = "degenerate"
    elif max(abs(lam1.imag), abs(lam2.imag)) >= degeneracy_tol * scale:
        if abs(lam1.real) < degeneracy_tol * abs(lam1.imag):
            cls = "center-linear"
        elif lam1.real < 0:
            cls = "stable-spiral"
        else:
            cls = "unstable-spiral"
    else:
        r1, r2 = lam1.real, lam2.real
        if abs(r1 - r2) < degeneracy_tol * scale:
            cls = "degenerate"
        elif r1 < 0 < r2 or r2 < 0 < r1:
            cls = "saddle"
        elif r1 < 0:
            cls = "stable-node"
        else:
            cls = "unstable-node"
    return CriticalPoint(location=x, eigenvalues=(lam1, lam2),
                         classification=cls, residual=residual)
