"""Graph-hypersurface geometry: Hessians, determinants, Gauss-Kronecker curvature.

For the graph of f in (n+1)-space the Gauss-Kronecker curvature is

    G = det(H(f)) / omega^(n+2),   omega = sqrt(1 + sum_i (df/dx_i)^2),

so omega >= 1 always and a developable graph is one with G identically zero.
For product-form (homothetical) specs the Hessian determinant additionally
has a closed form in the component log-derivatives; the partial-pivot LU
determinant stays available as an independent oracle against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, SpecError, ValidationError
from .funcspec import FunctionSpec, Homothetical
from .jets import jet1d, jet_multivariate
from .sampling import points_loguniform


def plu_det(matrix: np.ndarray) -> float:
    """Determinant by Gaussian elimination with partial pivoting.

    Matrices here are small dense symmetric blocks (n <= ~10); no blocking
    or scaling refinements are needed at that size.
    """
    m = np.array(matrix, dtype=float)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValidationError(f"determinant needs a square matrix, got {m.shape}")
    det = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(m[k:, k])))
        if m[p, k] == 0.0:
            return 0.0
        if p != k:
            m[[k, p]] = m[[p, k]]
            det = -det
        det *= m[k, k]
        if k + 1 < n:
            m[k + 1:, k + 1:] -= np.outer(m[k + 1:, k] / m[k, k], m[k, k + 1:])
    return float(det)


def det_scale(matrix: np.ndarray) -> float:
    """Magnitude scale for a determinant: product of the row max-norms.

    Zero tests on determinants are taken relative to this scale, which bounds
    the magnitude of any single expansion term.
    """
    m = np.asarray(matrix, dtype=float)
    return float(np.prod(np.max(np.abs(m), axis=1)))


def hessian(spec: FunctionSpec, point: Sequence[float]) -> np.ndarray:
    """Symmetric Hessian matrix of the spec at the point (exact assembly)."""
    return jet_multivariate(spec, point).hessian


def hessian_det_direct(spec: FunctionSpec, point: Sequence[float]) -> float:
    """Hessian determinant via partial-pivot elimination (the oracle route)."""
    return plu_det(hessian(spec, point))


def hessian_det_closed(spec: FunctionSpec, point: Sequence[float]) -> float:
    """Closed-form Hessian determinant for product specs.

    det H = f^n * [ (f1''/f1) * prod_{i>=2} r_i
                    + r_1 * sum_{i>=2} (f_i'/f_i)^2 * prod_{k>=2, k!=i} r_k ]

    where r_i = (f_i'/f_i)' is evaluated as (f_i'' f_i - f_i'^2) / f_i^2 to
    avoid cancellation when f_i'/f_i is large. Needs every component value
    nonzero at the point (DomainError otherwise); n = 1 reduces to f1''.
    """
    if not isinstance(spec, Homothetical):
        raise SpecError(f"closed-form determinant needs a homothetical spec, got {spec.kind}")
    pt = [float(x) for x in point]
    if len(pt) != spec.n:
        raise ValidationError(
            f"point has {len(pt)} coordinates but the spec has {spec.n} variables")
    jets = [jet1d(c, x) for c, x in zip(spec.components, pt)]
    n = len(jets)
    if n == 1:
        return jets[0].d2
    for k, j in enumerate(jets):
        if j.value == 0.0:
            raise DomainError(
                f"closed-form determinant undefined where component {k + 1} vanishes")
    r = [(j.d2 * j.value - j.d1 * j.d1) / (j.value * j.value) for j in jets]
    q = [(j.d1 / j.value) ** 2 for j in jets]
    f = 1.0
    for j in jets:
        f *= j.value
    prod_tail = 1.0
    for i in range(1, n):
        prod_tail *= r[i]
    term1 = (jets[0].d2 / jets[0].value) * prod_tail
    acc = 0.0
    for i in range(1, n):
        partial = 1.0
        for k in range(1, n):
            if k != i:
                partial *= r[k]
        acc += q[i] * partial
    return f ** n * (term1 + r[0] * acc)


@dataclass(frozen=True)
class CurvatureRecord:
    """Curvature quantities of the graph of a spec at one point.

    ``gk_curvature`` equals ``hessian_det / omega ** (n + 2)`` by
    construction, with omega >= 1 always.
    """

    omega: float
    hessian_det: float
    gk_curvature: float
    n: int


def gauss_kronecker(spec: FunctionSpec, point: Sequence[float]) -> CurvatureRecord:
    """Gauss-Kronecker curvature of the graph of the spec at the point.

    For homothetical specs the determinant uses the closed form, falling back
    to the LU route at points where a component value is exactly zero (the
    closed form divides by component values); other kinds use the LU route.
    """
    jet = jet_multivariate(spec, point)
    n = jet.n
    omega = math.sqrt(1.0 + float(np.dot(jet.gradient, jet.gradient)))
    if isinstance(spec, Homothetical):
        try:
            det = hessian_det_closed(spec, point)
        except DomainError:
            det = plu_det(jet.hessian)
    else:
        det = plu_det(jet.hessian)
    return CurvatureRecord(omega=omega, hessian_det=det,
                           gk_curvature=det / omega ** (n + 2), n=n)


def is_developable(spec: FunctionSpec, sample_points=None, tol: float = 1e-8,
                   seed: int = 42):
    """(max |G| over samples <= tol, that max).

    Default samples are 50 seeded log-uniform points in [0.5, 2]^n.
    """
    if sample_points is None:
        sample_points = points_loguniform(spec.n, 50, seed)
    sample_points = list(sample_points)
    if not sample_points:
        raise ValidationError("developability test needs at least one sample point")
    max_g = max(abs(gauss_kronecker(spec, p).gk_curvature) for p in sample_points)
    return max_g <= tol, max_g
