"""Tests for Hessian determinants and Gauss-Kronecker curvature."""

import math
import random

import numpy as np
import pytest

from prodgeom import (
    Composite,
    DomainError,
    ExpFn,
    Homothetical,
    Identity,
    PowFn,
    SpecError,
    gauss_kronecker,
    hessian,
    hessian_det_closed,
    hessian_det_direct,
    is_developable,
    make_cobb_douglas,
)
from prodgeom.geometry import det_scale, plu_det
from prodgeom.sampling import points_loguniform, random_homothetical


def test_hessian_monomial():
    assert hessian(make_cobb_douglas(1.0, (2.0, 3.0)), (1.0, 1.0)).tolist() == \
        [[2.0, 6.0], [6.0, 6.0]]


def test_hessian_sqrt():
    assert hessian(make_cobb_douglas(1.0, (0.5, 0.5)), (1.0, 1.0)).tolist() == \
        [[-0.25, 0.25], [0.25, -0.25]]


def test_hessian_single_variable_at_zero():
    spec = Homothetical((PowFn(1.0, 0.0, 2.0),))
    assert hessian(spec, (0.0,)).tolist() == [[2.0]]
    assert hessian_det_direct(spec, (0.0,)) == 2.0


def test_det_direct_monomial():
    assert hessian_det_direct(make_cobb_douglas(1.0, (2.0, 3.0)), (1.0, 1.0)) == -24.0


def test_det_direct_unit_sum_is_zero():
    det = hessian_det_direct(make_cobb_douglas(1.0, (0.5, 0.5)), (1.0, 1.0))
    assert abs(det) <= 1e-15


def test_det_closed_monomial():
    # bracket by hand: f^2 * (2 * (-3) + (-2) * 9) = -24 at (1, 1)
    assert hessian_det_closed(make_cobb_douglas(1.0, (2.0, 3.0)), (1.0, 1.0)) == -24.0


def test_det_closed_two_exponentials_vanishes():
    spec = Homothetical((PowFn(1.0, 0.0, 2.0), ExpFn(1.0, 1.0), ExpFn(1.0, 1.0)))
    assert abs(hessian_det_closed(spec, (1.0, 1.0, 1.0))) <= 1e-12


def test_det_closed_unit_exponent_sum_vanishes():
    spec = make_cobb_douglas(1.0, (0.25, 0.25, 0.5))
    det = hessian_det_closed(spec, (1.0, 2.0, 3.0))
    assert abs(det) <= 1e-12


def test_det_closed_requires_homothetical():
    spec = Composite(Identity(), (PowFn(1.0, 0.0, 1.0), PowFn(1.0, 0.0, 1.0)))
    with pytest.raises(SpecError):
        hessian_det_closed(spec, (1.0, 1.0))


def test_det_closed_zero_component_raises_but_curvature_falls_back():
    # (x1 - 1)^2 * x2^2 has a vanishing first component at x1 = 1
    spec = Homothetical((PowFn(1.0, -1.0, 2.0), PowFn(1.0, 0.0, 2.0)))
    with pytest.raises(DomainError):
        hessian_det_closed(spec, (1.0, 1.0))
    rec = gauss_kronecker(spec, (1.0, 1.0))
    direct = hessian_det_direct(spec, (1.0, 1.0))
    assert rec.hessian_det == direct


def test_closed_vs_direct_randomised():
    rng = random.Random(42)
    for _ in range(80):
        spec = random_homothetical(rng, n_range=(2, 5))
        point = points_loguniform(spec.n, 1, rng)[0]
        direct = hessian_det_direct(spec, point)
        closed = hessian_det_closed(spec, point)
        assert abs(closed - direct) <= 1e-8 * max(1.0, abs(direct))


def test_gauss_kronecker_monomial():
    rec = gauss_kronecker(make_cobb_douglas(1.0, (2.0, 3.0)), (1.0, 1.0))
    assert rec.omega == pytest.approx(math.sqrt(14.0), rel=1e-15)
    assert rec.hessian_det == -24.0
    assert rec.gk_curvature == pytest.approx(-24.0 / 196.0, rel=1e-12)
    assert rec.n == 2
    assert rec.gk_curvature == rec.hessian_det / rec.omega ** (rec.n + 2)


def test_gauss_kronecker_sqrt_flat():
    rec = gauss_kronecker(make_cobb_douglas(1.0, (0.5, 0.5)), (1.3, 0.8))
    assert abs(rec.gk_curvature) <= 1e-12


def test_gauss_kronecker_parabola_vertex():
    rec = gauss_kronecker(Homothetical((PowFn(1.0, 0.0, 2.0),)), (0.0,))
    assert rec.omega == 1.0
    assert rec.gk_curvature == 2.0


def test_omega_at_least_one():
    rng = random.Random(31)
    for _ in range(20):
        spec = random_homothetical(rng)
        point = points_loguniform(spec.n, 1, rng)[0]
        assert gauss_kronecker(spec, point).omega >= 1.0


def test_is_developable_two_exp_family():
    spec = Homothetical((PowFn(1.0, 0.0, 2.0), ExpFn(1.0, 1.0), ExpFn(2.0, 3.0)))
    flat, max_g = is_developable(spec, points_loguniform(3, 50, 42), tol=1e-9)
    assert flat and max_g <= 1e-9


def test_is_developable_rejects_supersum():
    spec = make_cobb_douglas(1.0, (0.6, 0.6))
    flat, max_g = is_developable(spec, points_loguniform(2, 50, 42))
    assert not flat and max_g > 1e-6


def test_is_developable_unit_sum():
    spec = make_cobb_douglas(1.0, (0.3, 0.7))
    flat, max_g = is_developable(spec, points_loguniform(2, 50, 42), tol=1e-9)
    assert flat and max_g <= 1e-9


def test_scale_covariance_of_determinant():
    # scaling f by c (absorbed in the leading gamma) scales det by c^n
    rng = random.Random(13)
    for _ in range(10):
        spec = random_homothetical(rng, kinds=("pow", "exp"))
        c = rng.uniform(0.5, 3.0)
        head = spec.components[0]
        if isinstance(head, PowFn):
            scaled_head = PowFn(head.gamma * c, head.beta, head.alpha)
        else:
            scaled_head = ExpFn(head.gamma * c, head.lam)
        scaled = Homothetical((scaled_head,) + spec.components[1:])
        point = points_loguniform(spec.n, 1, rng)[0]
        base = hessian_det_closed(spec, point)
        assert hessian_det_closed(scaled, point) == pytest.approx(
            c ** spec.n * base, rel=1e-9)
        assert hessian_det_direct(scaled, point) == pytest.approx(
            c ** spec.n * hessian_det_direct(spec, point), rel=1e-9)


def test_gk_permutation_invariance():
    rng = random.Random(23)
    for _ in range(10):
        spec = random_homothetical(rng, n_range=(3, 4))
        point = points_loguniform(spec.n, 1, rng)[0]
        perm = list(range(spec.n))
        rng.shuffle(perm)
        permuted = Homothetical(tuple(spec.components[k] for k in perm))
        permuted_point = tuple(point[k] for k in perm)
        g = gauss_kronecker(spec, point).gk_curvature
        g_perm = gauss_kronecker(permuted, permuted_point).gk_curvature
        assert g_perm == pytest.approx(g, rel=1e-10, abs=1e-14)


def test_plu_det_against_numpy():
    rng = np.random.default_rng(7)
    for n in (1, 2, 3, 5, 8):
        for _ in range(10):
            m = rng.normal(size=(n, n))
            assert plu_det(m) == pytest.approx(float(np.linalg.det(m)), rel=1e-10)


def test_plu_det_singular():
    m = np.array([[1.0, 2.0], [2.0, 4.0]])
    assert plu_det(m) == pytest.approx(0.0, abs=1e-15)
    assert det_scale(m) == 8.0
