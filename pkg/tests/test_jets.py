"""Tests for closed-form jets and the finite-difference oracle."""

import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prodgeom import (
    Composite,
    DomainError,
    ExpFn,
    LogPowFn,
    NumericalError,
    PowFn,
    Power,
    ValidationError,
    evaluate,
    fd_jet,
    jet1d,
    jet_multivariate,
    make_cobb_douglas,
)
from prodgeom.sampling import points_loguniform, random_composite, random_homothetical

E = math.e


def test_jet1d_pow_polynomial():
    j = jet1d(PowFn(gamma=1.0, beta=0.0, alpha=2.0), 3.0)
    assert (j.value, j.d1, j.d2) == (9.0, 6.0, 2.0)


def test_jet1d_exp():
    j = jet1d(ExpFn(gamma=2.0, lam=1.0), 0.0)
    assert (j.value, j.d1, j.d2) == (2.0, 2.0, 2.0)


def test_jet1d_log():
    j = jet1d(LogPowFn(a=0.0, b=1.0, m=1.0), E)
    assert j.value == pytest.approx(1.0, rel=1e-15)
    assert j.d1 == pytest.approx(1.0 / E, rel=1e-15)
    assert j.d2 == pytest.approx(-1.0 / E**2, rel=1e-15)


def test_jet1d_integer_alpha_at_zero_base():
    # alpha = 2 admits x + beta = 0; the linear term must short-circuit
    j = jet1d(PowFn(gamma=3.0, beta=-1.0, alpha=2.0), 1.0)
    assert (j.value, j.d1, j.d2) == (0.0, 0.0, 6.0)
    j = jet1d(PowFn(gamma=3.0, beta=-1.0, alpha=1.0), 1.0)
    assert (j.value, j.d1, j.d2) == (0.0, 3.0, 0.0)


def test_jet1d_domain_guards():
    with pytest.raises(DomainError):
        jet1d(PowFn(gamma=1.0, beta=0.0, alpha=0.5), -1.0)
    with pytest.raises(DomainError):
        jet1d(LogPowFn(a=0.0, b=1.0, m=0.5), 0.5)  # ln(0.5) < 0
    with pytest.raises(DomainError):
        jet1d(LogPowFn(a=0.0, b=1.0, m=1.0), -2.0)


def test_jet1d_overflow_is_numerical_error():
    with pytest.raises(NumericalError):
        jet1d(ExpFn(gamma=1.0, lam=2.0), 1000.0)


@settings(max_examples=200, deadline=None)
@given(gamma=st.floats(0.1, 5.0), lam=st.floats(-3.0, 3.0).filter(lambda v: abs(v) > 1e-3),
       x=st.floats(-2.0, 2.0))
def test_exp_ode_identity(gamma, lam, x):
    j = jet1d(ExpFn(gamma=gamma, lam=lam), x)
    assert abs(j.d1 - lam * j.value) <= 1e-12 * max(abs(j.d1), abs(lam * j.value))


@settings(max_examples=200, deadline=None)
@given(gamma=st.floats(0.1, 5.0), beta=st.floats(0.0, 2.0),
       alpha=st.floats(-3.0, 3.0).filter(lambda v: abs(v) > 1e-3),
       x=st.floats(0.1, 3.0))
def test_pow_ode_identity(gamma, beta, alpha, x):
    j = jet1d(PowFn(gamma=gamma, beta=beta, alpha=alpha), x)
    lhs = (x + beta) * j.d1
    rhs = alpha * j.value
    assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), abs(rhs), 1e-300)


def test_jet_multivariate_monomial():
    # hand differentiation of x1^2 x2^3 at (1, 1)
    spec = make_cobb_douglas(1.0, (2.0, 3.0))
    jet = jet_multivariate(spec, (1.0, 1.0))
    assert jet.value == 1.0
    assert jet.gradient.tolist() == [2.0, 3.0]
    assert jet.hessian.tolist() == [[2.0, 6.0], [6.0, 6.0]]


def test_jet_multivariate_sqrt_cobb_douglas():
    # hand differentiation of sqrt(x1 x2) at (1, 1)
    spec = make_cobb_douglas(1.0, (0.5, 0.5))
    jet = jet_multivariate(spec, (1.0, 1.0))
    assert jet.gradient.tolist() == [0.5, 0.5]
    assert jet.hessian.tolist() == [[-0.25, 0.25], [0.25, -0.25]]


def test_jet_multivariate_composite_square():
    # F(u) = u^2 over u = x1 x2 expands to x1^2 x2^2
    spec = Composite(Power(2.0), (PowFn(1.0, 0.0, 1.0), PowFn(1.0, 0.0, 1.0)))
    jet = jet_multivariate(spec, (1.0, 1.0))
    assert jet.value == 1.0
    assert jet.gradient.tolist() == [2.0, 2.0]
    assert jet.hessian.tolist() == [[2.0, 4.0], [4.0, 2.0]]


def test_jet_value_bitwise_equals_evaluate():
    rng = random.Random(11)
    for _ in range(20):
        spec = random_homothetical(rng)
        point = points_loguniform(spec.n, 1, rng)[0]
        assert jet_multivariate(spec, point).value == evaluate(spec, point)


def test_hessian_symmetry_exact():
    rng = random.Random(5)
    for _ in range(25):
        spec = random_composite(rng)
        point = points_loguniform(spec.n, 1, rng)[0]
        h = jet_multivariate(spec, point).hessian
        assert (h == h.T).all()


def test_point_arity_checked():
    spec = make_cobb_douglas(1.0, (1.0, 2.0))
    with pytest.raises(ValidationError):
        jet_multivariate(spec, (1.0, 2.0, 3.0))


def test_fd_jet_constant():
    jet = fd_jet(lambda p: 5.0, (1.3, 0.7))
    assert np.max(np.abs(jet.gradient)) <= 1e-8
    assert np.max(np.abs(jet.hessian)) <= 1e-8


def test_fd_jet_matches_monomial():
    spec = make_cobb_douglas(1.0, (2.0, 3.0))
    exact = jet_multivariate(spec, (1.0, 1.0))
    approx = fd_jet(lambda p: evaluate(spec, p), (1.0, 1.0))
    assert np.max(np.abs(approx.hessian - exact.hessian)) <= 1e-4 * np.max(np.abs(exact.hessian))


def test_fd_jet_matches_sqrt_gradient_away_from_one():
    spec = make_cobb_douglas(1.0, (0.5, 0.5))
    exact = jet_multivariate(spec, (4.0, 9.0))
    approx = fd_jet(lambda p: evaluate(spec, p), (4.0, 9.0))
    assert exact.gradient.tolist() == [0.75, 1.0 / 3.0]
    assert np.max(np.abs(approx.gradient - exact.gradient)) <= 1e-6 * np.max(np.abs(exact.gradient))


def test_fd_jet_stencil_leaving_domain():
    def half_line(p):
        if p[0] < 1.0:
            raise DomainError("x must stay >= 1")
        return p[0] ** 2

    with pytest.raises(NumericalError):
        fd_jet(half_line, (1.0,))


def test_fd_agreement_property():
    # norm-relative agreement over randomised specs and points in [0.5, 2]^n
    rng = random.Random(42)
    for k in range(60):
        spec = (random_homothetical(rng, n_range=(2, 5)) if k % 2
                else random_composite(rng))
        point = points_loguniform(spec.n, 1, rng)[0]
        exact = jet_multivariate(spec, point)
        approx = fd_jet(lambda p: evaluate(spec, p), point)
        g_scale = max(1.0, float(np.max(np.abs(exact.gradient))))
        h_scale = max(1.0, float(np.max(np.abs(exact.hessian))))
        assert np.max(np.abs(approx.gradient - exact.gradient)) <= 1e-6 * g_scale
        assert np.max(np.abs(approx.hessian - exact.hessian)) <= 1e-4 * h_scale
