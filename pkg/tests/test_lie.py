import itertools

import numpy as np
import pytest

from lorentzsoliton.fields import OneForm, VectorField
from lorentzsoliton.jets import exp
from lorentzsoliton.lie import exterior_derivative, flat, lie_bracket, lie_derivative_metric
from lorentzsoliton.metric import MetricSpec, frame_fields, metric_at

from conftest import box_points

D1, D2, D3 = (VectorField.coordinate(i) for i in range(3))


def test_coordinate_fields_commute():
    pts = box_points(20)
    for V, W in itertools.combinations((D1, D2, D3), 2):
        assert np.all(lie_bracket(V, W, pts) == 0)


def test_bracket_u2_u3():
    spec = MetricSpec.exceptional(1, 1)
    _, u2, u3 = frame_fields(spec).u
    pts = box_points(500, seed=1)
    assert np.max(np.abs(lie_bracket(u2, u3, pts) - 1.0 * u2(pts))) <= 1e-10


def test_frame_brackets(spec):
    u1, u2, u3 = frame_fields(spec).u
    pts = box_points(500, seed=2)
    mu, eps = spec.mu, spec.eps
    expected = {
        (0, 1): mu * u3(pts),
        (1, 2): mu * u2(pts),
        (2, 0): mu * u1(pts) + eps * u2(pts),
    }
    u = (u1, u2, u3)
    for (a, b), val in expected.items():
        assert np.max(np.abs(lie_bracket(u[a], u[b], pts) - val)) <= 1e-9
        assert np.max(np.abs(lie_bracket(u[b], u[a], pts) + val)) <= 1e-9
    for a in range(3):
        assert np.max(np.abs(lie_bracket(u[a], u[a], pts))) <= 1e-12


def test_jacobi_identity(spec):
    u1, u2, u3 = frame_fields(spec).u
    pts = box_points(200, seed=3)
    mu, eps = spec.mu, spec.eps

    # inner brackets are known frame combinations, so the outer ones need only first derivatives
    b12 = mu * u3
    b23 = mu * u2
    b31 = mu * u1 + eps * u2
    cyclic = lie_bracket(u1, b23, pts) + lie_bracket(u2, b31, pts) + lie_bracket(u3, b12, pts)
    assert np.max(np.abs(cyclic)) <= 1e-9


def test_killing_translation_has_zero_lie_derivative(spec):
    assert np.max(np.abs(lie_derivative_metric(spec, D1, box_points(200)))) <= 1e-15


def pullback_derivative(spec, flow, jac, p, dt=1e-5):
    """d/dt (phi_t^* g)(p) at t = 0 by central differences along an explicit flow."""

    def pulled(t):
        J = jac(p, t)
        return J.T @ metric_at(spec, flow(p, t)) @ J

    return (pulled(dt) - pulled(-dt)) / (2 * dt)


def test_scaling_field_example():
    spec = MetricSpec.exceptional(1, 1)
    X = VectorField([lambda x1, x2, x3: x1, 0.0, 0.0])
    L = lie_derivative_metric(spec, X, (0, 0, 0))
    assert L[0, 1] == 1.0 and L[0, 0] == 0.0

    def flow(p, t):
        return np.array([p[0] * np.exp(t), p[1], p[2]])

    def jac(p, t):
        return np.diag([np.exp(t), 1.0, 1.0])

    np.testing.assert_allclose(pullback_derivative(spec, flow, jac, np.zeros(3)), L, atol=1e-8)


@pytest.mark.parametrize("mu, eps", [(1.0, 1), (-0.5, -1), (2.0, -1)])
def test_lie_derivative_against_flows(mu, eps):
    spec = MetricSpec.exceptional(mu, eps)
    flows = [
        # x1 d1
        (
            VectorField([lambda x1, x2, x3: x1, 0.0, 0.0]),
            lambda p, t: np.array([p[0] * np.exp(t), p[1], p[2]]),
            lambda p, t: np.diag([np.exp(t), 1.0, 1.0]),
        ),
        # exp(-mu x3) d2 : x2 -> x2 + t exp(-mu x3)
        (
            VectorField([0.0, lambda x1, x2, x3: exp(-mu * x3), 0.0]),
            lambda p, t: np.array([p[0], p[1] + t * np.exp(-mu * p[2]), p[2]]),
            lambda p, t: np.array([[1.0, 0, 0], [0, 1.0, -mu * t * np.exp(-mu * p[2])], [0, 0, 1.0]]),
        ),
        # d3 translation
        (
            D3,
            lambda p, t: np.array([p[0], p[1], p[2] + t]),
            lambda p, t: np.eye(3),
        ),
        # x2 d1 (shear)
        (
            VectorField([lambda x1, x2, x3: x2, 0.0, 0.0]),
            lambda p, t: np.array([p[0] + t * p[1], p[1], p[2]]),
            lambda p, t: np.array([[1.0, t, 0], [0, 1.0, 0], [0, 0, 1.0]]),
        ),
    ]
    for X, flow, jac in flows:
        for p in box_points(5, seed=7, lo=-1, hi=1):
            exact = lie_derivative_metric(spec, X, p)
            approx = pullback_derivative(spec, flow, jac, p)
            assert np.max(np.abs(exact - approx)) <= 1e-6 * (1 + np.max(np.abs(exact)))


def test_lie_derivative_22_example():
    spec = MetricSpec.exceptional(1.3, -1)
    X = VectorField([lambda x1, x2, x3: x2, 0.0, 0.0])
    L = lie_derivative_metric(spec, X, box_points(10))
    np.testing.assert_array_equal(L[:, 1, 1], 2.0)


def _random_polynomial_field(rng):
    """Quadratic polynomial components with random coefficients."""
    monomials = [(a, b, c) for a in range(3) for b in range(3) for c in range(3) if a + b + c <= 2]
    comps = []
    for _ in range(3):
        coef = rng.uniform(-1, 1, len(monomials))

        def comp(x1, x2, x3, coef=coef):
            out = 0.0
            for w, (a, b, c) in zip(coef, monomials):
                term = w
                for base, power in ((x1, a), (x2, b), (x3, c)):
                    for _ in range(power):
                        term = term * base
                out = out + term
            return out

        comps.append(comp)
    return VectorField(comps)


def displayed_lie_derivative(mu, eps, X, p):
    """The six component formulas written out for the exceptional metric."""
    x, d = X.jacobian(p)
    X1, X2, X3 = x[..., 0], x[..., 1], x[..., 2]
    d = lambda i, j, _d=d: _d[..., i - 1, j - 1]  # noqa: E731  d(i, j) = d_j X_i
    x2, x3 = p[..., 1], p[..., 2]
    E = np.exp(-2 * mu * x3)
    L = np.empty(p.shape[:-1] + (3, 3))
    L[..., 0, 0] = (2 / mu) * (eps * (E - 1) * d(1, 1) + mu * d(2, 1) + mu**2 * x2 * d(3, 1) - eps * mu * E * X3)
    L[..., 0, 1] = (1 / mu) * (mu * d(1, 1) + eps * (E - 1) * d(1, 2) + mu * d(2, 2) + mu**2 * x2 * d(3, 2))
    L[..., 0, 2] = (
        mu * x2 * d(1, 1) + (eps / mu) * (E - 1) * d(1, 3) + mu * X2 + d(2, 3) + d(3, 1) + mu * x2 * d(3, 3)
    )
    L[..., 1, 1] = 2 * d(1, 2)
    L[..., 1, 2] = mu * x2 * d(1, 2) + d(1, 3) + d(3, 2)
    L[..., 2, 2] = 2 * mu * x2 * d(1, 3) + 2 * d(3, 3)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        L[..., j, i] = L[..., i, j]
    return L


def test_lie_derivative_matches_displayed_formulas(spec):
    rng = np.random.default_rng(17)
    pts = box_points(100, seed=5)
    for _ in range(20):
        X = _random_polynomial_field(rng)
        got = lie_derivative_metric(spec, X, pts)
        want = displayed_lie_derivative(spec.mu, spec.eps, X, pts)
        assert np.max(np.abs(got - want)) <= 1e-10 * (1 + np.max(np.abs(want)))


def test_flat_of_d3():
    mu = 1.7
    spec = MetricSpec.exceptional(mu, 1)
    w = flat(spec, D3)
    pts = box_points(50)
    np.testing.assert_allclose(w(pts), np.stack([mu * pts[:, 1], 0 * pts[:, 0], 1 + 0 * pts[:, 0]], axis=-1))


def test_flat_of_d2_and_zero():
    spec = MetricSpec.exceptional(-0.5, -1)
    pts = box_points(50)
    np.testing.assert_array_equal(flat(spec, D2)(pts), np.tile([1.0, 0.0, 0.0], (50, 1)))
    assert np.all(flat(spec, VectorField.zero())(pts) == 0)


def test_exterior_derivative_of_constant_form():
    assert np.all(exterior_derivative(OneForm([1.0, 0.0, 0.0]), box_points(10)) == 0)


def test_exterior_derivative_baseline_soliton():
    mu = 1.0
    spec = MetricSpec.exceptional(mu, 1)
    X0 = VectorField([0.0, 0.0, -mu / 2])
    A = exterior_derivative(flat(spec, X0), box_points(100))
    np.testing.assert_allclose(A[:, 0, 1], 0.5 * mu**2, atol=1e-15)
    np.testing.assert_array_equal(A, -np.swapaxes(A, -1, -2))


def test_exterior_derivative_of_exact_form():
    w = OneForm([lambda x1, x2, x3: x3, 0.0, lambda x1, x2, x3: x1])
    assert np.max(np.abs(exterior_derivative(w, box_points(50)))) == 0


def _sharp_of_df(spec, grad_f):
    """X^i = g^ij d_j f using the closed-form inverse metric."""
    mu, eps = spec.mu, spec.eps

    def g22(x1, x2, x3):
        return mu * mu * x2 * x2 - (eps / mu) * (exp(-2 * mu * x3) - 1.0)

    df = grad_f

    return VectorField(
        [
            lambda x1, x2, x3: df[1](x1, x2, x3),
            lambda x1, x2, x3: df[0](x1, x2, x3) + g22(x1, x2, x3) * df[1](x1, x2, x3) - mu * x2 * df[2](x1, x2, x3),
            lambda x1, x2, x3: -mu * x2 * df[1](x1, x2, x3) + df[2](x1, x2, x3),
        ]
    )


def test_flat_of_gradient_is_closed(spec):
    rng = np.random.default_rng(23)
    pts = box_points(200, seed=9)
    for _ in range(10):
        a, b, c, d, e = rng.uniform(-1, 1, 5)
        # f = a x1 x2 x3 + b x1^2 + c x2^2 x3 + d x3^3 + e x1 x3
        grad_f = (
            lambda x1, x2, x3: a * x2 * x3 + 2 * b * x1 + e * x3,
            lambda x1, x2, x3: a * x1 * x3 + 2 * c * x2 * x3,
            lambda x1, x2, x3: a * x1 * x2 + c * x2 * x2 + 3 * d * x3 * x3 + e * x1,
        )
        X = _sharp_of_df(spec, grad_f)
        w = flat(spec, X)
        np.testing.assert_allclose(w(pts), np.stack([f(*pts.T) for f in grad_f], axis=-1), atol=1e-9)
        assert np.max(np.abs(exterior_derivative(w, pts))) <= 1e-10 * (1 + np.max(np.abs(w(pts))))
