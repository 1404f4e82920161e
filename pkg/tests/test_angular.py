import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from aptrans.angular import density, gauss_nodes, map_to_direction
from aptrans.errors import ShapeMismatchError

SQRT2_2 = math.sqrt(2.0) / 2.0


def test_map_to_direction_endpoints():
    assert map_to_direction(0.0) == (1.0, 0.0)
    xi, eta = map_to_direction(1.0)
    assert xi == pytest.approx(0.0, abs=1e-16)
    assert eta == 1.0
    xi, eta = map_to_direction(0.5)
    assert xi == pytest.approx(SQRT2_2, abs=1e-15)
    assert eta == pytest.approx(SQRT2_2, abs=1e-15)


@pytest.mark.parametrize("lam", [-0.1, 1.1, 2.0])
def test_map_to_direction_domain(lam):
    with pytest.raises(ValueError):
        map_to_direction(lam)


def test_gauss_nodes_single_point():
    q = gauss_nodes(1)
    assert q.nodes[0] == pytest.approx(0.5)
    assert q.weights[0] == pytest.approx(1.0)
    assert q.xi[0] == pytest.approx(SQRT2_2)
    assert q.eta[0] == pytest.approx(SQRT2_2)


def test_gauss_nodes_two_points():
    q = gauss_nodes(2)
    assert np.allclose(q.weights, [0.5, 0.5])
    assert np.allclose(q.nodes, [0.5 - 1 / (2 * math.sqrt(3)),
                                 0.5 + 1 / (2 * math.sqrt(3))])
    # 2-point rule integrates lambda^2 exactly: integral over [0,1] is 1/3
    assert (q.weights * q.nodes**2).sum() == pytest.approx(1 / 3, abs=1e-15)


def test_gauss_nodes_invalid():
    with pytest.raises(ValueError):
        gauss_nodes(0)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 16, 32])
def test_direction_set_invariants(n):
    q = gauss_nodes(n)
    assert abs(q.weights.sum() - 1.0) < 1e-14
    assert np.all(np.abs(q.xi**2 + q.eta**2 - 1.0) < 1e-14)
    assert np.all(np.diff(q.nodes) > 0)
    assert 0.0 < q.nodes[0] and q.nodes[-1] < 1.0
    assert np.all(q.xi > 0) and np.all(q.eta > 0)
    assert len(q.directions) == n


def test_sin2_quadrature_16_points():
    q = gauss_nodes(16)
    # analytic: integral of sin^2(lambda*pi/2) over [0,1] equals 1/2
    val = (q.weights * np.sin(q.nodes * np.pi / 2) ** 2).sum()
    assert abs(val - 0.5) < 1e-12


@pytest.mark.parametrize("n", [1, 2, 4, 8, 16])
def test_polynomial_exactness(n):
    q = gauss_nodes(n)
    rng = np.random.default_rng(n)
    for _ in range(5):
        deg = int(rng.integers(0, 2 * n))  # any degree <= 2n-1
        coeffs = rng.uniform(-2, 2, size=deg + 1)
        quad = sum(c * (q.weights * q.nodes**k).sum() for k, c in enumerate(coeffs))
        exact = sum(c / (k + 1) for k, c in enumerate(coeffs))
        assert abs(quad - exact) <= 1e-13 * max(1.0, abs(exact))


def test_density_constant_state():
    q = gauss_nodes(7)
    fields = [np.full((4, 3), 2.5) for _ in range(q.n)]
    rho = density(fields, [f.copy() for f in fields], q)
    # weights are normalized, so the constant survives to weight-sum roundoff
    assert np.all(np.abs(rho - 2.5) < 1e-14 * 2.5)


def test_density_angular_moment():
    q = gauss_nodes(16)
    ones = np.ones((3, 3))
    r1 = [(1.0 + q.eta[i] ** 2) * ones for i in range(q.n)]
    r2 = [(1.0 + q.eta[i] ** 2) * ones for i in range(q.n)]
    rho = density(r1, r2, q)
    # 1/2 * integral of 2*(1 + sin^2) dlambda = 3/2
    assert np.all(np.abs(rho - 1.5) < 1e-12)


def test_density_even_odd_cancellation():
    q = gauss_nodes(16)
    ones = np.ones((2, 5))
    r1 = [(1.0 + q.eta[i] ** 2) * ones for i in range(q.n)]
    r2 = [(1.0 - q.eta[i] ** 2) * ones for i in range(q.n)]
    rho = density(r1, r2, q)
    assert np.all(np.abs(rho - 1.0) < 1e-14)


def test_density_shape_mismatch():
    q = gauss_nodes(4)
    fields = [np.ones((3, 3))] * 4
    with pytest.raises(ShapeMismatchError):
        density(fields[:3], fields, q)
    with pytest.raises(ShapeMismatchError):
        density(fields, [np.ones((2, 3))] * 4, q)


@given(a=st.floats(-10, 10), b=st.floats(-10, 10), seed=st.integers(0, 2**31))
def test_density_linearity(a, b, seed):
    q = gauss_nodes(5)
    rng = np.random.default_rng(seed)
    r1a = [rng.standard_normal((3, 4)) for _ in range(5)]
    r2a = [rng.standard_normal((3, 4)) for _ in range(5)]
    r1b = [rng.standard_normal((3, 4)) for _ in range(5)]
    r2b = [rng.standard_normal((3, 4)) for _ in range(5)]
    lhs = density([a * x + b * y for x, y in zip(r1a, r1b)],
                  [a * x + b * y for x, y in zip(r2a, r2b)], q)
    rhs = a * density(r1a, r2a, q) + b * density(r1b, r2b, q)
    assert np.all(np.abs(lhs - rhs) <= 1e-11 * (1 + abs(a) + abs(b)))


def test_direction_set_immutable():
    q = gauss_nodes(3)
    with pytest.raises(ValueError):
        q.weights[0] = 2.0
