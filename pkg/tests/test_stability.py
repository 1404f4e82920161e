import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aptrans.stability import (GrowthParams, Params1D,
                               certify_proposition, dt_upper_bound, eigenvalues,
                               growth_matrix, numerics_timestep, phi_upper_bound,
                               scheme_1d_step, spectral_radius,
                               spectral_radius_scan)

params_strategy = st.builds(
    dict,
    epsilon=st.floats(1e-6, 1.0),
    sigma_s=st.floats(0.0, 10.0),
    sigma_a=st.floats(0.0, 10.0),
    dt=st.floats(1e-8, 1.0),
    h=st.floats(1e-3, 1e-1),
    phi=st.floats(0.0, 1e3),
    theta=st.floats(0.0, 2 * math.pi),
).filter(lambda p: p["sigma_s"] + p["epsilon"] ** 2 * p["sigma_a"] > 0)


def test_theta_zero_diagonal():
    p = GrowthParams(epsilon=0.5, sigma_s=2.0, sigma_a=1.5, dt=0.01, h=0.02,
                     phi=3.0, theta=0.0)
    gm = growth_matrix(p)
    eps2 = 0.25
    expected = np.diag([1 - 1.5 * 0.01, (1 - 1.5 * 0.01) * eps2 / (eps2 + 2.0 * 0.01)])
    assert np.allclose(gm.matrix, expected, atol=1e-15)


def test_free_streaming_half_trace_and_determinant():
    # no scattering, no absorption, phi = 0: det = 1, g = 1 + dt^2 d^2/(2 eps^2)
    p = GrowthParams(epsilon=0.3, sigma_s=0.0, sigma_a=0.0, dt=1e-3, h=0.01,
                     phi=0.0, theta=1.7)
    gm = growth_matrix(p)
    assert gm.det == 1.0
    assert gm.g == pytest.approx(1.0 + p.dt**2 * p.d2 / (2 * 0.3**2), rel=1e-12)


def test_free_streaming_unit_circle_eigenvalues():
    p = GrowthParams(epsilon=0.5, sigma_s=0.0, sigma_a=0.0, dt=1e-4, h=0.05,
                     phi=0.0, theta=0.9)
    gm = growth_matrix(p)
    assert gm.g**2 < gm.det  # complex pair
    lam1, lam2 = eigenvalues(p)
    assert abs(abs(lam1) - 1.0) < 1e-12 and abs(abs(lam2) - 1.0) < 1e-12
    assert spectral_radius(p) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=200)
@given(p=params_strategy)
def test_closed_forms_match_matrix(p):
    gp = GrowthParams(**p)
    gm = growth_matrix(gp)
    trace = gm.matrix[0, 0] + gm.matrix[1, 1]
    det = gm.matrix[0, 0] * gm.matrix[1, 1] - gm.matrix[0, 1] * gm.matrix[1, 0]
    scale = max(1.0, abs(gm.g), abs(gm.det))
    assert abs(trace.imag) < 1e-12 * scale and abs(det.imag) < 1e-12 * scale
    assert abs(0.5 * trace.real - gm.g) < 1e-12 * scale
    assert abs(det.real - gm.det) < 1e-12 * scale


@settings(max_examples=200)
@given(p=params_strategy)
def test_eigenvalue_trichotomy(p):
    gp = GrowthParams(**p)
    gm = growth_matrix(gp)
    lam1, lam2 = eigenvalues(gp)
    scale = max(1.0, abs(gm.g), abs(gm.det))
    assert abs(lam1 * lam2 - gm.det) < 1e-12 * scale**2
    assert abs(lam1 + lam2 - 2 * gm.g) < 1e-12 * scale
    if gm.g**2 > gm.det:
        assert lam1.imag == 0 and lam2.imag == 0
    elif gm.g**2 < gm.det:
        assert lam1.imag != 0 and lam1 == lam2.conjugate()
    # spectral radius agrees with a straight eigenvalue solve; near the
    # double-root branch point both are |g| up to sqrt(|disc|) noise
    direct = max(abs(v) for v in np.linalg.eigvals(gm.matrix))
    assert spectral_radius(gp) == pytest.approx(direct, rel=1e-7, abs=1e-9)


def test_determinant_positive_under_cfl():
    rng = np.random.default_rng(42)
    for _ in range(300):
        eps = 10.0 ** rng.uniform(-6, 0)
        sigma_s = rng.uniform(0, 10)
        sigma_a = rng.uniform(0, 10)
        sigma_t = sigma_s + eps**2 * sigma_a
        if sigma_t <= 0:
            continue
        h = 10.0 ** rng.uniform(-3, -1)
        dt = rng.uniform(0.1, 1.0) * dt_upper_bound(eps, h, sigma_t, sigma_a)
        phi = rng.uniform(0, 1) * phi_upper_bound(eps, h, sigma_t)
        gm = growth_matrix(GrowthParams(epsilon=eps, sigma_s=sigma_s, sigma_a=sigma_a,
                                        dt=dt, h=h, phi=phi,
                                        theta=rng.uniform(0, 2 * np.pi)))
        assert gm.det >= 0.0


def test_scan_matches_scalar():
    thetas = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    radii = spectral_radius_scan(0.05, 1.3, 0.7, 1e-4, 0.01, 100.0, thetas)
    for th, rad in zip(thetas[::7], radii[::7]):
        p = GrowthParams(epsilon=0.05, sigma_s=1.3, sigma_a=0.7, dt=1e-4, h=0.01,
                         phi=100.0, theta=float(th))
        assert rad == pytest.approx(spectral_radius(p), rel=1e-14)


def test_certify_production_parameters():
    eps, h, sigma_s, sigma_a = 1.0, 0.01, 1.0, 0.0
    sigma_t = sigma_s
    dt = numerics_timestep(eps, h, sigma_t, sigma_a)
    phi = phi_upper_bound(eps, h, sigma_t)
    rep = certify_proposition(eps, sigma_s, sigma_a, dt, h, phi)
    assert rep.conditions_ok and rep.stable and rep.passed
    assert rep.worst_radius <= 1.0 + 1e-12


def test_certify_reports_phi_violation():
    # hyperbolic regime with the naive phi = 1/eps^2: condition violated and
    # the scan actually finds an amplifying mode
    eps, h, sigma_s, sigma_a = 1.0, 0.01, 1.0, 0.0
    dt = numerics_timestep(eps, h, sigma_s, sigma_a)
    rep = certify_proposition(eps, sigma_s, sigma_a, dt, h, phi=1.0 / eps**2)
    assert not rep.conditions_ok
    assert "phi outside [0, phi_max]" in rep.violations
    assert rep.worst_radius > 1.0
    assert not rep.passed


def test_certify_reports_dt_violation():
    eps, h, sigma_s = 1.0, 0.01, 1.0
    sigma_a = 2.0 / 1e-3  # makes dt = 1e-3 violate dt <= 1/sigma_a
    rep = certify_proposition(eps, sigma_s, sigma_a, dt=1e-3, h=h, phi=0.0)
    assert not rep.conditions_ok
    assert "dt above CFL bound" in rep.violations


def test_certify_needs_enough_angles():
    with pytest.raises(ValueError):
        certify_proposition(1.0, 1.0, 0.0, 1e-3, 0.01, 0.0, n_theta=4)


def test_numerics_timestep_values():
    # eps=1, h=1/64, sigma_t=1, sigma_a=0: 0.9 * 1/2 * max(1/128, 1/16384)
    assert numerics_timestep(1.0, 1 / 64, 1.0, 0.0) == pytest.approx(0.9 / 256)
    # absorption guard dominates
    assert numerics_timestep(1.0, 1 / 64, 1.0, 1000.0) == pytest.approx(0.9 * 0.5e-3)


def test_phi_upper_bound_branches():
    assert phi_upper_bound(1.0, 1 / 150, 1.0) == pytest.approx(1 / 300)
    assert phi_upper_bound(1e-2, 1 / 32, 1.0) == pytest.approx(1e4)
    # continuity at the switch h sigma_t = 2 eps
    eps = 0.37
    assert phi_upper_bound(eps, 2 * eps, 1.0) == pytest.approx(1 / eps**2)


# ---------------------------------------------------------------------------
# 1D scheme vs growth matrix
# ---------------------------------------------------------------------------

def seeded_mode(m_points: int, k: int, a: complex, b: complex, h: float):
    m = np.arange(m_points)
    theta = 2 * np.pi * k / m_points
    r = a * np.exp(1j * theta * (m + 0.5))
    j = b * np.exp(1j * theta * m)
    return r, j, theta


def project(field: np.ndarray, theta: float, offset: float) -> complex:
    m = np.arange(field.size)
    return (field * np.exp(-1j * theta * (m + offset))).mean()


def test_scheme_1d_uniform_fixed_point():
    p = Params1D(epsilon=0.1, sigma_s=1.0, sigma_a=0.0, dt=1e-3, h=0.05, phi=10.0)
    r = np.full(32, 1.3)
    j = np.zeros(32)
    r2, j2 = scheme_1d_step(r, j, p)
    assert np.array_equal(r2, r)
    assert np.all(j2 == 0.0)


def test_scheme_1d_oracle_equivalence_single():
    p = Params1D(epsilon=0.05, sigma_s=1.7, sigma_a=0.4, dt=2e-4, h=2 * np.pi / 64,
                 phi=37.0)
    r, j, theta = seeded_mode(64, 5, 0.8 - 0.3j, 0.1 + 0.9j, p.h)
    r2, j2 = scheme_1d_step(r, j, p)
    gm = growth_matrix(GrowthParams(epsilon=p.epsilon, sigma_s=p.sigma_s,
                                    sigma_a=p.sigma_a, dt=p.dt, h=p.h, phi=p.phi,
                                    theta=theta))
    pred = gm.matrix @ np.array([0.8 - 0.3j, 0.1 + 0.9j])
    got = np.array([project(r2, theta, 0.5), project(j2, theta, 0.0)])
    assert np.allclose(got, pred, rtol=0, atol=1e-12 * max(1.0, np.abs(pred).max()))


def test_scheme_1d_real_imag_pair_equivalence():
    # acting on real and imaginary parts separately reproduces the complex step
    p = Params1D(epsilon=0.2, sigma_s=0.9, sigma_a=0.1, dt=1e-3, h=0.1, phi=5.0)
    r, j, _ = seeded_mode(32, 3, 1.0 + 0.5j, -0.2 + 0.1j, p.h)
    rc, jc = scheme_1d_step(r, j, p)
    rr, jr = scheme_1d_step(r.real, j.real, p)
    ri, ji = scheme_1d_step(r.imag, j.imag, p)
    assert np.allclose(rc, rr + 1j * ri, atol=1e-14)
    assert np.allclose(jc, jr + 1j * ji, atol=1e-14)


def test_scheme_1d_long_run_bounded():
    # 200 steps under the certified conditions: l2 norm of (r, eps j) stays
    # within a modest constant of its initial value
    eps, sigma_s, sigma_a, h = 0.01, 1.0, 0.0, 0.02
    sigma_t = sigma_s
    dt = 0.9 * dt_upper_bound(eps, h, sigma_t, sigma_a)
    phi = phi_upper_bound(eps, h, sigma_t)
    p = Params1D(epsilon=eps, sigma_s=sigma_s, sigma_a=sigma_a, dt=dt, h=h, phi=phi)
    rng = np.random.default_rng(0)
    r = rng.standard_normal(50)
    j = rng.standard_normal(50) / eps
    norm0 = np.sqrt(np.sum(r**2) + eps**2 * np.sum(j**2))
    worst = 0.0
    for _ in range(200):
        r, j = scheme_1d_step(r, j, p)
        worst = max(worst, np.sqrt(np.sum(r**2) + eps**2 * np.sum(j**2)))
    assert worst <= 4.0 * norm0


def test_growth_params_validation():
    with pytest.raises(ValueError):
        GrowthParams(epsilon=0.0, sigma_s=1.0, sigma_a=0.0, dt=1e-3, h=0.01,
                     phi=0.0, theta=0.0)
    with pytest.raises(ValueError):
        GrowthParams(epsilon=1.0, sigma_s=-0.1, sigma_a=0.0, dt=1e-3, h=0.01,
                     phi=0.0, theta=0.0)
    # free streaming (sigma_t = 0) is a valid growth-matrix input; the
    # certification reports it as a violated proposition precondition
    rep = certify_proposition(1.0, 0.0, 0.0, dt=1e-3, h=0.01, phi=0.0)
    assert "sigma_t <= 0" in rep.violations
