"""Von Neumann analysis of the 1D two-velocity split scheme.

The slab-geometry reduction with velocities {+1, -1} and x-independent
cross sections evolves one even parity r (placed on the half grid points
(m+1/2)h) and one odd parity j (on the full grid points m*h).  One time
step is the explicit transport half-step followed by the implicitly
solvable relaxation half-step:

    r* = r - dt*(Dx j + sigma_a r)
    j* = j - dt*(phi Dx r + sigma_a j)
    r' = r*
    j' = eps^2/(eps^2 + sigma_s dt) * j*
         - dt/(eps^2 + sigma_s dt) * (1 - eps^2 phi) * Dx r'

For a Fourier mode exp(i l x) both staggered differences act as
multiplication by d = (2i/h) sin(l h / 2), so the coefficient pair (a, b)
is advanced by the 2x2 growth matrix G = G2 G1 built below.  Its half
trace g and determinant are real; the spectral radius over all mode
angles theta = l h decides L2 stability.

The scheme is certified stable when the time step obeys

    dt <= min(1/sigma_a, max(eps*h/2, h^2 sigma_t / 4))

and the relaxation parameter obeys

    0 <= phi <= h sigma_t / (2 eps^3)   if h sigma_t <= 2 eps,
    0 <= phi <= 1 / eps^2               otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GrowthParams:
    """One point in parameter space for the mode-wise growth matrix."""

    epsilon: float
    sigma_s: float
    sigma_a: float
    dt: float
    h: float
    phi: float
    theta: float  # mode angle l*h, radians

    def __post_init__(self):
        if self.epsilon <= 0 or self.dt <= 0 or self.h <= 0:
            raise ValueError("epsilon, dt and h must be positive")
        if self.sigma_s < 0 or self.sigma_a < 0 or self.phi < 0:
            raise ValueError("sigma_s, sigma_a and phi must be nonnegative")
        # sigma_t = 0 (free streaming) is well-defined for the growth matrix
        # itself; only the stability certification insists on sigma_t > 0.

    @property
    def sigma_t(self) -> float:
        return self.sigma_s + self.epsilon**2 * self.sigma_a

    @property
    def d(self) -> complex:
        """Staggered-difference symbol, purely imaginary."""
        return 2j / self.h * np.sin(self.theta / 2.0)

    @property
    def d2(self) -> float:
        """Real value of d^2 = -(4/h^2) sin^2(theta/2) <= 0."""
        s = np.sin(self.theta / 2.0)
        return -4.0 / self.h**2 * s * s


@dataclass(frozen=True)
class GrowthMatrix:
    """Explicit 2x2 growth matrix with its (real) half trace and determinant."""

    matrix: np.ndarray  # (2,2) complex, G = G2 @ G1
    g: float
    det: float


def growth_matrix(p: GrowthParams) -> GrowthMatrix:
    """Assemble G1 (transport), G2 (relaxation) and their product.

    The half trace and determinant are computed from the closed forms

        g   = [dt^2 d^2 (1-eps^2 phi) + (1-sigma_a dt)(2 eps^2+sigma_s dt)]
              / (2 (eps^2+sigma_s dt))
        det = eps^2/(eps^2+sigma_s dt) * [(1-sigma_a dt)^2 - phi d^2 dt^2]

    which the test suite cross-checks against the entry-wise trace and
    determinant of the assembled product.
    """
    eps2 = p.epsilon**2
    dt, phi, d = p.dt, p.phi, p.d
    den = eps2 + p.sigma_s * dt
    g1 = np.array([[1.0 - p.sigma_a * dt, -dt * d],
                   [-dt * phi * d, 1.0 - p.sigma_a * dt]], dtype=complex)
    g2 = np.array([[1.0, 0.0],
                   [-dt / den * (1.0 - eps2 * phi) * d, eps2 / den]], dtype=complex)
    G = g2 @ g1
    g = 0.5 * (dt**2 * p.d2 * (1.0 - eps2 * phi)
               + (1.0 - p.sigma_a * dt) * (2.0 * eps2 + p.sigma_s * dt)) / den
    det = eps2 / den * ((1.0 - p.sigma_a * dt)**2 - phi * p.d2 * dt**2)
    return GrowthMatrix(matrix=G, g=float(g), det=float(det))


def eigenvalues(p: GrowthParams) -> tuple[complex, complex]:
    """lambda_{1,2} = g +- sqrt(g^2 - det), complex pair when g^2 < det."""
    gm = growth_matrix(p)
    disc = gm.g**2 - gm.det
    if disc >= 0.0:
        s = np.sqrt(disc)
        return (gm.g + s, gm.g - s)
    s = np.sqrt(-disc)
    return (gm.g + 1j * s, gm.g - 1j * s)


def spectral_radius(p: GrowthParams) -> float:
    """max |lambda| via the half-trace formula."""
    gm = growth_matrix(p)
    disc = gm.g**2 - gm.det
    if disc >= 0.0:
        return abs(gm.g) + np.sqrt(disc)
    # complex pair: |lambda|^2 = det, and det >= g^2 >= 0 in this branch
    return float(np.sqrt(gm.det))


def spectral_radius_scan(epsilon, sigma_s, sigma_a, dt, h, phi,
                         thetas: np.ndarray) -> np.ndarray:
    """Vectorized spectral radius over an array of mode angles."""
    thetas = np.asarray(thetas, dtype=float)
    eps2 = epsilon**2
    den = eps2 + sigma_s * dt
    s = np.sin(thetas / 2.0)
    d2 = -4.0 / h**2 * s * s
    g = 0.5 * (dt**2 * d2 * (1.0 - eps2 * phi)
               + (1.0 - sigma_a * dt) * (2.0 * eps2 + sigma_s * dt)) / den
    det = eps2 / den * ((1.0 - sigma_a * dt)**2 - phi * d2 * dt**2)
    disc = g * g - det
    real = disc >= 0.0
    radii = np.empty_like(g)
    radii[real] = np.abs(g[real]) + np.sqrt(disc[real])
    radii[~real] = np.sqrt(np.maximum(det[~real], 0.0))
    return radii


def phi_upper_bound(epsilon, h, sigma_t) -> float:
    """Stability bound on the relaxation parameter."""
    if h * sigma_t <= 2.0 * epsilon:
        return h * sigma_t / (2.0 * epsilon**3)
    return 1.0 / epsilon**2


def dt_upper_bound(epsilon, h, sigma_t, sigma_a) -> float:
    """1D CFL bound: min(1/sigma_a, max(eps*h/2, h^2 sigma_t/4))."""
    cap = np.inf if sigma_a == 0.0 else 1.0 / sigma_a
    return min(cap, max(0.5 * epsilon * h, 0.25 * h**2 * sigma_t))


def numerics_timestep(epsilon, h, sigma_t, sigma_a, safety: float = 0.9) -> float:
    """Production step size: safety * 1/2 * the CFL bound (2D factor included)."""
    return safety * 0.5 * dt_upper_bound(epsilon, h, sigma_t, sigma_a)


@dataclass(frozen=True)
class CertificationReport:
    """Outcome of checking the stability conditions plus a theta scan."""

    conditions_ok: bool
    violations: tuple[str, ...]
    worst_theta: float
    worst_radius: float
    stable: bool      # worst_radius <= 1 + 1e-12
    passed: bool      # conditions_ok and stable


def certify_proposition(epsilon, sigma_s, sigma_a, dt, h, phi,
                        n_theta: int = 4096) -> CertificationReport:
    """Check the CFL and phi conditions, then scan the spectral radius.

    Violated conditions are reported, not raised; the scan runs either
    way so the caller can see whether a violation actually destabilizes.
    """
    if n_theta < 8:
        raise ValueError("need at least 8 theta samples")
    sigma_t = sigma_s + epsilon**2 * sigma_a
    violations = []
    if sigma_t <= 0:
        violations.append("sigma_t <= 0")
    if not 0 <= phi <= phi_upper_bound(epsilon, h, max(sigma_t, 0.0)) * (1 + 1e-12):
        violations.append("phi outside [0, phi_max]")
    if dt > dt_upper_bound(epsilon, h, max(sigma_t, 0.0), sigma_a) * (1 + 1e-12):
        violations.append("dt above CFL bound")
    thetas = np.linspace(0.0, 2.0 * np.pi, n_theta, endpoint=False)
    radii = spectral_radius_scan(epsilon, sigma_s, sigma_a, dt, h, phi, thetas)
    k = int(np.argmax(radii))
    worst = float(radii[k])
    stable = worst <= 1.0 + 1e-12
    ok = not violations
    return CertificationReport(conditions_ok=ok, violations=tuple(violations),
                               worst_theta=float(thetas[k]), worst_radius=worst,
                               stable=stable, passed=ok and stable)


@dataclass(frozen=True)
class Params1D:
    """Constant-coefficient parameters for the two-velocity scheme.

    ``velocity`` scales every spatial difference; the printed two-velocity
    model is velocity=1, and a per-direction factor xi lets the 2D solver
    be cross-checked against this scheme on y-independent data.
    """

    epsilon: float
    sigma_s: float
    sigma_a: float
    dt: float
    h: float
    phi: float
    velocity: float = 1.0


def scheme_1d_step(r: np.ndarray, j: np.ndarray, p: Params1D):
    """One split step of the 1D scheme on periodic arrays.

    r lives on half grid points (m+1/2)h, j on full grid points m*h, so
    Dx j lands on r's points as (j[m+1]-j[m])/h and Dx r lands on j's
    points as (r[m]-r[m-1])/h.  Works on real or complex arrays.
    """
    r = np.asarray(r)
    j = np.asarray(j)
    if r.shape != j.shape or r.ndim != 1:
        raise ValueError("r and j must be 1D arrays of equal length")
    v = p.velocity
    dxj = v * (np.roll(j, -1) - j) / p.h
    dxr = v * (r - np.roll(r, 1)) / p.h
    r_half = r - p.dt * (dxj + p.sigma_a * r)
    j_half = j - p.dt * (p.phi * dxr + p.sigma_a * j)
    eps2 = p.epsilon**2
    den = eps2 + p.sigma_s * p.dt
    r_new = r_half
    dxr_new = v * (r_new - np.roll(r_new, 1)) / p.h
    j_new = (eps2 * j_half - p.dt * (1.0 - eps2 * p.phi) * dxr_new) / den
    if not (np.isfinite(r_new).all() and np.isfinite(j_new).all()):
        raise FloatingPointError("1D scheme step produced nonfinite values")
    return r_new, j_new
