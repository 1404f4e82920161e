"""The split time stepper for the parity system on staggered grids.

Per direction (xi, eta) the state consists of two even parities r1, r2 on
the R-grid and two odd parities j1, j2 on the J-grid.  A full step is

explicit transport (simultaneous update from the old state)

    r1 <- r1 - dt*(xi dJx j1 - eta dJy j1 + sigma_a r1 - Q_even)
    r2 <- r2 - dt*(xi dJx j2 + eta dJy j2 + sigma_a r2 - Q_even)
    j1 <- j1 - dt*(phi xi dRx r1 - phi eta dRy r1 + sigma_a j1 - Q_odd/eps)
    j2 <- j2 - dt*(phi xi dRx r2 + phi eta dRy r2 + sigma_a j2 - Q_odd/eps)

followed by the implicit relaxation, solvable in closed form because the
density rho = 1/2 sum_i w_i (r1_i + r2_i) is preserved by it:

    r  <- (eps^2 r + sigma_s dt rho) / (eps^2 + sigma_s dt)
    j1 <- [eps^2 j1 - dt (1 - eps^2 phi)(xi dRx r1' - eta dRy r1')]
          / (eps^2 + sigma_s dt)            (r1' = already-relaxed r1)
    j2 <- likewise with +eta and r2'.

sigma_a acts explicitly inside the transport step, so the time step keeps
the 1/sigma_a_max guard; with the worst-case cross sections and the extra
factor 1/2 for two space dimensions the step size is

    dt = safety * 1/2 * min(1/sigma_a_max, max(eps h/2, h^2 sigma_t_min/4))

and the relaxation parameter is

    phi = h sigma_t_min / (2 eps^3)  if h sigma_t_min <= 2 eps, else 1/eps^2.

``transport_step``/``relaxation_step``/``step`` are the plain NumPy
reference path; ``run`` drives the numba kernels and must agree with
repeated ``step`` application to roundoff (enforced by the test suite).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import _kernels
from .angular import DirectionSet
from .errors import BlowupError, InvalidMaterialError, ShapeMismatchError
from .grid import GridGeometry, JField, RField, sample_on_J, sample_on_R


# ---------------------------------------------------------------------------
# Materials and sources
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MaterialField:
    """Scattering/absorption cross sections sampled on both grid families.

    sigma_t = sigma_s + eps^2 sigma_a is derived on demand so one sampled
    material can serve a whole epsilon sweep.
    """

    sigma_s_R: RField
    sigma_a_R: RField
    sigma_s_J: JField
    sigma_a_J: JField

    def __post_init__(self):
        for f in (self.sigma_s_R.vertex, self.sigma_s_R.center,
                  self.sigma_s_J.hface, self.sigma_s_J.vface):
            if np.any(f < 0):
                raise InvalidMaterialError("sigma_s must be nonnegative everywhere")
        for f in (self.sigma_a_R.vertex, self.sigma_a_R.center,
                  self.sigma_a_J.hface, self.sigma_a_J.vface):
            if np.any(f < 0):
                raise InvalidMaterialError("sigma_a must be nonnegative everywhere")

    @classmethod
    def from_functions(cls, g: GridGeometry, sigma_s, sigma_a) -> "MaterialField":
        return cls(sample_on_R(sigma_s, g), sample_on_R(sigma_a, g),
                   sample_on_J(sigma_s, g), sample_on_J(sigma_a, g))

    @classmethod
    def constant(cls, g: GridGeometry, sigma_s: float, sigma_a: float) -> "MaterialField":
        return cls.from_functions(g, lambda x, y: np.full_like(x, sigma_s),
                                  lambda x, y: np.full_like(x, sigma_a))

    def sigma_t_R(self, epsilon: float) -> RField:
        e2 = epsilon**2
        return RField(self.sigma_s_R.vertex + e2 * self.sigma_a_R.vertex,
                      self.sigma_s_R.center + e2 * self.sigma_a_R.center)

    def sigma_t_J(self, epsilon: float) -> JField:
        e2 = epsilon**2
        return JField(self.sigma_s_J.hface + e2 * self.sigma_a_J.hface,
                      self.sigma_s_J.vface + e2 * self.sigma_a_J.vface)

    def sigma_a_max(self) -> float:
        return float(max(self.sigma_a_R.vertex.max(), self.sigma_a_R.center.max(),
                         self.sigma_a_J.hface.max(), self.sigma_a_J.vface.max()))

    def sigma_t_min(self, epsilon: float) -> float:
        tR = self.sigma_t_R(epsilon)
        tJ = self.sigma_t_J(epsilon)
        return float(min(tR.vertex.min(), tR.center.min(),
                         tJ.hface.min(), tJ.vface.min()))


@dataclass(frozen=True)
class EvenSourceTerm:
    """One separable component of the even-parity source on the R-grid.

    Contribution to parity p, direction k at time t is
    time_fn(t) * coeff_p[k] * field.
    """

    time_fn: Callable[[float], float]
    coeff1: np.ndarray
    coeff2: np.ndarray
    field: RField


@dataclass(frozen=True)
class OddSourceTerm:
    """Separable component of the scaled odd source Q_odd/eps on the J-grid."""

    time_fn: Callable[[float], float]
    coeff1: np.ndarray
    coeff2: np.ndarray
    field: JField


@dataclass(frozen=True)
class SourceTerm:
    """Source decomposed into parity components, as the scheme consumes it.

    For an isotropic Q the odd components vanish and the even coefficients
    are direction-independent.
    """

    even: tuple[EvenSourceTerm, ...] = ()
    odd: tuple[OddSourceTerm, ...] = ()
    isotropic: bool = False

    def __post_init__(self):
        if self.isotropic:
            if self.odd:
                raise ValueError("isotropic sources have no odd component")
            for t in self.even:
                if np.ptp(t.coeff1) != 0 or np.ptp(t.coeff2) != 0:
                    raise ValueError("isotropic sources are direction-independent")

    def even_arrays(self, t: float, parity: int):
        """(ndir, nx, ny) even source for one parity; None when empty."""
        if not self.even:
            return None, None
        v = c = 0.0
        for term in self.even:
            coeff = term.coeff1 if parity == 1 else term.coeff2
            amp = term.time_fn(t) * coeff
            v = v + amp[:, None, None] * term.field.vertex[None, :, :]
            c = c + amp[:, None, None] * term.field.center[None, :, :]
        return v, c

    def odd_arrays(self, t: float, parity: int):
        if not self.odd:
            return None, None
        h = f = 0.0
        for term in self.odd:
            coeff = term.coeff1 if parity == 1 else term.coeff2
            amp = term.time_fn(t) * coeff
            h = h + amp[:, None, None] * term.field.hface[None, :, :]
            f = f + amp[:, None, None] * term.field.vface[None, :, :]
        return h, f

    def kernel_inputs(self, ndir: int, nx: int, ny: int):
        """Stacked spatial fields for the numba kernels (built once per run)."""
        ne = len(self.even)
        no = len(self.odd)
        fe_v = np.empty((ne, nx, ny))
        fe_c = np.empty((ne, nx, ny))
        for m, term in enumerate(self.even):
            fe_v[m] = term.field.vertex
            fe_c[m] = term.field.center
        fo_h = np.empty((no, nx, ny))
        fo_v = np.empty((no, nx, ny))
        for m, term in enumerate(self.odd):
            fo_h[m] = term.field.hface
            fo_v[m] = term.field.vface
        return fe_v, fe_c, fo_h, fo_v

    def kernel_coeffs(self, t: float, ndir: int):
        """Per-step coefficient matrices c[m, k] including the time factor."""
        ne = len(self.even)
        no = len(self.odd)
        ce1 = np.empty((ne, ndir))
        ce2 = np.empty((ne, ndir))
        for m, term in enumerate(self.even):
            tf = term.time_fn(t)
            ce1[m] = tf * term.coeff1
            ce2[m] = tf * term.coeff2
        co1 = np.empty((no, ndir))
        co2 = np.empty((no, ndir))
        for m, term in enumerate(self.odd):
            tf = term.time_fn(t)
            co1[m] = tf * term.coeff1
            co2[m] = tf * term.coeff2
        return ce1, ce2, co1, co2


NO_SOURCE = SourceTerm(isotropic=True)


@dataclass(frozen=True)
class SchemeParams:
    """Mean free path, relaxation parameter and step size of one run."""

    epsilon: float
    phi: float
    dt: float
    safety: float = 0.9

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if not 0.0 < self.safety <= 1.0:
            raise ValueError("safety must lie in (0, 1]")
        if not 0.0 <= self.phi <= (1.0 + 1e-12) / self.epsilon**2:
            raise ValueError(
                f"phi={self.phi} outside [0, 1/eps^2]; the split system "
                "loses hyperbolicity / its diffusive limit")


# ---------------------------------------------------------------------------
# State
# ---------------------------------------------------------------------------

@dataclass
class ParityState:
    """Full solver state: per-direction parity quadruple plus the clock.

    The eight (ndir, nx, ny) arrays share one grid and one direction set.
    """

    grid: GridGeometry
    dirs: DirectionSet
    t: float
    r1v: np.ndarray
    r1c: np.ndarray
    r2v: np.ndarray
    r2c: np.ndarray
    j1h: np.ndarray
    j1v: np.ndarray
    j2h: np.ndarray
    j2v: np.ndarray

    def __post_init__(self):
        shape = (self.dirs.n, self.grid.nx, self.grid.ny)
        for name in ("r1v", "r1c", "r2v", "r2c", "j1h", "j1v", "j2h", "j2v"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=float)
            if arr.shape != shape:
                raise ShapeMismatchError(f"{name} has shape {arr.shape}, expected {shape}")
            setattr(self, name, arr)

    @classmethod
    def zeros(cls, g: GridGeometry, dirs: DirectionSet, t: float = 0.0) -> "ParityState":
        shape = (dirs.n, g.nx, g.ny)
        return cls(g, dirs, t, *[np.zeros(shape) for _ in range(8)])

    def arrays(self):
        return (self.r1v, self.r1c, self.r2v, self.r2c,
                self.j1h, self.j1v, self.j2h, self.j2v)

    def copy(self) -> "ParityState":
        return ParityState(self.grid, self.dirs, self.t,
                           *[a.copy() for a in self.arrays()])

    def r1(self, k: int) -> RField:
        return RField(self.r1v[k], self.r1c[k])

    def r2(self, k: int) -> RField:
        return RField(self.r2v[k], self.r2c[k])

    def j1(self, k: int) -> JField:
        return JField(self.j1h[k], self.j1v[k])

    def j2(self, k: int) -> JField:
        return JField(self.j2h[k], self.j2v[k])

    def density(self) -> RField:
        """rho = 1/2 sum_k w_k (r1 + r2), fixed ascending direction order."""
        w = self.dirs.weights
        vert = np.zeros((self.grid.nx, self.grid.ny))
        cent = np.zeros((self.grid.nx, self.grid.ny))
        for k in range(self.dirs.n):
            vert += 0.5 * w[k] * (self.r1v[k] + self.r2v[k])
            cent += 0.5 * w[k] * (self.r1c[k] + self.r2c[k])
        return RField(vert, cent)

    def mass(self) -> float:
        rho = self.density()
        return float((rho.vertex.sum() + rho.center.sum()) * self.grid.point_volume)

    def max_abs_rho(self) -> float:
        rho = self.density()
        return float(max(np.abs(rho.vertex).max(), np.abs(rho.center).max()))

    def all_finite(self) -> bool:
        return all(np.isfinite(a).all() for a in self.arrays())


# ---------------------------------------------------------------------------
# Step-size and relaxation-parameter selection
# ---------------------------------------------------------------------------

def cfl_timestep(epsilon: float, g: GridGeometry, mat: MaterialField,
                 safety: float = 0.9) -> float:
    """Worst-case CFL step with the 2D half factor.

    sigma_a_max = 0 drops the absorption guard; sigma_t_min = 0 simply
    deactivates the parabolic arm of the max (the hyperbolic arm is always
    positive), so purely-scattering materials with isolated sigma_t zeros
    remain steppable.
    """
    st_min = mat.sigma_t_min(epsilon)
    if st_min < 0:
        raise InvalidMaterialError(f"sigma_t_min = {st_min} < 0")
    sa_max = mat.sigma_a_max()
    cap = math.inf if sa_max == 0.0 else 1.0 / sa_max
    arm = max(0.5 * epsilon * g.h, 0.25 * g.h**2 * st_min)
    return safety * 0.5 * min(cap, arm)


def relaxation_parameter(epsilon: float, g: GridGeometry, mat: MaterialField) -> float:
    """phi = h sigma_t_min/(2 eps^3) in the hyperbolic regime, else 1/eps^2."""
    st_min = mat.sigma_t_min(epsilon)
    if st_min < 0:
        raise InvalidMaterialError(f"sigma_t_min = {st_min} < 0")
    if g.h * st_min <= 2.0 * epsilon:
        return g.h * st_min / (2.0 * epsilon**3)
    return 1.0 / epsilon**2


# ---------------------------------------------------------------------------
# Reference (NumPy) step path
# ---------------------------------------------------------------------------

def _roll_diff(a, shift_axis, sign, inv_h):
    # (a - a shifted by one) with periodic wrap along grid axes 1 (x) or 2 (y)
    if sign > 0:
        return (np.roll(a, -1, axis=shift_axis) - a) * inv_h
    return (a - np.roll(a, 1, axis=shift_axis)) * inv_h


def transport_step(s: ParityState, mat: MaterialField, src: Optional[SourceTerm],
                   p: SchemeParams) -> ParityState:
    """Explicit transport half-step (does not advance the clock)."""
    src = src or NO_SOURCE
    g, dt, phi = s.grid, p.dt, p.phi
    idx, idy = 1.0 / g.dx, 1.0 / g.dy
    xi = s.dirs.xi[:, None, None]
    eta = s.dirs.eta[:, None, None]
    sa_rv, sa_rc = mat.sigma_a_R.vertex, mat.sigma_a_R.center
    sa_jh, sa_jv = mat.sigma_a_J.hface, mat.sigma_a_J.vface

    q1v, q1c = src.even_arrays(s.t, 1)
    q2v, q2c = src.even_arrays(s.t, 2)
    qo1h, qo1v = src.odd_arrays(s.t, 1)
    qo2h, qo2v = src.odd_arrays(s.t, 2)
    zero = 0.0

    # x-differences of j land on R: hface->vertex (backward), vface->center (forward)
    r1v = s.r1v - dt * (xi * _roll_diff(s.j1h, 1, -1, idx)
                        - eta * _roll_diff(s.j1v, 2, -1, idy)
                        + sa_rv * s.r1v - (q1v if q1v is not None else zero))
    r2v = s.r2v - dt * (xi * _roll_diff(s.j2h, 1, -1, idx)
                        + eta * _roll_diff(s.j2v, 2, -1, idy)
                        + sa_rv * s.r2v - (q2v if q2v is not None else zero))
    r1c = s.r1c - dt * (xi * _roll_diff(s.j1v, 1, +1, idx)
                        - eta * _roll_diff(s.j1h, 2, +1, idy)
                        + sa_rc * s.r1c - (q1c if q1c is not None else zero))
    r2c = s.r2c - dt * (xi * _roll_diff(s.j2v, 1, +1, idx)
                        + eta * _roll_diff(s.j2h, 2, +1, idy)
                        + sa_rc * s.r2c - (q2c if q2c is not None else zero))

    # gradients of the OLD r feed the j update (simultaneous explicit Euler)
    j1h = s.j1h - dt * (phi * xi * _roll_diff(s.r1v, 1, +1, idx)
                        - phi * eta * _roll_diff(s.r1c, 2, -1, idy)
                        + sa_jh * s.j1h - (qo1h if qo1h is not None else zero))
    j2h = s.j2h - dt * (phi * xi * _roll_diff(s.r2v, 1, +1, idx)
                        + phi * eta * _roll_diff(s.r2c, 2, -1, idy)
                        + sa_jh * s.j2h - (qo2h if qo2h is not None else zero))
    j1v = s.j1v - dt * (phi * xi * _roll_diff(s.r1c, 1, -1, idx)
                        - phi * eta * _roll_diff(s.r1v, 2, +1, idy)
                        + sa_jv * s.j1v - (qo1v if qo1v is not None else zero))
    j2v = s.j2v - dt * (phi * xi * _roll_diff(s.r2c, 1, -1, idx)
                        + phi * eta * _roll_diff(s.r2v, 2, +1, idy)
                        + sa_jv * s.j2v - (qo2v if qo2v is not None else zero))

    out = ParityState(g, s.dirs, s.t, r1v, r1c, r2v, r2c, j1h, j1v, j2h, j2v)
    if not out.all_finite():
        raise BlowupError("transport step produced nonfinite values", step=-1, time=s.t)
    return out


def relaxation_step(s: ParityState, mat: MaterialField, p: SchemeParams) -> ParityState:
    """Implicit relaxation half-step in closed form (clock unchanged)."""
    g, dt, phi, eps = s.grid, p.dt, p.phi, p.epsilon
    eps2 = eps**2
    idx, idy = 1.0 / g.dx, 1.0 / g.dy
    xi = s.dirs.xi[:, None, None]
    eta = s.dirs.eta[:, None, None]

    rho = s.density()
    den_v = eps2 + mat.sigma_s_R.vertex * dt
    den_c = eps2 + mat.sigma_s_R.center * dt
    r1v = (eps2 * s.r1v + mat.sigma_s_R.vertex * dt * rho.vertex) / den_v
    r2v = (eps2 * s.r2v + mat.sigma_s_R.vertex * dt * rho.vertex) / den_v
    r1c = (eps2 * s.r1c + mat.sigma_s_R.center * dt * rho.center) / den_c
    r2c = (eps2 * s.r2c + mat.sigma_s_R.center * dt * rho.center) / den_c

    coef = dt * (1.0 - eps2 * phi)
    den_h = eps2 + mat.sigma_s_J.hface * dt
    den_f = eps2 + mat.sigma_s_J.vface * dt
    j1h = (eps2 * s.j1h - coef * (xi * _roll_diff(r1v, 1, +1, idx)
                                  - eta * _roll_diff(r1c, 2, -1, idy))) / den_h
    j2h = (eps2 * s.j2h - coef * (xi * _roll_diff(r2v, 1, +1, idx)
                                  + eta * _roll_diff(r2c, 2, -1, idy))) / den_h
    j1v = (eps2 * s.j1v - coef * (xi * _roll_diff(r1c, 1, -1, idx)
                                  - eta * _roll_diff(r1v, 2, +1, idy))) / den_f
    j2v = (eps2 * s.j2v - coef * (xi * _roll_diff(r2c, 1, -1, idx)
                                  + eta * _roll_diff(r2v, 2, +1, idy))) / den_f

    out = ParityState(g, s.dirs, s.t, r1v, r1c, r2v, r2c, j1h, j1v, j2h, j2v)
    if not out.all_finite():
        raise BlowupError("relaxation step produced nonfinite values", step=-1, time=s.t)
    return out


def step(s: ParityState, mat: MaterialField, src: Optional[SourceTerm],
         p: SchemeParams) -> ParityState:
    """One full split step; advances the clock by dt."""
    out = relaxation_step(transport_step(s, mat, src, p), mat, p)
    out.t = s.t + p.dt
    return out


# ---------------------------------------------------------------------------
# Fast driver
# ---------------------------------------------------------------------------

@dataclass
class DiagnosticsRow:
    step: int
    t: float
    dt: float
    mass: float
    max_rho: float


@dataclass
class RunResult:
    state: ParityState
    diagnostics: list[DiagnosticsRow] = field(default_factory=list)
    snapshots: dict[float, RField] = field(default_factory=dict)
    dt: float = 0.0
    phi: float = 0.0


def run(scenario, g: GridGeometry, q: DirectionSet, t_final: Optional[float] = None,
        *, dt: Optional[float] = None, phi: Optional[float] = None,
        safety: float = 0.9, snapshot_times: Sequence[float] = (),
        blowup_factor: float = 1e6, finite_check_every: int = 64) -> RunResult:
    """Advance a scenario to t_final with the numba kernels.

    dt and phi default to the CFL/relaxation formulas; the last step is
    truncated so the run lands on t_final exactly (likewise on every
    requested snapshot time).  Raises BlowupError -- with the partial
    result attached as ``.partial`` -- when the state goes nonfinite or
    max|rho| exceeds blowup_factor times its initial value.
    """
    if t_final is None:
        t_final = scenario.t_final
    if t_final < 0:
        raise ValueError("t_final must be nonnegative")
    state = scenario.initial_state(g, q)
    mat = scenario.material(g)
    src = scenario.source_term(g, q) or NO_SOURCE
    eps = scenario.epsilon
    dt_run = dt if dt is not None else cfl_timestep(eps, g, mat, safety)
    phi_run = phi if phi is not None else relaxation_parameter(eps, g, mat)
    SchemeParams(epsilon=eps, phi=phi_run, dt=dt_run, safety=safety)

    nd, nx, ny = q.n, g.nx, g.ny
    fe_v, fe_c, fo_h, fo_v = src.kernel_inputs(nd, nx, ny)
    cur = state
    buf = ParityState.zeros(g, q)
    rho_v = np.empty((nx, ny))
    rho_c = np.empty((nx, ny))
    vol = g.point_volume
    idx, idy = 1.0 / g.dx, 1.0 / g.dy

    sa_rv, sa_rc = mat.sigma_a_R.vertex, mat.sigma_a_R.center
    sa_jh, sa_jv = mat.sigma_a_J.hface, mat.sigma_a_J.vface
    ss_rv, ss_rc = mat.sigma_s_R.vertex, mat.sigma_s_R.center
    ss_jh, ss_jv = mat.sigma_s_J.hface, mat.sigma_s_J.vface

    result = RunResult(state=cur, dt=dt_run, phi=phi_run)
    rho0 = cur.density()
    mass0 = float((rho0.vertex.sum() + rho0.center.sum()) * vol)
    max0 = float(max(np.abs(rho0.vertex).max(), np.abs(rho0.center).max()))
    result.diagnostics.append(DiagnosticsRow(0, cur.t, 0.0, mass0, max0))

    pending = sorted(set(float(ts) for ts in snapshot_times))
    eps_t = 1e-12 * max(abs(t_final), 1.0)
    for ts in [p for p in pending if p <= cur.t + eps_t]:
        result.snapshots[ts] = rho0.copy()
        pending.remove(ts)

    t = cur.t
    k = 0
    while t < t_final - eps_t:
        target = t_final if not pending else min(pending[0], t_final)
        dt_k = min(dt_run, target - t)
        ce1, ce2, co1, co2 = src.kernel_coeffs(t, nd)
        _kernels.transport(*cur.arrays(), *buf.arrays(),
                           q.xi, q.eta, sa_rv, sa_rc, sa_jh, sa_jv,
                           dt_k, phi_run, idx, idy,
                           ce1, ce2, fe_v, fe_c, co1, co2, fo_h, fo_v)
        _kernels.relaxation(*buf.arrays(), q.weights, q.xi, q.eta,
                            ss_rv, ss_rc, ss_jh, ss_jv,
                            dt_k, phi_run, eps, idx, idy, rho_v, rho_c)
        cur, buf = buf, cur
        k += 1
        t = target if t + dt_k >= target - eps_t else t + dt_k
        cur.t = t

        mass = float((rho_v.sum() + rho_c.sum()) * vol)
        max_rho = float(max(np.abs(rho_v).max(), np.abs(rho_c).max()))
        result.diagnostics.append(DiagnosticsRow(k, t, dt_k, mass, max_rho))

        bad = not math.isfinite(max_rho)
        if not bad and max0 > 0.0 and max_rho > blowup_factor * max0:
            bad = True
        if not bad and k % finite_check_every == 0 and not cur.all_finite():
            bad = True
        if bad:
            result.state = cur
            err = BlowupError(
                f"solution blew up at step {k}, t={t:.6g} "
                f"(max|rho|={max_rho:.3e}, initial {max0:.3e})", step=k, time=t)
            err.partial = result
            raise err

        if pending and t >= pending[0] - eps_t:
            result.snapshots[pending.pop(0)] = RField(rho_v.copy(), rho_c.copy())

    if not cur.all_finite():
        err = BlowupError(f"nonfinite state at end of run (step {k})", step=k, time=t)
        result.state = cur
        err.partial = result
        raise err
    result.state = cur
    return result


# ---------------------------------------------------------------------------
# Distribution-function reconstruction
# ---------------------------------------------------------------------------

def interpolate_j_to_R(j: JField, g: GridGeometry) -> RField:
    """Arithmetic mean of the four surrounding face values at each R-point."""
    jh, jv = j.hface, j.vface
    vertex = 0.25 * (jh + np.roll(jh, 1, axis=0) + jv + np.roll(jv, 1, axis=1))
    center = 0.25 * (jh + np.roll(jh, -1, axis=1) + jv + np.roll(jv, -1, axis=0))
    return RField(vertex, center)


def reconstruct_f(s: ParityState, quadrant: tuple[int, int], epsilon: float) -> list[RField]:
    """Per-direction samples of f on the R-grid for one velocity quadrant.

    Quadrants with xi*eta < 0 read (r1, j1); the others read (r2, j2);
    the odd parity enters with the sign of xi.
    """
    sx, sy = quadrant
    if sx == 0 or sy == 0:
        raise ValueError("quadrant signs must be nonzero")
    use_first = (sx * sy) < 0
    sign = 1.0 if sx > 0 else -1.0
    out = []
    for k in range(s.dirs.n):
        r = s.r1(k) if use_first else s.r2(k)
        j = s.j1(k) if use_first else s.j2(k)
        ji = interpolate_j_to_R(j, s.grid)
        out.append(RField(r.vertex + epsilon * sign * ji.vertex,
                          r.center + epsilon * sign * ji.center))
    return out
