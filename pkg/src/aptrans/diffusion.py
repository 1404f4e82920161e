"""Explicit reference solver for the limiting diffusion equation.

In the diffusive limit the staggered transport scheme approaches

    d rho / dt = 1/2 div( (1/sigma_t) grad rho ) - sigma_a rho + Q

discretized with a compact five-point stencil on each R-plane separately:
the vertex plane and the center plane never couple.  Space-dependent
sigma_t enters in flux form, with 1/sigma_t sampled at the flux midpoints,
which happen to be exactly the J-grid face centers.

Time integration is plain explicit Euler with dt = 0.4 h^2 sigma_t_min
(diffusivity is at most 1/(2 sigma_t_min), so this sits below the 2D
parabolic limit with a 20% margin), final step truncated to t_final.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .errors import BlowupError, InvalidMaterialError
from .grid import GridGeometry, RField
from .solver import MaterialField


@dataclass
class DiffusionState:
    rho: RField
    t: float


@dataclass
class DiffusionResult:
    state: DiffusionState
    diagnostics: list = field(default_factory=list)  # (step, t, dt, mass) tuples


def diffusion_rhs(rho: RField, mat: MaterialField, g: GridGeometry, epsilon: float,
                  q: Optional[RField] = None) -> RField:
    """Right-hand side 1/2 div((1/sigma_t) grad rho) - sigma_a rho + Q."""
    g.check_shape(rho.vertex)
    st = mat.sigma_t_J(epsilon)
    if min(st.hface.min(), st.vface.min()) <= 0.0:
        raise InvalidMaterialError("diffusion reference needs sigma_t > 0 at flux midpoints")
    kh = 1.0 / st.hface   # 1/sigma_t at (i+1/2, j)
    kv = 1.0 / st.vface   # 1/sigma_t at (i, j+1/2)
    idx2 = 1.0 / g.dx**2
    idy2 = 1.0 / g.dy**2

    rv, rc = rho.vertex, rho.center
    # vertex plane: x-fluxes through horizontal faces, y-fluxes through vertical faces
    fx = kh * (np.roll(rv, -1, axis=0) - rv)
    fy = kv * (np.roll(rv, -1, axis=1) - rv)
    lap_v = (fx - np.roll(fx, 1, axis=0)) * idx2 + (fy - np.roll(fy, 1, axis=1)) * idy2
    # center plane: x-fluxes live at vertical faces (i+1, j+1/2), y at horizontal (i+1/2, j+1)
    gx = np.roll(kv, -1, axis=0) * (np.roll(rc, -1, axis=0) - rc)
    gy = np.roll(kh, -1, axis=1) * (np.roll(rc, -1, axis=1) - rc)
    lap_c = (gx - np.roll(gx, 1, axis=0)) * idx2 + (gy - np.roll(gy, 1, axis=1)) * idy2

    out_v = 0.5 * lap_v - mat.sigma_a_R.vertex * rv
    out_c = 0.5 * lap_c - mat.sigma_a_R.center * rc
    if q is not None:
        out_v = out_v + q.vertex
        out_c = out_c + q.center
    return RField(out_v, out_c)


def diffusion_timestep(mat: MaterialField, g: GridGeometry, epsilon: float) -> float:
    st_min = mat.sigma_t_min(epsilon)
    if st_min <= 0.0:
        raise InvalidMaterialError("diffusion reference needs sigma_t > 0 everywhere")
    return 0.4 * g.h**2 * st_min


def diffusion_run(rho0: RField, mat: MaterialField,
                  src: Union[None, RField, Callable[[float], RField]],
                  g: GridGeometry, t_final: float, epsilon: float,
                  dt: Optional[float] = None) -> DiffusionResult:
    """Explicit Euler to t_final; records (step, t, dt, mass) per step."""
    if t_final < 0:
        raise ValueError("t_final must be nonnegative")
    dt_run = dt if dt is not None else diffusion_timestep(mat, g, epsilon)
    rho = rho0.copy()
    vol = g.point_volume
    t = 0.0
    k = 0
    eps_t = 1e-12 * max(t_final, 1.0)
    rows = [(0, 0.0, 0.0, float((rho.vertex.sum() + rho.center.sum()) * vol))]
    while t < t_final - eps_t:
        dt_k = min(dt_run, t_final - t)
        q = src(t) if callable(src) else src
        rhs = diffusion_rhs(rho, mat, g, epsilon, q)
        rho = RField(rho.vertex + dt_k * rhs.vertex, rho.center + dt_k * rhs.center)
        k += 1
        t = t_final if t + dt_k >= t_final - eps_t else t + dt_k
        mass = float((rho.vertex.sum() + rho.center.sum()) * vol)
        rows.append((k, t, dt_k, mass))
        if not np.isfinite(mass):
            raise BlowupError(f"diffusion reference blew up at step {k}", step=k, time=t)
    if not rho.all_finite():
        raise BlowupError(f"nonfinite diffusion state at step {k}", step=k, time=t)
    return DiffusionResult(DiffusionState(rho, t), rows)
