"""Error norms, convergence-order estimation and AP-limit comparison.

The discrete l2 error weights every R-point (vertex and center planes
alike) with its control volume dx*dy/2, so errors on different grids are
comparable and constants integrate to the domain area.  References can be
an exact density function or a finer-grid solution; fine solutions are
restricted by picking the coinciding points, which exist whenever the
fine resolution is an integer multiple of the coarse one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .angular import gauss_nodes
from .diffusion import diffusion_run
from .grid import GridGeometry, RField, sample_on_R
from .solver import run


def restrict_R(fine: RField, g_fine: GridGeometry, g_coarse: GridGeometry) -> RField:
    """Pick the fine-grid values at the coarse R-points.

    Coarse vertices always coincide with fine vertices.  Coarse centers
    coincide with fine vertices when the ratio is even and with fine
    centers when it is odd.
    """
    if g_fine.nx % g_coarse.nx or g_fine.ny % g_coarse.ny:
        raise ValueError(
            f"fine grid {g_fine.nx}x{g_fine.ny} is not a multiple of "
            f"coarse {g_coarse.nx}x{g_coarse.ny}: no coinciding points")
    mx = g_fine.nx // g_coarse.nx
    my = g_fine.ny // g_coarse.ny
    vertex = fine.vertex[::mx, ::my]
    if mx % 2 == 0 and my % 2 == 0:
        center = fine.vertex[mx // 2::mx, my // 2::my]
    elif mx % 2 == 1 and my % 2 == 1:
        center = fine.center[(mx - 1) // 2::mx, (my - 1) // 2::my]
    else:
        raise ValueError("mixed even/odd refinement ratios have no coinciding centers")
    return RField(vertex.copy(), center.copy())


def l2_error(field: RField, reference: Union[RField, Callable], g: GridGeometry,
             ref_grid: Optional[GridGeometry] = None) -> float:
    """Volume-weighted l2 distance between an R-field and a reference."""
    if callable(reference):
        ref = sample_on_R(reference, g)
    elif ref_grid is not None and (ref_grid.nx, ref_grid.ny) != (g.nx, g.ny):
        ref = restrict_R(reference, ref_grid, g)
    else:
        ref = reference
    dv = field.vertex - ref.vertex
    dc = field.center - ref.center
    return float(np.sqrt((np.sum(dv * dv) + np.sum(dc * dc)) * g.point_volume))


def convergence_order(e1: float, n1: int, e2: float, n2: int) -> float:
    """order = -(log E1 - log E2) / (log N1 - log N2)."""
    if e1 <= 0 or e2 <= 0:
        raise ValueError("errors must be positive to estimate an order")
    if n1 == n2:
        raise ValueError("grid sizes must differ")
    return -(math.log(e1) - math.log(e2)) / (math.log(n1) - math.log(n2))


@dataclass(frozen=True)
class ConvergenceRow:
    n1: int
    n2: int
    e1: float
    e2: float

    @property
    def order(self) -> float:
        return convergence_order(self.e1, self.n1, self.e2, self.n2)


def cfl_branch(epsilon: float, h: float, sigma_t_min: float) -> str:
    """Which arm of max(eps*h/2, h^2 sigma_t/4) sets the step size."""
    return "hyperbolic" if 0.5 * epsilon * h >= 0.25 * h**2 * sigma_t_min else "parabolic"


def run_convergence_table(scenario, ns: Sequence[int], epsilons: Sequence[float],
                          *, reference: Union[str, int] = "auto",
                          n_points: int = 16, safety: float = 0.9,
                          t_final: Optional[float] = None) -> list[dict]:
    """Errors and successive orders over a (N, epsilon) sweep.

    reference: "exact" uses the scenario's exact density, an integer uses
    a run at that resolution (restriction by coinciding points), "auto"
    picks exact when available and otherwise the largest N in ``ns``.
    """
    ns = sorted(set(int(n) for n in ns))
    if not ns:
        raise ValueError("empty N list")
    for a, b in zip(ns, ns[1:]):
        if b % a:
            raise ValueError(f"N list must be nested for restriction, {b} % {a} != 0")
    if reference == "auto":
        reference = "exact" if scenario.rho_exact is not None else ns[-1]
    if reference == "exact" and scenario.rho_exact is None:
        raise ValueError(f"scenario {scenario.name} has no exact density")
    dirs = gauss_nodes(n_points)
    rows = []
    for eps in epsilons:
        scn = scenario.with_epsilon(float(eps))
        t_end = scn.t_final if t_final is None else t_final
        ref_field = ref_grid = None
        if isinstance(reference, int):
            if any(reference % n for n in ns):
                raise ValueError(f"reference N={reference} not a multiple of every N")
            ref_grid = scn.grid(reference)
            ref_field = run(scn, ref_grid, dirs, t_end, safety=safety).state.density()
        prev = None
        run_ns = [n for n in ns if n != reference]
        for n in run_ns:
            g = scn.grid(n)
            res = run(scn, g, dirs, t_end, safety=safety)
            if reference == "exact":
                err = l2_error(res.state.density(),
                               lambda x, y: scn.rho_exact(t_end, x, y), g)
            else:
                err = l2_error(res.state.density(), ref_field, g, ref_grid=ref_grid)
            mat = scn.material(g)
            row = {
                "scenario": scn.name,
                "epsilon": float(eps),
                "N": n,
                "branch": cfl_branch(scn.epsilon, g.h, mat.sigma_t_min(scn.epsilon)),
                "error": err,
                "order_vs_prev": (ConvergenceRow(prev[0], n, prev[1], err).order
                                  if prev else None),
            }
            rows.append(row)
            prev = (n, err)
    return rows


@dataclass
class ApCheckReport:
    """AP solver vs diffusion reference from the same initial density."""

    epsilon: float
    n: int
    t_final: float
    rel_l2: float
    ap_mass: list
    diffusion_mass: list
    ap_density: RField
    diffusion_density: RField


def ap_limit_check(scenario, n: int, epsilon: float,
                   t_final: Optional[float] = None, n_points: int = 16,
                   safety: float = 0.9) -> ApCheckReport:
    """Run both solvers from the same isotropic data, compare densities."""
    scn = scenario.with_epsilon(float(epsilon))
    if scn.make_source is not None and scn.q_iso is None:
        raise ValueError("AP check needs an isotropic scenario")
    t_end = scn.t_final if t_final is None else t_final
    g = scn.grid(n)
    dirs = gauss_nodes(n_points)
    mat = scn.material(g)

    ap = run(scn, g, dirs, t_end, safety=safety)
    rho0 = scn.initial_density(g, dirs)
    q = sample_on_R(scn.q_iso, g) if scn.q_iso is not None else None
    diff = diffusion_run(rho0, mat, q, g, t_end, scn.epsilon)

    rho_ap = ap.state.density()
    rho_d = diff.state.rho
    dv = rho_ap.vertex - rho_d.vertex
    dc = rho_ap.center - rho_d.center
    num = math.sqrt(float(np.sum(dv * dv) + np.sum(dc * dc)))
    den = math.sqrt(float(np.sum(rho_d.vertex**2) + np.sum(rho_d.center**2)))
    rel = num / den if den > 0 else math.inf
    return ApCheckReport(
        epsilon=float(epsilon), n=n, t_final=t_end, rel_l2=rel,
        ap_mass=[(row.step, row.t, row.mass) for row in ap.diagnostics],
        diffusion_mass=[(k, t, m) for (k, t, _dt, m) in diff.diagnostics],
        ap_density=rho_ap, diffusion_density=rho_d)
