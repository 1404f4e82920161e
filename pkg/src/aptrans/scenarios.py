"""The five benchmark problems as reusable scenario descriptions.

Every scenario's initial distribution is even in each velocity component
separately, so both even parities start equal to f and both odd parities
start at zero.  All fields are overridable (``dataclasses.replace``) to
drive parameter sweeps; the scenario's epsilon is threaded into the
source builder at discretization time, so replacing epsilon stays
consistent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from importlib import resources
from typing import Callable, Optional

import numpy as np

from .angular import DirectionSet
from .grid import GridGeometry, RField, sample_on_J, sample_on_R
from .solver import (EvenSourceTerm, MaterialField, OddSourceTerm, ParityState,
                     SourceTerm)


@dataclass(frozen=True)
class Scenario:
    """A benchmark setup: domain, data, materials, source and horizon.

    ``initial_f(x, y, xi, eta)`` must be even in xi and in eta separately
    (all paper cases are), which makes the initial odd parities vanish.
    ``make_source(grid, dirs, epsilon)`` builds the discretized source;
    ``q_iso(x, y)`` is the raw isotropic source when one exists (used by
    the diffusion reference).
    """

    name: str
    x0: float
    y0: float
    lx: float
    ly: float
    epsilon: float
    t_final: float
    sigma_s: Callable
    sigma_a: Callable
    initial_f: Callable
    make_source: Optional[Callable[[GridGeometry, DirectionSet, float], SourceTerm]] = None
    q_iso: Optional[Callable] = None
    rho_exact: Optional[Callable] = None

    def grid(self, n: int) -> GridGeometry:
        return GridGeometry(nx=n, ny=n, x0=self.x0, y0=self.y0, lx=self.lx, ly=self.ly)

    def material(self, g: GridGeometry) -> MaterialField:
        return MaterialField.from_functions(g, self.sigma_s, self.sigma_a)

    def source_term(self, g: GridGeometry, dirs: DirectionSet) -> Optional[SourceTerm]:
        if self.make_source is None:
            return None
        return self.make_source(g, dirs, self.epsilon)

    def initial_state(self, g: GridGeometry, dirs: DirectionSet) -> ParityState:
        s = ParityState.zeros(g, dirs)
        xv, yv = g.coords("vertex")
        xc, yc = g.coords("center")
        for k in range(dirs.n):
            fv = np.broadcast_to(self.initial_f(xv, yv, dirs.xi[k], dirs.eta[k]),
                                 (g.nx, g.ny))
            fc = np.broadcast_to(self.initial_f(xc, yc, dirs.xi[k], dirs.eta[k]),
                                 (g.nx, g.ny))
            s.r1v[k] = fv
            s.r2v[k] = fv
            s.r1c[k] = fc
            s.r2c[k] = fc
        return s

    def initial_density(self, g: GridGeometry, dirs: DirectionSet) -> RField:
        return self.initial_state(g, dirs).density()

    def with_epsilon(self, epsilon: float) -> "Scenario":
        return replace(self, epsilon=epsilon)


def _gauss_bump(variance_scale: float) -> Callable:
    peak = 1.0 / (4.0 * math.pi * variance_scale)

    def f(x, y, xi=None, eta=None):
        return peak * np.exp(-(x**2 + y**2) / (4.0 * variance_scale))

    return f


def _const(value: float) -> Callable:
    return lambda x, y: np.full_like(np.asarray(x, dtype=float), value)


# ---------------------------------------------------------------------------
# Manufactured solution: f = exp(-t) sin^2(2 pi x) sin^2(2 pi y) (1 + eta^2)
# on [0,1]^2 with sigma_s = 1, sigma_a = 0.  The source is the exact
# residual of the transport equation for this f, split into parity
# components: the even part is direction-local, the odd part is the
# advective term (xi d_x -+ eta d_y) f / eps^2.
# ---------------------------------------------------------------------------

def _mms_spatial(x, y):
    return np.sin(2 * np.pi * x) ** 2 * np.sin(2 * np.pi * y) ** 2


def _mms_spatial_dx(x, y):
    return 2 * np.pi * np.sin(4 * np.pi * x) * np.sin(2 * np.pi * y) ** 2


def _mms_spatial_dy(x, y):
    return 2 * np.pi * np.sin(2 * np.pi * x) ** 2 * np.sin(4 * np.pi * y)


def _mms_source(g: GridGeometry, dirs: DirectionSet, epsilon: float) -> SourceTerm:
    decay = lambda t: math.exp(-t)
    eps2 = epsilon**2
    shape = 1.0 + dirs.eta**2        # angular factor of f
    # d f/dt + (sigma_t f - sigma_s rho_f)/eps^2 with sigma_t = sigma_s = 1
    even = -shape + (shape - 1.5) / eps2
    s_field = sample_on_R(_mms_spatial, g)
    sx_field = sample_on_J(_mms_spatial_dx, g)
    sy_field = sample_on_J(_mms_spatial_dy, g)
    cx = dirs.xi * shape / eps2
    cy = dirs.eta * shape / eps2
    return SourceTerm(
        even=(EvenSourceTerm(decay, even.copy(), even.copy(), s_field),),
        odd=(OddSourceTerm(decay, cx.copy(), cx.copy(), sx_field),
             OddSourceTerm(decay, -cy, cy.copy(), sy_field)),
        isotropic=False,
    )


def mms(epsilon: float = 1.0) -> Scenario:
    def f0(x, y, xi, eta):
        return _mms_spatial(x, y) * (1.0 + eta**2)

    def rho_exact(t, x, y):
        return 1.5 * math.exp(-t) * _mms_spatial(x, y)

    return Scenario(
        name="mms", x0=0.0, y0=0.0, lx=1.0, ly=1.0,
        epsilon=epsilon, t_final=0.1,
        sigma_s=_const(1.0), sigma_a=_const(0.0),
        initial_f=f0, make_source=_mms_source, rho_exact=rho_exact)


# ---------------------------------------------------------------------------
# Gauss bump relaxing on a uniform scattering background.
# ---------------------------------------------------------------------------

def gauss(epsilon: float = 1e-2) -> Scenario:
    return Scenario(
        name="gauss", x0=-1.0, y0=-1.0, lx=2.0, ly=2.0,
        epsilon=epsilon, t_final=0.1,
        sigma_s=_const(1.0), sigma_a=_const(0.0),
        initial_f=_gauss_bump(1e-2))


# ---------------------------------------------------------------------------
# Space-dependent scattering: sigma_s = c^4 (c^2 - 2)^2 inside the unit
# circle (c = radius), 1 outside; continuous across c = 1 and zero at the
# origin, so sigma_t/eps spans [0, 100] at eps = 1/100.
# ---------------------------------------------------------------------------

def _variable_sigma(x, y):
    c2 = x**2 + y**2
    inside = c2 * c2 * (c2 - 2.0) ** 2
    return np.where(c2 < 1.0, inside, 1.0)


def variable_scattering() -> Scenario:
    eps = 1.0 / 100.0
    return Scenario(
        name="variable_scattering", x0=-1.0, y0=-1.0, lx=2.0, ly=2.0,
        epsilon=eps, t_final=eps,
        sigma_s=_variable_sigma, sigma_a=_const(0.0),
        initial_f=_gauss_bump(1e-2))


# ---------------------------------------------------------------------------
# Two-material lattice: unit source square in a 5x5 box, eleven purely
# absorbing half-size squares around it.  The absorber layout lives in a
# plain-text geometry file (one `x_min y_min x_max y_max` per line) so the
# arrangement is data, not code.  Samples landing exactly on an absorber
# interface take the scattering values (open rectangles).
# ---------------------------------------------------------------------------

DEFAULT_ABSORBER_FILE = resources.files("aptrans") / "data" / "two_material_absorbers.txt"


def load_absorbers(path=None) -> np.ndarray:
    """Read absorber rectangles; returns an (n, 4) array of corners."""
    text = (DEFAULT_ABSORBER_FILE if path is None else path)
    if hasattr(text, "read_text"):
        lines = text.read_text().splitlines()
    else:
        with open(text) as fh:
            lines = fh.read().splitlines()
    boxes = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        vals = [float(v) for v in line.split()]
        if len(vals) != 4 or vals[0] >= vals[2] or vals[1] >= vals[3]:
            raise ValueError(f"bad absorber line: {line!r}")
        boxes.append(vals)
    return np.array(boxes)


def _in_absorber(x, y, boxes: np.ndarray):
    mask = np.zeros(np.broadcast(x, y).shape, dtype=bool)
    for (x0, y0, x1, y1) in boxes:
        mask |= (x > x0) & (x < x1) & (y > y0) & (y < y1)
    return mask


def _lattice_q(x, y):
    return ((x >= 2.0) & (x <= 3.0) & (y >= 2.0) & (y <= 3.0)).astype(float)


def two_material(absorber_file=None) -> Scenario:
    boxes = load_absorbers(absorber_file)

    def sigma_s(x, y):
        return np.where(_in_absorber(x, y, boxes), 0.0, 1.0)

    def sigma_a(x, y):
        return np.where(_in_absorber(x, y, boxes), 100.0, 0.0)

    def make_source(g, dirs, epsilon):
        ones = np.ones(dirs.n)
        return SourceTerm(
            even=(EvenSourceTerm(lambda t: 1.0, ones, ones.copy(),
                                 sample_on_R(_lattice_q, g)),),
            isotropic=True)

    return Scenario(
        name="two_material", x0=0.0, y0=0.0, lx=5.0, ly=5.0,
        epsilon=1.0, t_final=1.7,
        sigma_s=sigma_s, sigma_a=sigma_a,
        initial_f=lambda x, y, xi, eta: np.zeros_like(np.asarray(x, dtype=float)),
        make_source=make_source, q_iso=_lattice_q)


# ---------------------------------------------------------------------------
# Relaxation-parameter stability probe: a narrow Gauss bump at eps = 1,
# run with either the certified phi or the naive 1/eps^2.
# ---------------------------------------------------------------------------

def phi_stability() -> Scenario:
    return Scenario(
        name="phi_stability", x0=-1.0, y0=-1.0, lx=2.0, ly=2.0,
        epsilon=1.0, t_final=0.36,
        sigma_s=_const(1.0), sigma_a=_const(0.0),
        initial_f=_gauss_bump(5e-3))


def phi_overrides(scenario: Scenario, g: GridGeometry) -> tuple[float, float]:
    """(certified phi, naive 1/eps^2) for the stability experiment."""
    from .solver import relaxation_parameter
    stable = relaxation_parameter(scenario.epsilon, g, scenario.material(g))
    return stable, 1.0 / scenario.epsilon**2


SCENARIOS = {
    "mms": mms,
    "gauss": gauss,
    "variable_scattering": variable_scattering,
    "two_material": two_material,
    "phi_stability": phi_stability,
}
