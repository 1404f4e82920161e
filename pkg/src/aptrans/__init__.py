"""Asymptotic-preserving staggered-grid solver for 2D linear transport.

Library layout:

- :mod:`aptrans.angular` -- quadrature on [0,1], unit directions, density
- :mod:`aptrans.grid` -- staggered grids, half-grid differences, CSV I/O
- :mod:`aptrans.solver` -- parity state, split time stepper, CFL / phi
- :mod:`aptrans.stability` -- 1D von Neumann growth matrix and certification
- :mod:`aptrans.diffusion` -- five-point diffusion-limit reference solver
- :mod:`aptrans.scenarios` -- the benchmark problem definitions
- :mod:`aptrans.harness` -- error norms, convergence tables, AP checks
- :mod:`aptrans.cli` -- the ``aptrans`` command-line tool
"""

from .angular import DirectionSet, density, gauss_nodes, map_to_direction
from .errors import BlowupError, InvalidMaterialError, ShapeMismatchError
from .grid import (GridGeometry, JField, RField, dJx_at_R, dJy_at_R, dRx_at_J,
                   dRy_at_J, sample_on_J, sample_on_R)
from .solver import (MaterialField, ParityState, SchemeParams, SourceTerm,
                     cfl_timestep, reconstruct_f, relaxation_parameter,
                     relaxation_step, run, step, transport_step)

__version__ = "0.1.0"

__all__ = [
    "BlowupError", "DirectionSet", "GridGeometry", "InvalidMaterialError",
    "JField", "MaterialField", "ParityState", "RField", "SchemeParams",
    "ShapeMismatchError", "SourceTerm", "cfl_timestep", "dJx_at_R", "dJy_at_R",
    "dRx_at_J", "dRy_at_J", "density", "gauss_nodes", "map_to_direction",
    "reconstruct_f", "relaxation_parameter", "relaxation_step", "run",
    "sample_on_J", "sample_on_R", "step", "transport_step",
]
