"""Angular discretization: Gauss quadrature on [0,1] mapped to unit directions.

Velocities live on the first quadrant of the unit circle.  A quadrature
node lambda in (0,1) is mapped to the direction

    xi(lambda) = cos(lambda*pi/2),   eta(lambda) = sin(lambda*pi/2),

and the scalar density is the half-sum of the two even parities
integrated over lambda,

    rho = 1/2 * integral_0^1 [r1 + r2] dlambda,

evaluated with the quadrature weights.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatchError


def map_to_direction(lam: float) -> tuple[float, float]:
    """Map a quadrature node in [0,1] to a first-quadrant unit direction."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0,1], got {lam}")
    angle = lam * np.pi / 2.0
    return (float(np.cos(angle)), float(np.sin(angle)))


@dataclass(frozen=True)
class DirectionSet:
    """Quadrature nodes/weights on [0,1] plus the mapped unit directions.

    Immutable after construction; weights sum to one, every (xi, eta)
    is a unit vector with strictly positive components.
    """

    nodes: np.ndarray
    weights: np.ndarray
    xi: np.ndarray
    eta: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "nodes", np.asarray(self.nodes, dtype=float))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        object.__setattr__(self, "xi", np.asarray(self.xi, dtype=float))
        object.__setattr__(self, "eta", np.asarray(self.eta, dtype=float))
        for arr in (self.nodes, self.weights, self.xi, self.eta):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return self.nodes.size

    @property
    def directions(self) -> list[tuple[float, float]]:
        return [(float(x), float(y)) for x, y in zip(self.xi, self.eta)]


def gauss_nodes(n: int) -> DirectionSet:
    """Gauss-Legendre rule transplanted from [-1,1] to [0,1].

    Parameters
    ----------
    n : int
        Number of quadrature points (= directions per quadrant).

    Returns
    -------
    DirectionSet
        Nodes in ascending order, weights summing to 1, directions via
        the cosine/sine map.
    """
    if n < 1:
        raise ValueError(f"need at least one quadrature point, got n={n}")
    x, w = np.polynomial.legendre.leggauss(n)
    lam = 0.5 * (x + 1.0)
    weights = 0.5 * w
    angle = lam * np.pi / 2.0
    return DirectionSet(nodes=lam, weights=weights,
                        xi=np.cos(angle), eta=np.sin(angle))


def density(r1, r2, q: DirectionSet):
    """Pointwise density rho = 1/2 * sum_i w_i (r1_i + r2_i).

    ``r1`` and ``r2`` are per-direction sequences of fields (anything
    numpy-stackable: RField objects are handled by the caller via their
    plane arrays, see :meth:`aptrans.solver.ParityState.density`).  This
    functional form accepts sequences of plain arrays or of RField.
    The direction loop runs in fixed ascending order so repeated calls
    are bitwise identical.
    """
    if len(r1) != q.n or len(r2) != q.n:
        raise ShapeMismatchError(
            f"need {q.n} per-direction fields, got {len(r1)} and {len(r2)}")
    from .grid import RField  # local import to avoid a cycle

    if isinstance(r1[0], RField):
        shape = r1[0].vertex.shape
        vert = np.zeros(shape)
        cent = np.zeros(shape)
        for i in range(q.n):
            if r1[i].vertex.shape != shape or r2[i].vertex.shape != shape:
                raise ShapeMismatchError("per-direction fields disagree on grid shape")
            wi = 0.5 * q.weights[i]
            vert += wi * (r1[i].vertex + r2[i].vertex)
            cent += wi * (r1[i].center + r2[i].center)
        return RField(vert, cent)

    shape = np.asarray(r1[0]).shape
    out = np.zeros(shape)
    for i in range(q.n):
        a = np.asarray(r1[i])
        b = np.asarray(r2[i])
        if a.shape != shape or b.shape != shape:
            raise ShapeMismatchError("per-direction fields disagree on grid shape")
        out += 0.5 * q.weights[i] * (a + b)
    return out
