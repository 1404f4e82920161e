"""Staggered grids and the four half-grid centered difference operators.

Two grid families on a periodic rectangle split into nx-by-ny cells:

* R-grid: vertices (i, j) and cell centers (i+1/2, j+1/2) -- carries the
  even parities, the density and isotropic sources.
* J-grid: horizontal face centers (i+1/2, j) and vertical face centers
  (i, j+1/2) -- carries the odd parities.

Each family is stored as two dense row-major (nx, ny) planes; index
arithmetic wraps modulo nx / ny, so no ghost layers exist.  Vertex (i, j)
sits at (x0 + i*dx, y0 + j*dy).

The four difference operators each connect exactly one plane pair:

    dJx_at_R : hface -> vertex,  vface -> center   (x-derivative)
    dJy_at_R : vface -> vertex,  hface -> center   (y-derivative)
    dRx_at_J : vertex -> hface,  center -> vface
    dRy_at_J : center -> hface,  vertex -> vface

Under periodicity they satisfy summation by parts with the uniform
point volume dx*dy/2, which is what makes the time stepper conservative.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeMismatchError

PLANES = ("vertex", "center", "hface", "vface")


@dataclass(frozen=True)
class GridGeometry:
    """Periodic rectangle split into nx-by-ny cells."""

    nx: int
    ny: int
    x0: float = 0.0
    y0: float = 0.0
    lx: float = 1.0
    ly: float = 1.0

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError(f"need nx, ny >= 2, got {self.nx}x{self.ny}")
        if self.lx <= 0 or self.ly <= 0:
            raise ValueError("domain extents must be positive")

    @property
    def dx(self) -> float:
        return self.lx / self.nx

    @property
    def dy(self) -> float:
        return self.ly / self.ny

    @property
    def h(self) -> float:
        """Smallest mesh width, used by the CFL and relaxation formulas."""
        return min(self.dx, self.dy)

    @property
    def point_volume(self) -> float:
        """Control volume per R-point (or J-point): half a cell."""
        return 0.5 * self.dx * self.dy

    def coords(self, plane: str):
        """Meshgrid (X, Y) of the requested plane, 'ij' indexing."""
        ix = np.arange(self.nx)
        jy = np.arange(self.ny)
        if plane == "vertex":
            x, y = self.x0 + ix * self.dx, self.y0 + jy * self.dy
        elif plane == "center":
            x, y = self.x0 + (ix + 0.5) * self.dx, self.y0 + (jy + 0.5) * self.dy
        elif plane == "hface":
            x, y = self.x0 + (ix + 0.5) * self.dx, self.y0 + jy * self.dy
        elif plane == "vface":
            x, y = self.x0 + ix * self.dx, self.y0 + (jy + 0.5) * self.dy
        else:
            raise ValueError(f"unknown plane {plane!r}")
        return np.meshgrid(x, y, indexing="ij")

    def check_shape(self, arr: np.ndarray, what: str = "field"):
        if arr.shape != (self.nx, self.ny):
            raise ShapeMismatchError(
                f"{what} has shape {arr.shape}, expected {(self.nx, self.ny)}")


@dataclass
class RField:
    """Scalar field on the R-grid: one plane of vertex values, one of centers."""

    vertex: np.ndarray
    center: np.ndarray

    def __post_init__(self):
        self.vertex = np.asarray(self.vertex, dtype=float)
        self.center = np.asarray(self.center, dtype=float)
        if self.vertex.shape != self.center.shape:
            raise ShapeMismatchError(
                f"vertex plane {self.vertex.shape} != center plane {self.center.shape}")

    @classmethod
    def zeros(cls, g: GridGeometry) -> "RField":
        return cls(np.zeros((g.nx, g.ny)), np.zeros((g.nx, g.ny)))

    @classmethod
    def full(cls, g: GridGeometry, value: float) -> "RField":
        return cls(np.full((g.nx, g.ny), value), np.full((g.nx, g.ny), value))

    def copy(self) -> "RField":
        return RField(self.vertex.copy(), self.center.copy())

    def all_finite(self) -> bool:
        return bool(np.isfinite(self.vertex).all() and np.isfinite(self.center).all())


@dataclass
class JField:
    """Scalar field on the J-grid: horizontal-face and vertical-face planes."""

    hface: np.ndarray
    vface: np.ndarray

    def __post_init__(self):
        self.hface = np.asarray(self.hface, dtype=float)
        self.vface = np.asarray(self.vface, dtype=float)
        if self.hface.shape != self.vface.shape:
            raise ShapeMismatchError(
                f"hface plane {self.hface.shape} != vface plane {self.vface.shape}")

    @classmethod
    def zeros(cls, g: GridGeometry) -> "JField":
        return cls(np.zeros((g.nx, g.ny)), np.zeros((g.nx, g.ny)))

    def copy(self) -> "JField":
        return JField(self.hface.copy(), self.vface.copy())

    def all_finite(self) -> bool:
        return bool(np.isfinite(self.hface).all() and np.isfinite(self.vface).all())


def _check(g: GridGeometry, *arrays):
    for a in arrays:
        g.check_shape(a)


# ---------------------------------------------------------------------------
# Half-grid centered differences.  Periodic wrap is done with np.roll; the
# positive roll shifts values from index i-1 into slot i.
# ---------------------------------------------------------------------------

def dJx_at_R(j: JField, g: GridGeometry) -> RField:
    """x-difference of a J-field, landing on the R-grid.

    Vertices read the two flanking horizontal faces, centers read the two
    flanking vertical faces:

        at (i, j):        (j_{i+1/2,j} - j_{i-1/2,j}) / dx
        at (i+1/2,j+1/2): (j_{i+1,j+1/2} - j_{i,j+1/2}) / dx
    """
    _check(g, j.hface, j.vface)
    vertex = (j.hface - np.roll(j.hface, 1, axis=0)) / g.dx
    center = (np.roll(j.vface, -1, axis=0) - j.vface) / g.dx
    return RField(vertex, center)


def dJy_at_R(j: JField, g: GridGeometry) -> RField:
    """y-difference of a J-field on the R-grid (face roles swapped)."""
    _check(g, j.hface, j.vface)
    vertex = (j.vface - np.roll(j.vface, 1, axis=1)) / g.dy
    center = (np.roll(j.hface, -1, axis=1) - j.hface) / g.dy
    return RField(vertex, center)


def dRx_at_J(r: RField, g: GridGeometry) -> JField:
    """x-difference of an R-field, landing on the J-grid.

        at (i+1/2, j): (r_{i+1,j} - r_{i,j}) / dx
        at (i, j+1/2): (r_{i+1/2,j+1/2} - r_{i-1/2,j+1/2}) / dx
    """
    _check(g, r.vertex, r.center)
    hface = (np.roll(r.vertex, -1, axis=0) - r.vertex) / g.dx
    vface = (r.center - np.roll(r.center, 1, axis=0)) / g.dx
    return JField(hface, vface)


def dRy_at_J(r: RField, g: GridGeometry) -> JField:
    """y-difference of an R-field on the J-grid."""
    _check(g, r.vertex, r.center)
    hface = (r.center - np.roll(r.center, 1, axis=1)) / g.dy
    vface = (np.roll(r.vertex, -1, axis=1) - r.vertex) / g.dy
    return JField(hface, vface)


def sample_on_R(fn, g: GridGeometry) -> RField:
    """Evaluate fn(x, y) pointwise at vertices and cell centers."""
    xv, yv = g.coords("vertex")
    xc, yc = g.coords("center")
    return RField(np.broadcast_to(fn(xv, yv), (g.nx, g.ny)).astype(float).copy(),
                  np.broadcast_to(fn(xc, yc), (g.nx, g.ny)).astype(float).copy())


def sample_on_J(fn, g: GridGeometry) -> JField:
    """Evaluate fn(x, y) pointwise at horizontal and vertical face centers."""
    xh, yh = g.coords("hface")
    xf, yf = g.coords("vface")
    return JField(np.broadcast_to(fn(xh, yh), (g.nx, g.ny)).astype(float).copy(),
                  np.broadcast_to(fn(xf, yf), (g.nx, g.ny)).astype(float).copy())


# ---------------------------------------------------------------------------
# CSV emission: one plane per file, IEEE-754 round-trip formatting.
# ---------------------------------------------------------------------------

def atomic_write_text(path, text: str):
    """Write a file via temp-file + rename so readers never see a torn file."""
    path = os.fspath(path)
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def plane_csv(values: np.ndarray, plane: str, g: GridGeometry) -> str:
    """Render one grid plane as CSV text with the geometry header."""
    if plane not in PLANES:
        raise ValueError(f"unknown plane {plane!r}")
    g.check_shape(values)
    x, y = g.coords(plane)
    lines = [f"# plane={plane} nx={g.nx} ny={g.ny} dx={g.dx!r} dy={g.dy!r}",
             "i,j,x,y,value"]
    for i in range(g.nx):
        for j in range(g.ny):
            lines.append(f"{i},{j},{float(x[i, j])!r},{float(y[i, j])!r},"
                         f"{float(values[i, j])!r}")
    return "\n".join(lines) + "\n"


def write_plane_csv(path, values: np.ndarray, plane: str, g: GridGeometry):
    atomic_write_text(path, plane_csv(values, plane, g))


def read_plane_csv(path):
    """Parse a plane CSV back into (values, plane, header dict)."""
    with open(path) as f:
        header = f.readline().strip()
        if not header.startswith("# plane="):
            raise ValueError(f"{path}: missing plane header")
        meta = dict(kv.split("=", 1) for kv in header[2:].split())
        cols = f.readline().strip()
        if cols != "i,j,x,y,value":
            raise ValueError(f"{path}: unexpected column row {cols!r}")
        nx, ny = int(meta["nx"]), int(meta["ny"])
        values = np.empty((nx, ny))
        for line in f:
            if not line.strip():
                continue
            i, j, _x, _y, v = line.split(",")
            values[int(i), int(j)] = float(v)
    return values, meta["plane"], meta
