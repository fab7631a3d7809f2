"""Rectangular sampling grids on a working chart."""

import math
from dataclasses import dataclass, field

import numpy as np

from .meromorphic import is_inf


@dataclass(frozen=True)
class SampleGrid:
    """``nx x ny`` vertices over ``x x y``, optionally rotated about the center.

    ``coords`` is ``"chart"`` (the data's working chart) or ``"plane"`` (the
    ``z`` coordinate, used for single-valued quantities such as ``|rho|``).
    ``masks`` is a tuple of ``(x0, x1, y0, y1)`` rectangles whose interior
    vertices are excluded.
    """

    x: tuple = (-1.0, 1.0)
    y: tuple = (-1.0, 1.0)
    shape: tuple = (64, 64)
    coords: str = "chart"
    masks: tuple = field(default_factory=tuple)
    rotation: float = 0.0

    def __post_init__(self):
        if self.shape[0] < 2 or self.shape[1] < 2:
            raise ValueError("grid resolution must be at least 2x2")

    @property
    def center(self):
        return complex(0.5 * (self.x[0] + self.x[1]), 0.5 * (self.y[0] + self.y[1]))

    @property
    def spacing(self):
        nx, ny = self.shape
        return (self.x[1] - self.x[0]) / (nx - 1), (self.y[1] - self.y[0]) / (ny - 1)

    def points(self):
        """Complex vertex coordinates, shape ``(ny, nx)`` (row = y index)."""
        nx, ny = self.shape
        xs = np.linspace(self.x[0], self.x[1], nx)
        ys = np.linspace(self.y[0], self.y[1], ny)
        p = xs[None, :] + 1j * ys[:, None]
        return self._rotate(p)

    def _rotate(self, p):
        if self.rotation:
            c = self.center
            p = c + np.exp(1j * self.rotation) * (p - c)
        return p

    def from_index(self, row, col):
        """Map fractional (row, col) indices to complex coordinates."""
        dx, dy = self.spacing
        p = self.x[0] + np.asarray(col) * dx + 1j * (self.y[0] + np.asarray(row) * dy)
        return self._rotate(p)

    def vertex_mask(self):
        """Boolean ``(ny, nx)`` array, True where a vertex is masked out."""
        nx, ny = self.shape
        xs = np.linspace(self.x[0], self.x[1], nx)[None, :]
        ys = np.linspace(self.y[0], self.y[1], ny)[:, None]
        m = np.zeros((ny, nx), dtype=bool)
        for x0, x1, y0, y1 in self.masks:
            m |= (xs > x0) & (xs < x1) & (ys > y0) & (ys < y1)
        return m


def default_grid(d, shape=(64, 64), mask_radius=0.15, slits=True):
    """A chart window showing the interesting part of ``d``.

    Log charts get the strip ``[-1, 1] x [-pi, pi]`` (simply connected).
    Plane charts get a box around the finite punctures with square masks of
    half-width ``mask_radius`` on each; with ``slits`` a one-column cut also
    runs from each puncture up to the top edge, so the unmasked region is
    simply connected and the lift is single valued on it.
    """
    if d.chart == "log":
        return SampleGrid(x=(-1.0, 1.0), y=(-math.pi, math.pi), shape=shape)
    finite = [complex(p) for p in d.ends if not is_inf(p)] + d.chart_poles()
    r = max([abs(p) for p in finite] + [0.0]) + 1.5
    masks = [(p.real - mask_radius, p.real + mask_radius,
              p.imag - mask_radius, p.imag + mask_radius) for p in finite]
    if slits:
        half = 0.6 * 2 * r / (shape[0] - 1)
        masks += [(p.real - half, p.real + half, p.imag, r + 1.0) for p in finite]
    return SampleGrid(x=(-r, r), y=(-r, r), shape=shape, masks=tuple(masks))
