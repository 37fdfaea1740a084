"""Two-dimensional localization from three radially symmetric beams.

Each beam's theta = pi ring passes through the object; summing the log
transition probabilities makes the common intersection stand out.
"""
from dataclasses import dataclass
import math

import numpy as np

from .beam import DEFAULT_PULSE_AREA
from .chebyshev import ProfileParams, p_narrow

__all__ = [
    "RadialBeam2D",
    "GridSpec",
    "three_beam_layout",
    "radial_theta",
    "ring_query",
    "log_profile_grid",
    "grid_argmax",
    "PROB_FLOOR",
]

PROB_FLOOR = 1e-300


@dataclass(frozen=True)
class RadialBeam2D:
    center: tuple
    sequence_n: int
    delta_b: float = 1e-2
    lam: float = 1.0
    pulse_area: float = DEFAULT_PULSE_AREA

    def __post_init__(self):
        if self.lam <= 0:
            raise ValueError("lambda must be positive")
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))

    @property
    def params(self):
        return ProfileParams(3**self.sequence_n, self.delta_b)


@dataclass(frozen=True)
class GridSpec:
    xmin: float = -2.0
    xmax: float = 2.0
    ymin: float = -2.0
    ymax: float = 2.0
    nx: int = 401
    ny: int = 401

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2 or self.xmax <= self.xmin or self.ymax <= self.ymin:
            raise ValueError("grid needs positive extent and at least two points per axis")

    def axes(self):
        return np.linspace(self.xmin, self.xmax, self.nx), np.linspace(self.ymin, self.ymax, self.ny)

    @property
    def cell(self):
        return max((self.xmax - self.xmin) / (self.nx - 1), (self.ymax - self.ymin) / (self.ny - 1))


def three_beam_layout(delta_b=1e-2):
    """Centers (1, 1), (-1, 1), (0, -sqrt 2) with sequences of length 27, 27 and 3."""
    return [
        RadialBeam2D((1.0, 1.0), 3, delta_b),
        RadialBeam2D((-1.0, 1.0), 3, delta_b),
        RadialBeam2D((0.0, -math.sqrt(2.0)), 1, delta_b),
    ]


def radial_theta(beam, x, y):
    r2 = (np.asarray(x) - beam.center[0]) ** 2 + (np.asarray(y) - beam.center[1]) ** 2
    return beam.pulse_area * np.exp(-r2 / (4.0 * beam.lam**2))


def ring_query(beam, point):
    return float(p_narrow(radial_theta(beam, point[0], point[1]), beam.params))


def log_profile_grid(beams, grid=GridSpec()):
    """Summed log transition probability on the grid, shape (ny, nx)."""
    if not beams:
        raise ValueError("need at least one beam")
    xs, ys = grid.axes()
    X, Y = np.meshgrid(xs, ys)
    field = np.zeros_like(X)
    for b in beams:
        p = p_narrow(radial_theta(b, X, Y), b.params)
        field += np.log(np.maximum(p, PROB_FLOOR))
    return field


def grid_argmax(field, grid=GridSpec()):
    xs, ys = grid.axes()
    iy, ix = np.unravel_index(np.argmax(field), field.shape)
    return float(xs[ix]), float(ys[iy]), float(field[iy, ix])
