"""Gaussian drive: position -> rotation angle, and theta-space widths -> intervals.

Reduced units by default: lengths in lambda, time in tau.
"""
from dataclasses import dataclass, replace
import math

import numpy as np

from .chebyshev import p_narrow
from .su2 import compose, transition_prob

__all__ = [
    "DEFAULT_PULSE_AREA",
    "GaussianBeam",
    "SpatialInterval",
    "theta_of_x",
    "dtheta_dx",
    "theta_prime_max",
    "s_of_x",
    "s_of_x_analytic",
    "interval_for_widths",
    "place_beam_for_query",
]

# sqrt(e) * pi puts theta = pi exactly at the steepest point of the Gaussian
DEFAULT_PULSE_AREA = math.sqrt(math.e) * math.pi


@dataclass(frozen=True)
class GaussianBeam:
    lam: float = 1.0
    pulse_area: float = DEFAULT_PULSE_AREA
    center_xc: float = 0.0
    tau: float = 1.0

    def __post_init__(self):
        if self.lam <= 0 or self.tau <= 0:
            raise ValueError("lambda and tau must be positive")
        if not 0.0 < self.pulse_area < 2.0 * math.pi:
            raise ValueError("pulse_area must lie in (0, 2*pi) for an unambiguous map")


@dataclass(frozen=True)
class SpatialInterval:
    center: float
    width: float

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("interval width must be positive")

    @property
    def lo(self):
        return self.center - self.width / 2.0

    @property
    def hi(self):
        return self.center + self.width / 2.0

    def contains(self, x):
        return self.lo <= x <= self.hi

    def contains_interval(self, other, rtol=1e-12):
        slack = rtol * max(self.width, 1.0)
        return self.lo - slack <= other.lo and other.hi <= self.hi + slack


def theta_of_x(beam, x_i):
    x = np.asarray(x_i, dtype=float) - beam.center_xc
    return beam.pulse_area * np.exp(-(x**2) / (4.0 * beam.lam**2))


def dtheta_dx(beam, x_i):
    x = np.asarray(x_i, dtype=float) - beam.center_xc
    return -x / (2.0 * beam.lam**2) * theta_of_x(beam, x_i)


def theta_prime_max(beam):
    """Largest |dtheta/dx|, attained at x - x_c = sqrt(2) lambda."""
    return beam.pulse_area * math.exp(-0.5) / (math.sqrt(2.0) * beam.lam)


def s_of_x(beam, seq, x_i):
    """Transition probability of an object at x_i, by exact unitary composition."""
    return transition_prob(compose(seq, theta_of_x(beam, x_i)))


def s_of_x_analytic(beam, params, x_i):
    """Same map through the closed-form narrowband profile (fast path)."""
    return p_narrow(theta_of_x(beam, x_i), params)


def interval_for_widths(beam, widths, query_center):
    """Linearized accept/reject intervals (widths 2*theta_b/theta', 2*theta_m/theta')."""
    tp = theta_prime_max(beam)
    return (
        SpatialInterval(query_center, 2.0 * widths.theta_b / tp),
        SpatialInterval(query_center, 2.0 * widths.theta_m / tp),
    )


def place_beam_for_query(beam, query_center):
    """Shift the beam so theta(query_center) = pi on the monotone flank."""
    if beam.pulse_area < math.pi:
        raise ValueError("pulse_area below pi never reaches theta = pi")
    offset = 2.0 * beam.lam * math.sqrt(math.log(beam.pulse_area / math.pi))
    return replace(beam, center_xc=query_center - offset)
