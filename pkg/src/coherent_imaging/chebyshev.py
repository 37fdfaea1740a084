"""Chebyshev transition profiles and peak-width geometry.

All angles are in radians.  Profiles are 2*pi periodic and accept scalars or
numpy arrays for ``theta``.
"""
from dataclasses import dataclass
import enum
import math

import numpy as np

__all__ = [
    "ProfileParams",
    "PeakWidths",
    "Region",
    "cheb_T",
    "beta",
    "p_narrow",
    "p_broad",
    "peak_widths",
    "ratio_R_asymptotic",
    "theta_b_asymptotic",
    "envelope_region",
    "arcsech",
]


@dataclass(frozen=True)
class ProfileParams:
    L: int
    delta_b: float

    def __post_init__(self):
        if int(self.L) != self.L or self.L < 1 or self.L % 2 == 0:
            raise ValueError(f"L must be a positive odd integer, got {self.L}")
        if not 0.0 < self.delta_b <= 1.0:
            raise ValueError(f"delta_b must lie in (0, 1], got {self.delta_b}")


@dataclass(frozen=True)
class PeakWidths:
    theta_b: float
    theta_m: float
    ratio_R: float


class Region(enum.Enum):
    INNER = "Inner"
    TRANSITION = "Transition"
    OUTER = "Outer"


def arcsech(x):
    return np.arccosh(1.0 / np.asarray(x, dtype=float))


def cheb_T(nu, x):
    """Chebyshev function of (possibly fractional) order ``nu``.

    Uses cos(nu*arccos x) on [-1, 1] and the hyperbolic continuation
    cosh(nu*arccosh x) outside.  For x < -1 only integer orders are
    defined; a fractional order raises ``ValueError``.
    """
    if nu <= 0:
        raise ValueError("order must be positive")
    x_arr = np.asarray(x, dtype=float)
    integer = float(nu).is_integer()
    if not integer and np.any(x_arr < -1.0):
        raise ValueError("fractional-order Chebyshev is undefined for x < -1")

    inside = np.abs(x_arr) <= 1.0
    out = np.empty_like(x_arr)
    out[inside] = np.cos(nu * np.arccos(x_arr[inside]))
    above = x_arr > 1.0
    out[above] = np.cosh(nu * np.arccosh(x_arr[above]))
    below = x_arr < -1.0
    if np.any(below):
        sign = -1.0 if int(nu) % 2 else 1.0
        out[below] = sign * np.cosh(nu * np.arccosh(-x_arr[below]))
    return out.item() if out.ndim == 0 else out


def beta(L, delta_b):
    """Scale factor that pins the Chebyshev sidelobes to height delta_b**2."""
    return math.cosh(math.acosh(1.0 / delta_b) / L)


def _wrap(theta):
    return np.mod(theta, 2.0 * np.pi)


def p_narrow(theta, params):
    """Narrowband profile: unit peak at theta = pi, sidelobes <= delta_b**2."""
    b = beta(params.L, params.delta_b)
    num = cheb_T(params.L, b * np.sin(_wrap(theta) / 2.0))
    den = cheb_T(params.L, b)
    return np.clip((num / den) ** 2, 0.0, 1.0)


def p_broad(theta, params):
    """Broadband profile, the complement of the narrowband one shifted by pi."""
    return 1.0 - p_narrow(np.asarray(theta, dtype=float) - np.pi, params)


def peak_widths(params, delta_m):
    """Exact half-widths of the central peak at heights delta_b**2 and delta_m**2.

    Solves p_narrow(pi - w) = h in closed form rather than by root finding.
    """
    if not params.delta_b < delta_m <= 1.0:
        raise ValueError("need delta_b < delta_m <= 1 for a non-degenerate envelope")
    b = beta(params.L, params.delta_b)
    theta_b = math.pi - 2.0 * math.asin(1.0 / b)
    inner = math.cosh(math.acosh(delta_m / params.delta_b) / params.L) / b
    theta_m = math.pi - 2.0 * math.asin(min(inner, 1.0))
    # delta_m = 1 collapses the inner region onto the single point theta = pi
    ratio = theta_b / theta_m if theta_m > 0.0 else math.inf
    return PeakWidths(theta_b, theta_m, ratio)


def theta_b_asymptotic(L, delta_b):
    return 2.0 / L * float(arcsech(delta_b))


def ratio_R_asymptotic(delta_b, delta_m):
    """Large-L limit of theta_b / theta_m."""
    q = float(arcsech(delta_b / delta_m)) / float(arcsech(delta_b))
    return 1.0 / math.sqrt(1.0 - q * q)


def envelope_region(theta, widths):
    """Classify theta against the envelope; the inner boundary is closed."""
    dev = abs(math.remainder(float(theta) - math.pi, 2.0 * math.pi))
    if dev <= widths.theta_m:
        return Region.INNER
    if dev >= widths.theta_b:
        return Region.OUTER
    return Region.TRANSITION
