"""Exact SU(2) simulation of phased pulse sequences.

A sequence ``(phi_1, ..., phi_L)`` lists pulses in application order, so
``compose`` returns ``U[phi_L] @ ... @ U[phi_1]``.  ``theta`` may be a scalar
(returns a 2x2 matrix) or an array (returns a stack of shape ``(..., 2, 2)``).
"""
from dataclasses import dataclass
import math

import numpy as np

__all__ = [
    "PulseSequence",
    "rotation",
    "compose",
    "transition_prob",
    "effective_angle",
    "is_xy_axis",
    "is_unitary",
]

NARROWBAND = "narrowband"
BROADBAND = "broadband"


@dataclass(frozen=True)
class PulseSequence:
    phases: tuple
    label: str = NARROWBAND
    design_delta_b: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "phases", tuple(float(p) for p in self.phases))
        if len(self.phases) % 2 == 0:
            raise ValueError("pulse sequences must have odd length")
        if not all(math.isfinite(p) for p in self.phases):
            raise ValueError("phases must be finite")
        if self.label not in (NARROWBAND, BROADBAND):
            raise ValueError(f"unknown variant {self.label!r}")

    def __len__(self):
        return len(self.phases)

    @property
    def L(self):
        return len(self.phases)

    def is_palindrome(self, atol=1e-12):
        p = np.asarray(self.phases)
        return bool(np.allclose(p, p[::-1], rtol=0.0, atol=atol))


def rotation(phi, theta):
    """exp(-i theta/2 (cos(phi) X + sin(phi) Y))."""
    theta = np.asarray(theta, dtype=float)
    c = np.cos(theta / 2.0)
    s = np.sin(theta / 2.0)
    U = np.empty(theta.shape + (2, 2), dtype=complex)
    U[..., 0, 0] = c
    U[..., 1, 1] = c
    U[..., 0, 1] = -1j * s * np.exp(-1j * phi)
    U[..., 1, 0] = -1j * s * np.exp(1j * phi)
    return U


def _phases(seq):
    if isinstance(seq, PulseSequence):
        return seq.phases
    return tuple(seq)


def compose(seq, theta):
    phases = _phases(seq)
    if not phases:
        raise ValueError("cannot compose an empty sequence")
    theta = np.asarray(theta, dtype=float)
    U = np.broadcast_to(np.eye(2, dtype=complex), theta.shape + (2, 2)).copy()
    for phi in phases:
        U = np.matmul(rotation(phi, theta), U)
    return U


def transition_prob(U):
    """|<1|U|0>|**2."""
    return np.abs(np.asarray(U)[..., 1, 0]) ** 2


def effective_angle(U):
    U = np.asarray(U)
    return 2.0 * np.arccos(np.clip(np.abs(U[..., 0, 0]), 0.0, 1.0))


def is_xy_axis(U, atol=1e-10):
    """True if U is, up to global phase, a rotation about an axis in the x-y plane."""
    U = np.asarray(U)
    g = np.sqrt(np.linalg.det(U))
    d0 = U[..., 0, 0] / g
    d1 = U[..., 1, 1] / g
    ok = (np.abs(d0.imag) < atol) & (np.abs(d1.imag) < atol)
    return bool(ok) if np.ndim(ok) == 0 else ok


def is_unitary(U, atol=1e-12):
    U = np.asarray(U)
    eye = np.eye(2)
    prod = np.matmul(U, np.conj(np.swapaxes(U, -1, -2)))
    return bool(np.all(np.abs(prod - eye) < atol)) and bool(
        np.all(np.abs(np.abs(np.linalg.det(U)) - 1.0) < atol)
    )
